#include "slpi/slp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace slpi {

SlpProgram::SlpProgram(int nvars, std::vector<Instr> instrs)
    : nvars_(nvars), instrs_(std::move(instrs)) {
    if (nvars < 1) throw std::invalid_argument("SlpProgram needs nvars >= 1");
    if (instrs_.empty()) throw std::invalid_argument("SlpProgram needs at least one instruction");
    for (std::size_t i = 0; i < instrs_.size(); ++i) {
        const Instr& ins = instrs_[i];
        switch (ins.op) {
            case Op::Input:
                if (ins.input < 1 || ins.input > nvars)
                    throw std::invalid_argument("input index out of range");
                break;
            case Op::Const:
                break;
            case Op::Add:
            case Op::Sub:
            case Op::Mul:
                if (ins.a >= i || ins.b >= i)
                    throw std::invalid_argument("forward register reference");
                break;
        }
    }
}

SlpProgram SlpProgram::parse(std::istream& in) {
    std::string line;
    int lineno = 0;
    int nvars = -1;
    std::vector<Instr> instrs;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (nvars < 0) {
            if (op != "slp") throw SlpParseError(lineno, "expected 'slp n=<n>' header");
            std::string decl;
            if (!(ls >> decl) || decl.rfind("n=", 0) != 0)
                throw SlpParseError(lineno, "expected 'slp n=<n>' header");
            try {
                nvars = std::stoi(decl.substr(2));
            } catch (const std::exception&) {
                throw SlpParseError(lineno, "bad variable count");
            }
            if (nvars < 1) throw SlpParseError(lineno, "n must be >= 1");
            continue;
        }
        Instr ins;
        const std::size_t here = instrs.size();  // 0-based index of this instruction
        auto read_reg = [&](std::size_t& out) {
            long long r;
            if (!(ls >> r)) throw SlpParseError(lineno, "missing register operand");
            if (r < 1 || static_cast<std::size_t>(r) > here)
                throw SlpParseError(lineno, "forward register reference");
            out = static_cast<std::size_t>(r - 1);
        };
        if (op == "in") {
            ins.op = Op::Input;
            if (!(ls >> ins.input)) throw SlpParseError(lineno, "missing input index");
            if (ins.input < 1 || ins.input > nvars)
                throw SlpParseError(lineno, "input index out of range");
        } else if (op == "const") {
            ins.op = Op::Const;
            std::string lit;
            if (!(ls >> lit)) throw SlpParseError(lineno, "missing constant literal");
            if (ins.cval.set_str(lit, 10) != 0)
                throw SlpParseError(lineno, "bad constant literal");
        } else if (op == "add" || op == "sub" || op == "mul") {
            ins.op = op == "add" ? Op::Add : op == "sub" ? Op::Sub : Op::Mul;
            read_reg(ins.a);
            read_reg(ins.b);
        } else {
            throw SlpParseError(lineno, "unknown instruction '" + op + "'");
        }
        std::string extra;
        if (ls >> extra) throw SlpParseError(lineno, "trailing tokens");
        instrs.push_back(std::move(ins));
    }
    if (nvars < 0) throw SlpParseError(lineno, "missing 'slp n=<n>' header");
    if (instrs.empty()) throw SlpParseError(lineno, "program has no instructions");
    return SlpProgram(nvars, std::move(instrs));
}

SlpProgram SlpProgram::parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string SlpProgram::to_text() const {
    std::ostringstream out;
    out << "slp n=" << nvars_ << "\n";
    for (const auto& ins : instrs_) {
        switch (ins.op) {
            case Op::Input: out << "in " << ins.input; break;
            case Op::Const: out << "const " << ins.cval.get_str(); break;
            case Op::Add: out << "add " << ins.a + 1 << ' ' << ins.b + 1; break;
            case Op::Sub: out << "sub " << ins.a + 1 << ' ' << ins.b + 1; break;
            case Op::Mul: out << "mul " << ins.a + 1 << ' ' << ins.b + 1; break;
        }
        out << "\n";
    }
    return out.str();
}

std::uint64_t ProbeMeter::max_probe_degree() const {
    std::uint64_t m = 0;
    for (auto p : probe_moduli) m = std::max(m, p);
    return m;
}

std::string ProbeMeter::log() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < probe_moduli.size(); ++i) {
        if (i) out << ',';
        out << probe_moduli[i];
    }
    out << ";ring_ops=" << ring_ops;
    return out.str();
}

CyclicPoly probe_eval(const SlpProgram& prog, const std::vector<std::uint64_t>& a,
                      std::uint64_t p, const Ring& ring, ProbeMeter* meter) {
    if (static_cast<int>(a.size()) != prog.nvars())
        throw std::invalid_argument("substitution length mismatch");
    for (auto ai : a)
        if (ai >= p) throw std::invalid_argument("substitution exponent not reduced mod p");

    std::uint64_t ops = 0;
    std::vector<CyclicPoly> regs;
    regs.reserve(prog.size());
    for (const auto& ins : prog.instructions()) {
        switch (ins.op) {
            case SlpProgram::Op::Input:
                regs.push_back(CyclicPoly::from_entries(p, {{a[ins.input - 1], ring.one()}}, ring));
                break;
            case SlpProgram::Op::Const:
                regs.push_back(CyclicPoly::from_entries(p, {{0, ring.canon(ins.cval)}}, ring));
                break;
            case SlpProgram::Op::Add:
                ops += std::min(regs[ins.a].term_count(), regs[ins.b].term_count()) + 1;
                regs.push_back(cyclic_add(regs[ins.a], regs[ins.b], ring));
                break;
            case SlpProgram::Op::Sub:
                ops += std::min(regs[ins.a].term_count(), regs[ins.b].term_count()) + 1;
                regs.push_back(cyclic_sub(regs[ins.a], regs[ins.b], ring));
                break;
            case SlpProgram::Op::Mul:
                ops += regs[ins.a].term_count() * regs[ins.b].term_count() + 1;
                regs.push_back(cyclic_mul(regs[ins.a], regs[ins.b], ring));
                break;
        }
    }
    if (meter) meter->ring_ops += ops;
    return regs.back();
}

ProbeOracle::ProbeOracle(const SlpProgram& prog, const Ring& ring, ExponentMap base_map,
                         mpz_class degree_bound, const SparsePoly* subtrahend, ProbeMeter* meter)
    : prog_(&prog),
      ring_(&ring),
      base_map_(std::move(base_map)),
      degree_bound_(std::move(degree_bound)),
      subtrahend_(subtrahend),
      meter_(meter) {
    if (static_cast<int>(base_map_.size()) != prog.nvars())
        throw std::invalid_argument("base map length mismatch");
}

CyclicPoly ProbeOracle::probe(std::uint64_t p) const {
    std::vector<std::uint64_t> a(base_map_.size());
    ExponentMap am(base_map_.size());
    mpz_class pm(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < base_map_.size(); ++i) {
        mpz_class r = base_map_[i] % pm;
        a[i] = r.get_ui();
        am[i] = r;
    }
    if (meter_) meter_->record_probe(p);
    CyclicPoly img = probe_eval(*prog_, a, p, *ring_, meter_);
    if (subtrahend_ && !subtrahend_->is_zero())
        img = cyclic_sub(img, sparse_image(*subtrahend_, am, p, *ring_), *ring_);
    return img;
}

ProbeOracle kron_oracle(const SlpProgram& prog, const Ring& ring, const mpz_class& D,
                        ProbeMeter* meter, const SparsePoly* subtrahend) {
    if (D < 2) throw std::invalid_argument("degree bound must be >= 2");
    ExponentMap a(prog.nvars());
    mpz_class pw = 1;
    for (int i = 0; i < prog.nvars(); ++i) {
        a[i] = pw;
        pw *= D;
    }
    return ProbeOracle(prog, ring, std::move(a), pw, subtrahend, meter);  // pw = D^n
}

ProbeOracle sub_oracle(const SlpProgram& prog, const Ring& ring, const mpz_class& D,
                       std::uint64_t p, std::optional<int> k, const SparsePoly* subtrahend,
                       ProbeMeter* meter) {
    if (D < 2) throw std::invalid_argument("degree bound must be >= 2");
    if (k && (*k < 1 || *k > prog.nvars())) throw std::invalid_argument("k out of range");
    ExponentMap a(prog.nvars());
    mpz_class pm(static_cast<unsigned long>(p));
    mpz_class pw = 1;
    for (int i = 0; i < prog.nvars(); ++i) {
        a[i] = pw % pm;
        if (k && *k == i + 1) a[i] += pm;
        pw *= D;
    }
    mpz_class bound = D * pm;
    if (k) bound *= 2;
    return ProbeOracle(prog, ring, std::move(a), std::move(bound), subtrahend, meter);
}

}  // namespace slpi
