#include "slpi/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace slpi {

SparsePoly dense_expand(const SlpProgram& prog, const Ring& ring, std::size_t max_terms) {
    const int n = prog.nvars();
    std::vector<SparsePoly> regs;
    regs.reserve(prog.size());
    auto monomial = [&](int var) {
        Term t;
        t.coeff = ring.one();
        t.exps.assign(n, 0);
        t.exps[var - 1] = 1;
        return SparsePoly::from_terms(n, {std::move(t)}, ring);
    };
    for (const auto& ins : prog.instructions()) {
        switch (ins.op) {
            case SlpProgram::Op::Input:
                regs.push_back(monomial(ins.input));
                break;
            case SlpProgram::Op::Const: {
                Term t;
                t.coeff = ring.canon(ins.cval);
                t.exps.assign(n, 0);
                regs.push_back(SparsePoly::from_terms(n, {std::move(t)}, ring));
                break;
            }
            case SlpProgram::Op::Add:
                regs.push_back(poly_add(regs[ins.a], regs[ins.b], ring));
                break;
            case SlpProgram::Op::Sub:
                regs.push_back(poly_sub(regs[ins.a], regs[ins.b], ring));
                break;
            case SlpProgram::Op::Mul:
                if (regs[ins.a].term_count() * regs[ins.b].term_count() > max_terms)
                    throw std::runtime_error("dense_expand: expansion exceeds term guard");
                regs.push_back(poly_mul(regs[ins.a], regs[ins.b], ring));
                break;
        }
        if (regs.back().term_count() > max_terms)
            throw std::runtime_error("dense_expand: expansion exceeds term guard");
    }
    return regs.back();
}

SlpProgram sparse_to_slp(const SparsePoly& f) {
    using Instr = SlpProgram::Instr;
    using Op = SlpProgram::Op;
    const int n = f.nvars();
    std::vector<Instr> instrs;

    if (f.is_zero()) {
        Instr z;
        z.op = Op::Const;
        z.cval = 0;
        return SlpProgram(n, {z});
    }

    // register holding x_i, created on demand
    std::vector<std::size_t> var_reg(n, SIZE_MAX);
    auto get_var = [&](int i) {
        if (var_reg[i] == SIZE_MAX) {
            Instr in;
            in.op = Op::Input;
            in.input = i + 1;
            instrs.push_back(in);
            var_reg[i] = instrs.size() - 1;
        }
        return var_reg[i];
    };
    auto emit2 = [&](Op op, std::size_t a, std::size_t b) {
        Instr ins;
        ins.op = op;
        ins.a = a;
        ins.b = b;
        instrs.push_back(ins);
        return instrs.size() - 1;
    };
    // x_i^e by square and multiply; e >= 1
    auto power = [&](int i, const mpz_class& e) {
        std::size_t base = get_var(i);
        std::size_t acc = SIZE_MAX;
        mpz_class rest = e;
        while (rest > 0) {
            if (mpz_odd_p(rest.get_mpz_t()))
                acc = (acc == SIZE_MAX) ? base : emit2(Op::Mul, acc, base);
            rest >>= 1;
            if (rest > 0) base = emit2(Op::Mul, base, base);
        }
        return acc;
    };

    std::size_t sum = SIZE_MAX;
    for (const auto& t : f.terms()) {
        Instr c;
        c.op = Op::Const;
        c.cval = t.coeff;
        instrs.push_back(c);
        std::size_t term = instrs.size() - 1;
        for (int i = 0; i < n; ++i)
            if (t.exps[i] > 0) term = emit2(Op::Mul, term, power(i, t.exps[i]));
        sum = (sum == SIZE_MAX) ? term : emit2(Op::Add, sum, term);
    }
    // make sure the sum is the final register
    if (sum != instrs.size() - 1) {
        Instr z;
        z.op = Op::Const;
        z.cval = 0;
        instrs.push_back(z);
        emit2(Op::Add, sum, instrs.size() - 1);
    }
    return SlpProgram(n, std::move(instrs));
}

namespace {

// Number of monomials in n variables with total degree < D, capped.
std::size_t monomial_count_capped(int n, const mpz_class& D, std::size_t cap) {
    // C(D-1+n, n)
    mpz_class c = 1;
    for (int i = 1; i <= n; ++i) {
        c *= D - 1 + i;
        c /= i;
        if (c > static_cast<unsigned long>(cap)) return cap;
    }
    return c.fits_ulong_p() && c.get_ui() < cap ? static_cast<std::size_t>(c.get_ui()) : cap;
}

}  // namespace

std::pair<SparsePoly, SlpProgram> random_instance(const InstanceSpec& spec) {
    Ring ring(spec.ring);
    const int n = spec.nvars;
    const mpz_class& D = spec.degree_bound;
    if (D < 2) throw std::invalid_argument("random_instance needs D >= 2");

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {  // inclusive
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    };
    auto rand_below = [&](const mpz_class& bound) {  // uniform in [0, bound)
        // bound <= 2^64 in practice (exponents < D <= 2^16, degrees < D)
        return mpz_class(static_cast<unsigned long>(uniform(0, bound.get_ui() - 1)));
    };

    const std::size_t want = std::min(spec.term_bound, monomial_count_capped(n, D, spec.term_bound));
    std::set<std::vector<mpz_class>> monomials;
    while (monomials.size() < want) {
        // sample a total degree, then split it into n exponents
        mpz_class total = rand_below(D);
        std::vector<mpz_class> exps(n, 0);
        mpz_class rest = total;
        for (int i = 0; i < n; ++i) {
            if (i == n - 1) {
                exps[i] = rest;
            } else {
                exps[i] = rest > 0 ? rand_below(rest + 1) : 0;
                rest -= exps[i];
            }
        }
        std::shuffle(exps.begin(), exps.end(), rng);
        monomials.insert(std::move(exps));
    }

    std::vector<Term> terms;
    for (const auto& exps : monomials) {
        Term t;
        if (spec.ring.kind == RingKind::Integers) {
            std::uint64_t mag = uniform(1, spec.coeff_range);
            t.coeff = mpz_class(static_cast<unsigned long>(mag));
            if (uniform(0, 1)) t.coeff = -t.coeff;
        } else {
            // nonzero residue
            mpz_class q = spec.ring.q;
            std::uint64_t cap = q.fits_ulong_p() ? q.get_ui() - 1 : spec.coeff_range;
            t.coeff = mpz_class(static_cast<unsigned long>(uniform(1, cap)));
        }
        t.exps = exps;
        terms.push_back(std::move(t));
    }
    SparsePoly f = SparsePoly::from_terms(n, std::move(terms), ring);
    SlpProgram prog = sparse_to_slp(f);
    return {std::move(f), std::move(prog)};
}

CollisionCensus collision_census(const SparsePoly& f, const mpz_class& D, std::uint64_t p) {
    ExponentMap a(f.nvars());
    mpz_class pw = 1;
    for (int i = 0; i < f.nvars(); ++i) {
        a[i] = pw;
        pw *= D;
    }
    mpz_class pm(static_cast<unsigned long>(p));
    std::map<mpz_class, std::size_t> groups;
    for (const auto& t : f.terms()) {
        mpz_class d = packed_exponent(t.exps, a) % pm;
        ++groups[d];
    }
    CollisionCensus c;
    for (const auto& [d, cnt] : groups) {
        if (cnt == 1)
            ++c.uncollided;
        else {
            c.collided += cnt;
            c.block_sizes.push_back(cnt);
        }
    }
    std::sort(c.block_sizes.begin(), c.block_sizes.end());
    return c;
}

bool term_collides(const SparsePoly& f, std::size_t term_index, const mpz_class& D,
                   std::uint64_t p) {
    ExponentMap a(f.nvars());
    mpz_class pw = 1;
    for (int i = 0; i < f.nvars(); ++i) {
        a[i] = pw;
        pw *= D;
    }
    mpz_class pm(static_cast<unsigned long>(p));
    mpz_class mine = packed_exponent(f.terms()[term_index].exps, a) % pm;
    for (std::size_t j = 0; j < f.term_count(); ++j) {
        if (j == term_index) continue;
        if (packed_exponent(f.terms()[j].exps, a) % pm == mine) return true;
    }
    return false;
}

}  // namespace slpi
