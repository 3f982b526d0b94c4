#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slpi/poly.hpp"
#include "slpi/ring.hpp"

namespace slpi {

struct SlpParseError : std::runtime_error {
    int line;
    SlpParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

class SlpProgram {
public:
    enum class Op { Input, Const, Add, Sub, Mul };

    struct Instr {
        Op op;
        std::size_t a = 0, b = 0;  // 0-based register indices (Add/Sub/Mul)
        int input = 0;             // 1-based variable index (Input)
        mpz_class cval;            // Const
    };

    SlpProgram(int nvars, std::vector<Instr> instrs);

    int nvars() const { return nvars_; }
    const std::vector<Instr>& instructions() const { return instrs_; }
    std::size_t size() const { return instrs_.size(); }
    std::size_t output() const { return instrs_.size() - 1; }

    // Circuit text format: header "slp n=<n>", then one instruction per
    // line ("in <i>" | "const <c>" | "add <r1> <r2>" | ...), 1-based
    // registers, '#' starts a comment.
    static SlpProgram parse(std::istream& in);
    static SlpProgram parse_text(const std::string& text);
    std::string to_text() const;

private:
    int nvars_;
    std::vector<Instr> instrs_;
};

// Per-run accounting: every probe's modulus plus ring-operation tallies.
struct ProbeMeter {
    std::vector<std::uint64_t> probe_moduli;
    std::uint64_t ring_ops = 0;

    std::uint64_t probes() const { return probe_moduli.size(); }
    std::uint64_t max_probe_degree() const;
    void record_probe(std::uint64_t p) { probe_moduli.push_back(p); }
    std::string log() const;  // "p1,p2,...;ring_ops=<k>"
};

// Evaluates the program with Input(i) = x^{a_i} in R[x]/(x^p - 1).
// Requires a_i < p for all i.
CyclicPoly probe_eval(const SlpProgram& prog, const std::vector<std::uint64_t>& a,
                      std::uint64_t p, const Ring& ring, ProbeMeter* meter = nullptr);

// Abstract univariate probe source: some univariate g with deg(g) <
// degree_bound, queryable as probe(p) = g mod (x^p - 1).  Concretely
// (program, base exponent map, optional subtrahend h): probe(p) =
// probe_eval(prog, a mod p, p) - sparse_image(h, a mod p, p).
class ProbeOracle {
public:
    ProbeOracle(const SlpProgram& prog, const Ring& ring, ExponentMap base_map,
                mpz_class degree_bound, const SparsePoly* subtrahend, ProbeMeter* meter);

    const mpz_class& degree_bound() const { return degree_bound_; }
    const ExponentMap& base_map() const { return base_map_; }
    CyclicPoly probe(std::uint64_t p) const;

private:
    const SlpProgram* prog_;
    const Ring* ring_;
    ExponentMap base_map_;
    mpz_class degree_bound_;
    const SparsePoly* subtrahend_;  // may be null; nvars = prog nvars
    ProbeMeter* meter_;
};

// Kronecker substitution x_i -> x^{D^{i-1}}; degree bound D^n.
ProbeOracle kron_oracle(const SlpProgram& prog, const Ring& ring, const mpz_class& D,
                        ProbeMeter* meter = nullptr, const SparsePoly* subtrahend = nullptr);

// x_i -> x^{mod(D^{i-1}, p)}, with x_k -> x^{mod(D^{k-1}, p) + p} when k is
// given; degree bound D*p (no k) or 2*D*p (with k); probes subtract h.
ProbeOracle sub_oracle(const SlpProgram& prog, const Ring& ring, const mpz_class& D,
                       std::uint64_t p, std::optional<int> k, const SparsePoly* subtrahend,
                       ProbeMeter* meter = nullptr);

}  // namespace slpi
