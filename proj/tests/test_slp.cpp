#include <doctest.h>

#include <random>

#include "slpi/oracle.hpp"
#include "slpi/slp.hpp"

using namespace slpi;

namespace {
const Ring kInt{RingSpec::parse("int")};
}

TEST_CASE("parse_slp basics") {
    auto prog = SlpProgram::parse_text("slp n=2\nin 1\nin 2\nmul 1 2\n");
    CHECK(prog.nvars() == 2);
    CHECK(prog.size() == 3);

    auto prog2 = SlpProgram::parse_text("slp n=1\nin 1\nconst 3\nadd 1 2\n");
    CHECK(prog2.size() == 3);

    CHECK_THROWS_AS(SlpProgram::parse_text("slp n=2\nmul 1 2\n"), SlpParseError);
    CHECK_THROWS_AS(SlpProgram::parse_text("slp n=2\nin 3\n"), SlpParseError);
    CHECK_THROWS_AS(SlpProgram::parse_text("slp n=1\nfoo 1\n"), SlpParseError);
    CHECK_THROWS_AS(SlpProgram::parse_text("in 1\n"), SlpParseError);  // missing header

    // comments and round trip
    auto prog3 = SlpProgram::parse_text("# circuit\nslp n=1\nin 1  # x\nmul 1 1\n");
    auto prog4 = SlpProgram::parse_text(prog3.to_text());
    CHECK(prog3.to_text() == prog4.to_text());
}

TEST_CASE("probe_eval examples") {
    // x1*x2 + 1 at a = (1,3), p = 7  ->  x^4 + 1
    auto prog = SlpProgram::parse_text("slp n=2\nin 1\nin 2\nmul 1 2\nconst 1\nadd 3 4\n");
    CHECK(probe_eval(prog, {1, 3}, 7, kInt) ==
          CyclicPoly::from_entries(7, {{0, 1}, {4, 1}}, kInt));

    // x1 - x1 is identically zero
    auto zprog = SlpProgram::parse_text("slp n=1\nin 1\nsub 1 1\n");
    CHECK(probe_eval(zprog, {4}, 9, kInt).is_zero());

    // 3 x1^2 x2^3 + 2 at a = (1, 3), p = 7  ->  2 + 3x^4
    auto f = SparsePoly::from_terms(
        2, {Term{3, {mpz_class(2), mpz_class(3)}}, Term{2, {mpz_class(0), mpz_class(0)}}}, kInt);
    auto fprog = sparse_to_slp(f);
    CHECK(probe_eval(fprog, {1, 3}, 7, kInt) ==
          CyclicPoly::from_entries(7, {{0, 2}, {4, 3}}, kInt));
}

TEST_CASE("oracles") {
    const Ring& ring = kInt;
    // kron_oracle(f = x1 x2, D=3).probe(5) -> x^4
    auto f = SparsePoly::from_terms(2, {Term{1, {mpz_class(1), mpz_class(1)}}}, ring);
    auto prog = sparse_to_slp(f);
    auto k = kron_oracle(prog, ring, 3);
    CHECK(k.degree_bound() == 9);
    CHECK(k.probe(5) == CyclicPoly::from_entries(5, {{4, 1}}, ring));

    // sub_oracle(f = x1^2 x2^3, D=10, p=7, k=2).probe(q > 32) -> x^32
    auto g = SparsePoly::from_terms(2, {Term{1, {mpz_class(2), mpz_class(3)}}}, ring);
    auto gprog = sparse_to_slp(g);
    auto s = sub_oracle(gprog, ring, 10, 7, 2, nullptr);
    CHECK(s.degree_bound() == 140);
    CHECK(s.probe(37) == CyclicPoly::from_entries(37, {{32, 1}}, ring));

    // subtracting the whole polynomial kills every probe
    auto s0 = sub_oracle(gprog, ring, 10, 7, std::nullopt, &g);
    for (std::uint64_t q : {2, 5, 11, 41}) CHECK(s0.probe(q).is_zero());

    CHECK_THROWS(sub_oracle(gprog, ring, 10, 7, 3, nullptr));  // k out of range
}

TEST_CASE("probe consistency: probe(p) reduced mod x^q-1 equals probe(q) for q | p") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        InstanceSpec spec;
        spec.nvars = 1 + rng() % 3;
        spec.degree_bound = 30;
        spec.term_bound = 5;
        spec.ring = RingSpec::parse(trial % 2 ? "zmod:64" : "int");
        spec.seed = trial;
        auto [truth, prog] = random_instance(spec);
        Ring ring(spec.ring);
        auto oracle = kron_oracle(prog, ring, spec.degree_bound);
        std::uint64_t q = 2 + rng() % 10, m = 1 + rng() % 8;
        CHECK(cyclic_reduce(oracle.probe(q * m), q, ring) == oracle.probe(q));
    }
}

TEST_CASE("probe metering and determinism") {
    auto f = SparsePoly::from_terms(1, {Term{2, {mpz_class(9)}}, Term{1, {mpz_class(1)}}}, kInt);
    auto prog = sparse_to_slp(f);
    ProbeMeter m1, m2;
    auto o1 = kron_oracle(prog, kInt, 16, &m1);
    auto o2 = kron_oracle(prog, kInt, 16, &m2);
    for (std::uint64_t p : {2, 3, 5, 7}) CHECK(o1.probe(p) == o2.probe(p));
    CHECK(m1.probes() == 4);
    CHECK(m1.max_probe_degree() == 7);
    CHECK(m1.log() == m2.log());
    CHECK(m1.ring_ops > 0);
}
