#include <doctest.h>

#include <random>

#include "slpi/oracle.hpp"
#include "slpi/uni_interp.hpp"

using namespace slpi;

namespace {
const Ring kInt{RingSpec::parse("int")};
}

TEST_CASE("dense_expand") {
    // (x1 + 1)(x1 - 1) = x1^2 - 1
    auto prog = SlpProgram::parse_text(
        "slp n=1\nin 1\nconst 1\nadd 1 2\nsub 1 2\nmul 3 4\n");
    auto f = dense_expand(prog, kInt);
    auto want = SparsePoly::from_terms(
        1, {Term{1, {mpz_class(2)}}, Term{-1, {mpz_class(0)}}}, kInt);
    CHECK(f == want);

    // x1*x2 + x1*x2 = 2 x1 x2
    auto prog2 = SlpProgram::parse_text("slp n=2\nin 1\nin 2\nmul 1 2\nadd 3 3\n");
    auto want2 = SparsePoly::from_terms(2, {Term{2, {mpz_class(1), mpz_class(1)}}}, kInt);
    CHECK(dense_expand(prog2, kInt) == want2);

    // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
    auto prog3 = SlpProgram::parse_text("slp n=2\nin 1\nin 2\nadd 1 2\nmul 3 3\n");
    auto want3 = SparsePoly::from_terms(2,
                                        {Term{1, {mpz_class(2), mpz_class(0)}},
                                         Term{2, {mpz_class(1), mpz_class(1)}},
                                         Term{1, {mpz_class(0), mpz_class(2)}}},
                                        kInt);
    CHECK(dense_expand(prog3, kInt) == want3);

    // term guard
    auto big = SlpProgram::parse_text("slp n=1\nin 1\nconst 1\nadd 1 2\nmul 3 3\n");
    CHECK_THROWS(dense_expand(big, kInt, 2));
}

TEST_CASE("sparse_to_slp") {
    auto cube = SparsePoly::from_terms(1, {Term{1, {mpz_class(3)}}}, kInt);
    auto prog = sparse_to_slp(cube);
    CHECK(dense_expand(prog, kInt) == cube);
    std::size_t muls = 0;
    for (const auto& ins : prog.instructions())
        if (ins.op == SlpProgram::Op::Mul) ++muls;
    CHECK(muls <= 3);

    SparsePoly zero(2);
    auto zprog = sparse_to_slp(zero);
    CHECK(dense_expand(zprog, kInt).is_zero());
}

TEST_CASE("sparse_to_slp round trips through dense_expand") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        InstanceSpec spec;
        spec.nvars = 1 + rng() % 4;
        spec.degree_bound = 2 + rng() % 60;
        spec.term_bound = 1 + rng() % 10;
        spec.ring = RingSpec::parse(trial % 2 ? "zmod:101" : "int");
        spec.seed = 900 + trial;
        auto [truth, prog] = random_instance(spec);
        Ring ring(spec.ring);
        CHECK(dense_expand(prog, ring) == truth);
    }
}

TEST_CASE("random_instance determinism and structure") {
    InstanceSpec spec;
    spec.nvars = 3;
    spec.degree_bound = 100;
    spec.term_bound = 20;
    spec.ring = RingSpec::parse("int");
    spec.seed = 7;
    auto [f1, p1] = random_instance(spec);
    auto [f2, p2] = random_instance(spec);
    CHECK(f1 == f2);
    CHECK(p1.to_text() == p2.to_text());
    CHECK(f1.term_count() == 20);
    CHECK(f1.total_degree() < 100);
    for (const auto& t : f1.terms()) {
        CHECK(t.coeff != 0);
        for (const auto& e : t.exps) CHECK(e < 100);
    }

    spec.term_bound = 1;
    CHECK(random_instance(spec).first.term_count() == 1);

    // more terms requested than monomials exist
    spec.nvars = 1;
    spec.degree_bound = 3;
    spec.term_bound = 50;
    CHECK(random_instance(spec).first.term_count() == 3);
}

TEST_CASE("collision_census") {
    auto mk = [&](std::vector<long> exps) {
        std::vector<Term> ts;
        for (auto e : exps) ts.push_back(Term{1, {mpz_class(e)}});
        return SparsePoly::from_terms(1, std::move(ts), kInt);
    };
    auto c1 = collision_census(mk({1, 2}), 8, 5);
    CHECK(c1.uncollided == 2);
    CHECK(c1.collided == 0);
    CHECK(c1.block_sizes.empty());

    auto c2 = collision_census(mk({1, 6}), 8, 5);
    CHECK(c2.uncollided == 0);
    CHECK(c2.collided == 2);
    CHECK(c2.block_sizes == std::vector<std::size_t>{2});

    auto f3 = SparsePoly::from_terms(
        1, {Term{3, {mpz_class(10)}}, Term{2, {mpz_class(4)}}}, kInt);
    auto c3 = collision_census(f3, 16, 3);
    CHECK(c3.uncollided == 0);
    CHECK(c3.collided == 2);
    CHECK(c3.block_sizes == std::vector<std::size_t>{2});
}

TEST_CASE("Lemma: collision count s forces p^ceil(s/2) to divide the exponent-difference product") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        InstanceSpec spec;
        spec.nvars = 1 + rng() % 3;
        spec.degree_bound = 2 + rng() % 40;
        spec.term_bound = 2 + rng() % 8;
        spec.ring = RingSpec::parse("int");
        spec.seed = 400 + trial;
        auto f = random_instance(spec).first;
        if (f.term_count() < 2) continue;

        ExponentMap kmap(spec.nvars);
        mpz_class pw = 1;
        for (int i = 0; i < spec.nvars; ++i) {
            kmap[i] = pw;
            pw *= spec.degree_bound;
        }
        std::vector<mpz_class> packed;
        for (const auto& t : f.terms()) packed.push_back(packed_exponent(t.exps, kmap));
        for (std::uint64_t p : {2, 3, 5, 7, 11}) {
            auto census = collision_census(f, spec.degree_bound, p);
            std::size_t s = census.collided;
            mpz_class A = 1;
            for (std::size_t i = 0; i < packed.size(); ++i)
                for (std::size_t j = i + 1; j < packed.size(); ++j) A *= packed[i] - packed[j];
            mpz_class pe;
            mpz_class base(static_cast<unsigned long>(p));
            mpz_pow_ui(pe.get_mpz_t(), base.get_mpz_t(), (s + 1) / 2);
            CHECK(A % pe == 0);
        }
    }
}

TEST_CASE("Corollary: more surviving terms means at most twice the collisions") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        InstanceSpec spec;
        spec.nvars = 1 + rng() % 3;
        spec.degree_bound = 2 + rng() % 40;
        spec.term_bound = 2 + rng() % 10;
        spec.ring = RingSpec::parse("int");
        spec.seed = 500 + trial;
        auto f = random_instance(spec).first;
        ExponentMap kmap(spec.nvars);
        mpz_class pw = 1;
        for (int i = 0; i < spec.nvars; ++i) {
            kmap[i] = pw;
            pw *= spec.degree_bound;
        }
        Ring ring(spec.ring);
        auto primes = first_primes(8);
        for (auto p : primes)
            for (auto q : primes) {
                auto cp = collision_census(f, spec.degree_bound, p);
                auto cq = collision_census(f, spec.degree_bound, q);
                std::size_t sp = sparse_image(f, kmap, p, ring).term_count();
                std::size_t sq = sparse_image(f, kmap, q, ring).term_count();
                if (sp >= sq) CHECK(cp.collided <= 2 * cq.collided);
            }
    }
}
