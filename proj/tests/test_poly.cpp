#include <doctest.h>

#include <random>
#include <sstream>

#include "slpi/poly.hpp"

using namespace slpi;

namespace {

const Ring kInt{RingSpec::parse("int")};

SparsePoly uni(std::vector<std::pair<long, long>> cs) {
    std::vector<Term> ts;
    for (auto [c, e] : cs) ts.push_back(Term{mpz_class(c), {mpz_class(e)}});
    return SparsePoly::from_terms(1, std::move(ts), kInt);
}

}  // namespace

TEST_CASE("cyclic_mul wraparound convolution") {
    // p=3: (1 + x)^2 = 1 + 2x + x^2, no wraparound
    auto one_plus_x = CyclicPoly::from_entries(3, {{0, 1}, {1, 1}}, kInt);
    auto sq = cyclic_mul(one_plus_x, one_plus_x, kInt);
    CHECK(sq == CyclicPoly::from_entries(3, {{0, 1}, {1, 2}, {2, 1}}, kInt));

    // p=2: x * x = x^2 = 1
    auto x2 = CyclicPoly::from_entries(2, {{1, 1}}, kInt);
    CHECK(cyclic_mul(x2, x2, kInt) == CyclicPoly::from_entries(2, {{0, 1}}, kInt));

    // p=4: (1 + x^3) * x^2 = x^2 + x^5 = x^2 + x
    auto a = CyclicPoly::from_entries(4, {{0, 1}, {3, 1}}, kInt);
    auto b = CyclicPoly::from_entries(4, {{2, 1}}, kInt);
    CHECK(cyclic_mul(a, b, kInt) == CyclicPoly::from_entries(4, {{1, 1}, {2, 1}}, kInt));

    CHECK_THROWS(cyclic_mul(a, x2, kInt));  // modulus mismatch
}

TEST_CASE("sparse_image") {
    // f = 3 x1^2 x2^3 + 2, a = (1, 3), p = 7  ->  2 + 3x^4
    auto f = SparsePoly::from_terms(
        2, {Term{3, {mpz_class(2), mpz_class(3)}}, Term{2, {mpz_class(0), mpz_class(0)}}}, kInt);
    ExponentMap a{mpz_class(1), mpz_class(3)};
    CHECK(sparse_image(f, a, 7, kInt) == CyclicPoly::from_entries(7, {{0, 2}, {4, 3}}, kInt));

    // zero polynomial maps to the zero image
    SparsePoly zero(2);
    CHECK(sparse_image(zero, a, 7, kInt).is_zero());

    // f = x1 + x2 with a = (1,1): collision by construction, coefficients add
    auto g = SparsePoly::from_terms(
        2, {Term{1, {mpz_class(1), mpz_class(0)}}, Term{1, {mpz_class(0), mpz_class(1)}}}, kInt);
    ExponentMap ones{mpz_class(1), mpz_class(1)};
    CHECK(sparse_image(g, ones, 5, kInt) == CyclicPoly::from_entries(5, {{1, 2}}, kInt));
}

TEST_CASE("poly_sub and cyclic_sub cancel") {
    auto f = uni({{3, 10}, {2, 4}});
    CHECK(poly_sub(f, f, kInt).is_zero());
    CHECK(poly_sub(f, uni({{2, 4}}), kInt) == uni({{3, 10}}));

    Ring z5(RingSpec::parse("zmod:5"));
    auto a = SparsePoly::from_terms(1, {Term{3, {mpz_class(1)}}}, z5);
    auto b = SparsePoly::from_terms(1, {Term{-2, {mpz_class(1)}}}, z5);
    CHECK(poly_sub(a, b, z5).is_zero());  // 3 - (-2) = 5 = 0 mod 5

    auto ca = CyclicPoly::from_entries(6, {{2, 5}}, kInt);
    auto cb = CyclicPoly::from_entries(6, {{2, 5}, {3, 1}}, kInt);
    CHECK(cyclic_sub(ca, cb, kInt) == CyclicPoly::from_entries(6, {{3, -1}}, kInt));
}

TEST_CASE("canonical form: merging, zero removal, ordering") {
    auto f = SparsePoly::from_terms(
        1, {Term{2, {mpz_class(3)}}, Term{-2, {mpz_class(3)}}, Term{1, {mpz_class(0)}}}, kInt);
    CHECK(f.term_count() == 1);
    CHECK(f == uni({{1, 0}}));
    CHECK(uni({{1, 5}, {2, 1}}) == uni({{2, 1}, {1, 5}}));  // order-insensitive input
}

TEST_CASE("text format round trip") {
    auto f = SparsePoly::from_terms(
        2, {Term{-3, {mpz_class(2), mpz_class(3)}}, Term{2, {mpz_class(0), mpz_class(0)}}}, kInt);
    auto g = SparsePoly::parse_text(f.to_text(), kInt);
    CHECK(f == g);
    CHECK(f.to_text() == g.to_text());
    CHECK_THROWS(SparsePoly::parse_text("1 2 3\n", kInt));        // missing header
    CHECK_THROWS(SparsePoly::parse_text("poly n=2\n5 1\n", kInt));  // wrong arity
}

TEST_CASE("sparse_image is a ring homomorphism") {
    std::mt19937_64 rng(5);
    Ring z101(RingSpec::parse("zmod:101"));
    for (int trial = 0; trial < 50; ++trial) {
        const Ring& ring = trial % 2 ? z101 : kInt;
        int n = 1 + rng() % 3;
        std::uint64_t p = 2 + rng() % 30;
        auto rand_poly = [&] {
            std::vector<Term> ts;
            std::size_t cnt = 1 + rng() % 5;
            for (std::size_t i = 0; i < cnt; ++i) {
                Term t;
                t.coeff = ring.canon(mpz_class(static_cast<long>(rng() % 19) - 9));
                for (int v = 0; v < n; ++v) t.exps.push_back(mpz_class(rng() % 8));
                ts.push_back(std::move(t));
            }
            return SparsePoly::from_terms(n, std::move(ts), ring);
        };
        ExponentMap a(n);
        for (int v = 0; v < n; ++v) a[v] = mpz_class(rng() % 40);
        SparsePoly f = rand_poly(), g = rand_poly();
        CHECK(sparse_image(poly_mul(f, g, ring), a, p, ring) ==
              cyclic_mul(sparse_image(f, a, p, ring), sparse_image(g, a, p, ring), ring));
        CHECK(sparse_image(poly_add(f, g, ring), a, p, ring) ==
              cyclic_add(sparse_image(f, a, p, ring), sparse_image(g, a, p, ring), ring));
        CHECK(sparse_image(f, a, p, ring).term_count() <= f.term_count());
    }
}
