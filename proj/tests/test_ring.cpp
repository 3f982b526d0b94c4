#include <doctest.h>

#include <random>

#include "slpi/ring.hpp"

using namespace slpi;

TEST_CASE("ring spec parsing") {
    CHECK(RingSpec::parse("int").kind == RingKind::Integers);
    auto z7 = RingSpec::parse("zmod:7");
    CHECK(z7.kind == RingKind::IntegersModQ);
    CHECK(z7.q == 7);
    CHECK_THROWS(RingSpec::parse("zmod:1"));
    CHECK_THROWS(RingSpec::parse("gf:9"));
}

TEST_CASE("basic ring operations") {
    Ring z(RingSpec::parse("int"));
    CHECK(z.add(2, 3) == 5);
    CHECK(z.add(7, z.zero()) == 7);

    Ring z7(RingSpec::parse("zmod:7"));
    CHECK(z7.mul(3, 5) == 1);
    CHECK(z7.canon(-1) == 6);
    CHECK(z7.add(mpz_class(4), z7.zero()) == 4);
}

TEST_CASE("ring axioms on random values") {
    std::mt19937_64 rng(42);
    for (const char* spec : {"int", "zmod:97", "zmod:12"}) {
        Ring ring(RingSpec::parse(spec));
        for (int i = 0; i < 500; ++i) {
            auto rnd = [&] { return ring.canon(mpz_class(static_cast<long>(rng() % 4001) - 2000)); };
            RingElement a = rnd(), b = rnd(), c = rnd();
            CHECK(ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c)));
            CHECK(ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c)));
            CHECK(ring.is_zero(ring.sub(a, a)));
            CHECK(ring.canon(ring.canon(a)) == ring.canon(a));  // idempotent
        }
    }
}

TEST_CASE("mod-q residues are canonical in [0, q)") {
    Ring z12(RingSpec::parse("zmod:12"));
    for (long v = -30; v <= 30; ++v) {
        RingElement r = z12.canon(mpz_class(v));
        CHECK(r >= 0);
        CHECK(r < 12);
    }
}
