#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace slpi {

// Canonical ring element. Over the integers this is the integer itself;
// over Z/qZ it is the residue in [0, q).
using RingElement = mpz_class;

enum class RingKind { Integers, IntegersModQ };

struct RingSpec {
    RingKind kind = RingKind::Integers;
    mpz_class q;  // present iff kind == IntegersModQ, q >= 2

    // Parses "int" or "zmod:<q>".
    static RingSpec parse(const std::string& text);
    std::string to_string() const;
};

class Ring {
public:
    explicit Ring(RingSpec spec);

    const RingSpec& spec() const { return spec_; }

    RingElement canon(const mpz_class& v) const;
    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement sub(const RingElement& a, const RingElement& b) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement neg(const RingElement& a) const;
    RingElement zero() const { return RingElement(0); }
    RingElement one() const;
    bool eq(const RingElement& a, const RingElement& b) const { return a == b; }
    bool is_zero(const RingElement& a) const { return a == 0; }

private:
    RingSpec spec_;
};

}  // namespace slpi
