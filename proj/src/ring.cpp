#include "slpi/ring.hpp"

namespace slpi {

RingSpec RingSpec::parse(const std::string& text) {
    if (text == "int") return RingSpec{RingKind::Integers, 0};
    if (text.rfind("zmod:", 0) == 0) {
        mpz_class q;
        if (q.set_str(text.substr(5), 10) != 0)
            throw std::invalid_argument("bad modulus in ring spec: " + text);
        if (q < 2) throw std::invalid_argument("ring modulus must be >= 2");
        return RingSpec{RingKind::IntegersModQ, q};
    }
    throw std::invalid_argument("unknown ring spec: " + text + " (expected 'int' or 'zmod:<q>')");
}

std::string RingSpec::to_string() const {
    return kind == RingKind::Integers ? "int" : "zmod:" + q.get_str();
}

Ring::Ring(RingSpec spec) : spec_(std::move(spec)) {
    if (spec_.kind == RingKind::IntegersModQ && spec_.q < 2)
        throw std::invalid_argument("ring modulus must be >= 2");
}

RingElement Ring::canon(const mpz_class& v) const {
    if (spec_.kind == RingKind::Integers) return v;
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), spec_.q.get_mpz_t());  // result in [0, q)
    return r;
}

RingElement Ring::add(const RingElement& a, const RingElement& b) const {
    return canon(a + b);
}

RingElement Ring::sub(const RingElement& a, const RingElement& b) const {
    return canon(a - b);
}

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
    return canon(a * b);
}

RingElement Ring::neg(const RingElement& a) const {
    return canon(-a);
}

RingElement Ring::one() const {
    // q = 2 still has 1 != 0; q >= 2 is enforced.
    return RingElement(1);
}

}  // namespace slpi
