#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "slpi/ring.hpp"

namespace slpi {

// Substitution x_i -> x^{a_i}.
using ExponentMap = std::vector<mpz_class>;

struct Term {
    RingElement coeff;
    std::vector<mpz_class> exps;  // length = nvars, entries >= 0
};

// Sparse multivariate polynomial in canonical form: terms sorted
// lexicographically by exponent vector, no zero coefficients, no
// duplicate monomials. Equality is structural.
class SparsePoly {
public:
    explicit SparsePoly(int nvars);
    // Canonicalizes: merges duplicate monomials, drops ring zeros, sorts.
    static SparsePoly from_terms(int nvars, std::vector<Term> terms, const Ring& ring);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Total degree; -1 for the zero polynomial.
    mpz_class total_degree() const;

    bool operator==(const SparsePoly& o) const;

    std::string to_text() const;                 // "poly n=<n>" + one term per line
    static SparsePoly parse(std::istream& in, const Ring& ring);
    static SparsePoly parse_text(const std::string& text, const Ring& ring);

private:
    int nvars_;
    std::vector<Term> terms_;
};

SparsePoly poly_add(const SparsePoly& f, const SparsePoly& g, const Ring& ring);
SparsePoly poly_sub(const SparsePoly& f, const SparsePoly& g, const Ring& ring);
SparsePoly poly_mul(const SparsePoly& f, const SparsePoly& g, const Ring& ring);

// Sum_i e_i * a_i, in arbitrary precision.
mpz_class packed_exponent(const std::vector<mpz_class>& exps, const ExponentMap& a);

// Element of R[x]/(x^p - 1). Conceptually a dense length-p coefficient
// vector; only the nonzero entries are stored (sorted by degree).
class CyclicPoly {
public:
    explicit CyclicPoly(std::uint64_t modulus);
    static CyclicPoly from_entries(std::uint64_t modulus,
                                   std::vector<std::pair<std::uint64_t, RingElement>> entries,
                                   const Ring& ring);

    std::uint64_t modulus() const { return modulus_; }
    std::size_t term_count() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<std::pair<std::uint64_t, RingElement>>& entries() const { return entries_; }

    // Coefficient at a degree in [0, p); ring zero when absent.
    RingElement coeff_at(std::uint64_t degree) const;
    bool has_coeff(std::uint64_t degree, const RingElement& c) const;

    bool operator==(const CyclicPoly& o) const;

private:
    std::uint64_t modulus_;
    std::vector<std::pair<std::uint64_t, RingElement>> entries_;
};

// Wraparound (schoolbook) convolution: result[k] = sum_{i+j == k mod p} a[i]b[j].
CyclicPoly cyclic_mul(const CyclicPoly& a, const CyclicPoly& b, const Ring& ring);
CyclicPoly cyclic_add(const CyclicPoly& a, const CyclicPoly& b, const Ring& ring);
CyclicPoly cyclic_sub(const CyclicPoly& a, const CyclicPoly& b, const Ring& ring);

// Image of an explicit polynomial under x_i -> x^{a_i} reduced mod (x^p - 1).
CyclicPoly sparse_image(const SparsePoly& f, const ExponentMap& a, std::uint64_t p,
                        const Ring& ring);

// Reduce an already-univariate image to a smaller modulus (x^q - 1), q | p or not.
CyclicPoly cyclic_reduce(const CyclicPoly& f, std::uint64_t q, const Ring& ring);

}  // namespace slpi
