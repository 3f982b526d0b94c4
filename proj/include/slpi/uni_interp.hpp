#pragma once

#include <cstdint>
#include <vector>

#include "slpi/poly.hpp"
#include "slpi/primes.hpp"
#include "slpi/ring.hpp"
#include "slpi/slp.hpp"

namespace slpi {

// Bound-violation diagnostic: the driver loop made no progress, which
// signals a bad T or D bound.
struct InterpolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Probe-count schedule derived from the term and degree bounds.
struct Schedule {
    std::size_t N1 = 0, N2 = 0, N = 0;
    mpz_class D;
    std::size_t T = 0;
    int n = 1;
};

// N1 = max(1, ceil(n(T-1)log2 D)), N2 = ceil(nT log2 D), N = max(4N1, N1+N2-1).
Schedule make_schedule(int n, std::size_t T, const mpz_class& D);

// Exact value of ceil(a * log2 D), a >= 0.
std::size_t ceil_log2_pow(const mpz_class& D, std::size_t a);

// Smallest index (0-based) maximizing term_count, plus that maximum.
std::pair<std::size_t, std::size_t> ok_prime_select(const std::vector<CyclicPoly>& images);

struct UCandidate {
    RingElement coeff;
    mpz_class exponent;
};

// Candidate terms recovered from the probe family at one ok prime
// (f_p at modulus p, f_ppk[k] at modulus p * p_{k+1}).
std::vector<UCandidate> uterms(const CyclicPoly& f_p, const std::vector<CyclicPoly>& f_ppk,
                               std::uint64_t p, const mpz_class& D, const Ring& ring);

// Membership criterion: true iff the candidate's image coefficient matches
// at >= need of the first n_checked residual images.  packed_exp is the
// candidate's exponent under the images' base substitution.
bool term_test(const RingElement& coeff, const mpz_class& packed_exp,
               const std::vector<CyclicPoly>& images, const std::vector<std::uint64_t>& primes,
               std::size_t n_checked, std::size_t need);

// Interpolates the univariate polynomial behind the oracle.
// Requires T >= #target and D > deg(target) with D <= oracle.degree_bound().
SparsePoly ui_poly(const ProbeOracle& oracle, std::size_t T, const mpz_class& D,
                   const Ring& ring);

}  // namespace slpi
