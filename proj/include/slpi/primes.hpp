#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace slpi {

// First N primes, gap-free prefix starting at 2, via a deterministic sieve.
// The underlying table is cached and grows monotonically.
std::vector<std::uint64_t> first_primes(std::size_t n);

// k-th prime, 1-based (nth_prime(1) == 2).
std::uint64_t nth_prime(std::size_t k);

// Smallest K with p_1 * p_2 * ... * p_K >= D.  compute_KD(1) == 0.
std::size_t compute_KD(const mpz_class& D);

// Unique w < prod(moduli) with w = residues[i] (mod moduli[i]); moduli must
// be pairwise coprime.  Returns nullopt if that w >= bound.
std::optional<mpz_class> crt(const std::vector<std::uint64_t>& residues,
                             const std::vector<std::uint64_t>& moduli,
                             const mpz_class& bound);

// Digits e_1..e_n with d = sum e_i D^{i-1}, all in [0, D).  Requires d < D^n.
std::vector<mpz_class> d_adic_expand(const mpz_class& d, const mpz_class& D, std::size_t n);

namespace testing {
// Fault injection for the selftest: corrupts the cached prime table.
void corrupt_prime_cache();
}  // namespace testing

}  // namespace slpi
