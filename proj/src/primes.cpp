#include "slpi/primes.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace slpi {

namespace {

std::mutex g_prime_mutex;
std::vector<std::uint64_t> g_primes;  // gap-free prefix of all primes

// Sieve of Eratosthenes up to `limit`, replacing the cache.
void sieve_to(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    g_primes = std::move(primes);
}

// p_n < n (ln n + ln ln n) for n >= 6.
std::uint64_t upper_bound_for_nth(std::size_t n) {
    if (n < 6) return 16;
    double x = static_cast<double>(n);
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
}

void ensure_primes(std::size_t n) {
    if (g_primes.size() >= n) return;
    std::uint64_t limit = upper_bound_for_nth(n);
    for (;;) {
        sieve_to(limit);
        if (g_primes.size() >= n) return;
        limit *= 2;
    }
}

}  // namespace

std::vector<std::uint64_t> first_primes(std::size_t n) {
    if (n < 1) throw std::invalid_argument("first_primes needs n >= 1");
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    ensure_primes(n);
    return std::vector<std::uint64_t>(g_primes.begin(), g_primes.begin() + n);
}

std::uint64_t nth_prime(std::size_t k) {
    if (k < 1) throw std::invalid_argument("nth_prime is 1-based");
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    ensure_primes(k);
    return g_primes[k - 1];
}

std::size_t compute_KD(const mpz_class& D) {
    if (D < 1) throw std::invalid_argument("compute_KD needs D >= 1");
    mpz_class prod = 1;
    std::size_t k = 0;
    while (prod < D) {
        ++k;
        prod *= static_cast<unsigned long>(nth_prime(k));
    }
    return k;
}

std::optional<mpz_class> crt(const std::vector<std::uint64_t>& residues,
                             const std::vector<std::uint64_t>& moduli,
                             const mpz_class& bound) {
    if (residues.size() != moduli.size())
        throw std::invalid_argument("crt: residues/moduli length mismatch");
    mpz_class w = 0, m = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        mpz_class qi(static_cast<unsigned long>(moduli[i]));
        mpz_class ei(static_cast<unsigned long>(residues[i]));
        if (ei >= qi) throw std::invalid_argument("crt: residue out of range");
        // solve w + m*t = ei (mod qi)
        mpz_class minv;
        if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), qi.get_mpz_t()) == 0)
            throw std::invalid_argument("crt: moduli not coprime");
        mpz_class t = ((ei - w) * minv) % qi;
        if (t < 0) t += qi;
        w += m * t;
        m *= qi;
    }
    if (w >= bound) return std::nullopt;
    return w;
}

std::vector<mpz_class> d_adic_expand(const mpz_class& d, const mpz_class& D, std::size_t n) {
    if (D < 2) throw std::invalid_argument("d_adic_expand needs base >= 2");
    if (d < 0) throw std::invalid_argument("d_adic_expand needs d >= 0");
    std::vector<mpz_class> digits(n);
    mpz_class rest = d;
    for (std::size_t i = 0; i < n; ++i) {
        digits[i] = rest % D;
        rest /= D;
    }
    if (rest != 0) throw std::invalid_argument("d_adic_expand: d >= D^n");
    return digits;
}

namespace testing {

void corrupt_prime_cache() {
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    // grow the table past anything the selftest will ask for, so the
    // corruption is not wiped by a later regrowing sieve
    ensure_primes(10000);
    g_primes[3] = 9;  // not prime
}

}  // namespace testing

}  // namespace slpi
