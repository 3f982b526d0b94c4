#include "slpi/uni_interp.hpp"

#include <algorithm>
#include <map>

namespace slpi {

std::size_t ceil_log2_pow(const mpz_class& D, std::size_t a) {
    if (a == 0) return 0;
    mpz_class x;
    mpz_pow_ui(x.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(a));
    if (x <= 1) return 0;
    std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);  // floor(log2 x) + 1
    bool pow2 = mpz_scan1(x.get_mpz_t(), 0) == bits - 1;
    return pow2 ? bits - 1 : bits;
}

Schedule make_schedule(int n, std::size_t T, const mpz_class& D) {
    if (D < 2) throw std::invalid_argument("make_schedule needs D >= 2");
    if (n < 1) throw std::invalid_argument("make_schedule needs n >= 1");
    Schedule s;
    s.n = n;
    s.T = T;
    s.D = D;
    std::size_t a1 = T >= 1 ? static_cast<std::size_t>(n) * (T - 1) : 0;
    s.N1 = std::max<std::size_t>(1, ceil_log2_pow(D, a1));
    s.N2 = ceil_log2_pow(D, static_cast<std::size_t>(n) * T);
    s.N = std::max(4 * s.N1, s.N1 + s.N2 - 1);
    return s;
}

std::pair<std::size_t, std::size_t> ok_prime_select(const std::vector<CyclicPoly>& images) {
    if (images.empty()) throw std::invalid_argument("ok_prime_select needs images");
    std::size_t j0 = 0, alpha = images[0].term_count();
    for (std::size_t j = 1; j < images.size(); ++j)
        if (images[j].term_count() > alpha) {
            alpha = images[j].term_count();
            j0 = j;
        }
    return {j0, alpha};
}

std::vector<UCandidate> uterms(const CyclicPoly& f_p, const std::vector<CyclicPoly>& f_ppk,
                               std::uint64_t p, const mpz_class& D, const Ring& ring) {
    const std::size_t K = f_ppk.size();
    std::vector<std::uint64_t> small_primes = K ? first_primes(K) : std::vector<std::uint64_t>{};

    // residue mod p -> (count, degree) per probe family member
    std::vector<std::map<std::uint64_t, std::pair<std::size_t, std::uint64_t>>> groups(K);
    for (std::size_t k = 0; k < K; ++k)
        for (const auto& [deg, c] : f_ppk[k].entries()) {
            auto& slot = groups[k][deg % p];
            ++slot.first;
            slot.second = deg;
        }

    std::vector<UCandidate> out;
    for (const auto& [d_i, a_i] : f_p.entries()) {
        std::vector<std::uint64_t> residues(K);
        std::vector<std::uint64_t> b(K);
        bool ok = true;
        for (std::size_t k = 0; k < K && ok; ++k) {
            auto it = groups[k].find(d_i);
            if (it == groups[k].end() || it->second.first != 1) {
                ok = false;
                break;
            }
            b[k] = it->second.second;
            if (!f_ppk[k].has_coeff(b[k], a_i)) ok = false;
            residues[k] = b[k] % small_primes[k];
        }
        if (!ok) continue;
        auto beta = crt(residues, small_primes, D);
        if (!beta) continue;
        // image degrees of x^beta must reproduce every observed degree
        mpz_class pm(static_cast<unsigned long>(p));
        if (*beta % pm != static_cast<unsigned long>(d_i)) continue;
        bool consistent = true;
        for (std::size_t k = 0; k < K; ++k) {
            mpz_class m(static_cast<unsigned long>(p) );
            m *= static_cast<unsigned long>(small_primes[k]);
            if (*beta % m != static_cast<unsigned long>(b[k])) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        out.push_back(UCandidate{a_i, *beta});
    }
    return out;
}

bool term_test(const RingElement& coeff, const mpz_class& packed_exp,
               const std::vector<CyclicPoly>& images, const std::vector<std::uint64_t>& primes,
               std::size_t n_checked, std::size_t need) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < n_checked; ++j) {
        mpz_class pm(static_cast<unsigned long>(primes[j]));
        mpz_class d = packed_exp % pm;
        // #(f_j - c x^d) < #f_j iff the coefficient of f_j at d equals c
        if (images[j].has_coeff(d.get_ui(), coeff) && ++hits >= need) return true;
    }
    return need == 0;
}

SparsePoly ui_poly(const ProbeOracle& oracle, std::size_t T, const mpz_class& D,
                   const Ring& ring) {
    SparsePoly h(1);
    if (T == 0) return h;
    const ExponentMap ident{mpz_class(1)};

    Schedule sched = make_schedule(1, T, D);
    std::vector<std::uint64_t> primes = first_primes(sched.N);
    std::vector<CyclicPoly> images;
    images.reserve(sched.N);
    for (std::size_t j = 0; j < sched.N; ++j) images.push_back(oracle.probe(primes[j]));

    auto [j0, alpha] = ok_prime_select(images);
    const std::size_t K = compute_KD(D);
    std::vector<std::uint64_t> small_primes = first_primes(K);

    while (alpha != 0) {
        if (sched.T == 0)
            throw InterpolationError("residual images nonzero with exhausted term bound "
                                     "(T underestimates the term count?)");
        std::uint64_t p = primes[j0];

        std::vector<CyclicPoly> family;
        family.reserve(K);
        for (std::size_t k = 0; k < K; ++k) {
            std::uint64_t m = p * small_primes[k];
            CyclicPoly img = oracle.probe(m);
            if (!h.is_zero()) img = cyclic_sub(img, sparse_image(h, ident, m, ring), ring);
            family.push_back(std::move(img));
        }

        std::vector<Term> accepted;
        for (const auto& u : uterms(images[j0], family, p, D, ring))
            if (term_test(u.coeff, u.exponent, images, primes, sched.N1 + sched.N2 - 1, sched.N2))
                accepted.push_back(Term{u.coeff, {u.exponent}});
        if (accepted.empty())
            throw InterpolationError("no candidate passed the term test "
                                     "(T or D bound violated?)");

        SparsePoly s = SparsePoly::from_terms(1, std::move(accepted), ring);
        h = poly_add(h, s, ring);
        std::size_t found = s.term_count();
        sched = make_schedule(1, sched.T > found ? sched.T - found : 0, D);
        if (images.size() > sched.N) images.erase(images.begin() + sched.N, images.end());
        for (std::size_t j = 0; j < images.size(); ++j)
            images[j] = cyclic_sub(images[j], sparse_image(s, ident, primes[j], ring), ring);
        std::tie(j0, alpha) = ok_prime_select(images);
    }
    return h;
}

}  // namespace slpi
