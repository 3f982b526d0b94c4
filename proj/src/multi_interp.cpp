#include "slpi/multi_interp.hpp"

#include <map>
#include <optional>

#include "slpi/primes.hpp"

namespace slpi {

namespace {

ExponentMap kron_map(int n, const mpz_class& D) {
    ExponentMap a(n);
    mpz_class pw = 1;
    for (int i = 0; i < n; ++i) {
        a[i] = pw;
        pw *= D;
    }
    return a;
}

}  // namespace

SparsePoly mpoly_kron(const SlpProgram& prog, const mpz_class& D, std::size_t T,
                      const Ring& ring, ProbeMeter* meter) {
    const int n = prog.nvars();
    ProbeOracle oracle = kron_oracle(prog, ring, D, meter);
    SparsePoly packed = ui_poly(oracle, T, oracle.degree_bound(), ring);
    std::vector<Term> terms;
    terms.reserve(packed.term_count());
    for (const auto& t : packed.terms())
        terms.push_back(Term{t.coeff, d_adic_expand(t.exps[0], D, n)});
    return SparsePoly::from_terms(n, std::move(terms), ring);
}

int find_k0(const mpz_class& D, std::uint64_t p) {
    if (D < 2) throw std::invalid_argument("find_k0 needs D >= 2");
    mpz_class pm(static_cast<unsigned long>(p));
    int k0 = 1;
    mpz_class pw = 1;  // D^{k0-1}
    while (pm > pw) {
        ++k0;
        pw *= D;
    }
    return k0;
}

std::vector<MCandidate> mterms(const CyclicPoly& f_mod, const SparsePoly& f_sub,
                               const std::vector<SparsePoly>& g, std::uint64_t p,
                               const mpz_class& D, int n, int k0, const Ring& ring) {
    if (static_cast<int>(g.size()) != (k0 <= n ? n - k0 + 1 : 0))
        throw std::invalid_argument("mterms: wrong number of shifted recoveries");

    mpz_class pm(static_cast<unsigned long>(p));
    // residue mod p -> (count, degree, coeff)
    struct Slot {
        std::size_t count = 0;
        mpz_class degree;
        const RingElement* coeff = nullptr;
    };
    auto group = [&](const SparsePoly& poly) {
        std::map<mpz_class, Slot> m;
        for (const auto& t : poly.terms()) {
            auto& slot = m[mpz_class(t.exps[0] % pm)];
            ++slot.count;
            slot.degree = t.exps[0];
            slot.coeff = &t.coeff;
        }
        return m;
    };
    auto sub_groups = group(f_sub);
    std::vector<std::map<mpz_class, Slot>> g_groups;
    g_groups.reserve(g.size());
    for (const auto& gk : g) g_groups.push_back(group(gk));

    const int low_digits = std::min(k0 - 1, n);
    mpz_class low_bound;
    mpz_pow_ui(low_bound.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(low_digits));

    std::vector<MCandidate> out;
    for (const auto& [d_i, a_i] : f_mod.entries()) {
        mpz_class d(static_cast<unsigned long>(d_i));
        auto su = sub_groups.find(d);
        if (su == sub_groups.end() || su->second.count != 1 || *su->second.coeff != a_i) continue;
        const mpz_class& u = su->second.degree;

        std::vector<mpz_class> exps(n, 0);
        bool ok = true;
        mpz_class shift_sum = 0;  // sum e_k * mod(D^{k-1}, p) over k = k0..n
        for (int k = k0; k <= n && ok; ++k) {
            auto it = g_groups[k - k0].find(d);
            if (it == g_groups[k - k0].end() || it->second.count != 1 ||
                *it->second.coeff != a_i) {
                ok = false;
                break;
            }
            mpz_class diff = it->second.degree - u;  // should be p * e_k
            if (diff < 0 || diff % pm != 0) {
                ok = false;
                break;
            }
            mpz_class ek = diff / pm;
            if (ek >= D) {
                ok = false;
                break;
            }
            exps[k - 1] = ek;
            mpz_class dk;
            mpz_pow_ui(dk.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(k - 1));
            shift_sum += ek * (dk % pm);
        }
        if (!ok) continue;

        mpz_class B = u - shift_sum;
        if (B < 0 || B >= low_bound) continue;
        std::vector<mpz_class> digits =
            low_digits > 0 ? d_adic_expand(B, D, static_cast<std::size_t>(low_digits))
                           : std::vector<mpz_class>{};
        for (int i = 0; i < low_digits; ++i) exps[i] = digits[i];
        out.push_back(MCandidate{a_i, std::move(exps)});
    }
    return out;
}

SparsePoly mpoly_si(const SlpProgram& prog, const mpz_class& D, std::size_t T,
                    const Ring& ring, ProbeMeter* meter) {
    const int n = prog.nvars();
    SparsePoly h(n);
    if (T == 0) return h;

    Schedule sched = make_schedule(n, T, D);
    std::vector<std::uint64_t> primes = first_primes(sched.N);
    mpz_class Dn;
    mpz_pow_ui(Dn.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(n));
    const ExponentMap kmap = kron_map(n, D);

    // single-probe readout when a scheduled prime already exceeds D^n
    for (std::uint64_t pk : primes) {
        if (mpz_class(static_cast<unsigned long>(pk)) < Dn) continue;
        ProbeOracle oracle = kron_oracle(prog, ring, D, meter);
        CyclicPoly img = oracle.probe(pk);
        std::vector<Term> terms;
        for (const auto& [d, c] : img.entries())
            terms.push_back(Term{c, d_adic_expand(mpz_class(static_cast<unsigned long>(d)), D,
                                                  static_cast<std::size_t>(n))});
        return SparsePoly::from_terms(n, std::move(terms), ring);
    }

    ProbeOracle mod_oracle = kron_oracle(prog, ring, D, meter);
    std::vector<CyclicPoly> images;
    images.reserve(sched.N);
    for (std::size_t j = 0; j < sched.N; ++j) images.push_back(mod_oracle.probe(primes[j]));

    auto [j0, alpha] = ok_prime_select(images);
    while (alpha != 0) {
        if (sched.T == 0)
            throw InterpolationError("residual images nonzero with exhausted term bound "
                                     "(T underestimates the term count?)");
        std::uint64_t p = primes[j0];
        mpz_class pm(static_cast<unsigned long>(p));

        ProbeOracle plain = sub_oracle(prog, ring, D, p, std::nullopt, &h, meter);
        SparsePoly f_sub = ui_poly(plain, sched.T, plain.degree_bound(), ring);

        int k0 = find_k0(D, p);
        std::vector<SparsePoly> g;
        for (int k = k0; k <= n; ++k) {
            ProbeOracle shifted = sub_oracle(prog, ring, D, p, k, &h, meter);
            g.push_back(ui_poly(shifted, sched.T, shifted.degree_bound(), ring));
        }

        std::vector<Term> accepted;
        for (auto& cand : mterms(images[j0], f_sub, g, p, D, n, k0, ring)) {
            mpz_class packed = packed_exponent(cand.exps, kmap);
            if (term_test(cand.coeff, packed, images, primes, sched.N1 + sched.N2 - 1, sched.N2))
                accepted.push_back(Term{cand.coeff, std::move(cand.exps)});
        }
        if (accepted.empty())
            throw InterpolationError("no candidate passed the term test "
                                     "(T or D bound violated?)");

        SparsePoly s = SparsePoly::from_terms(n, std::move(accepted), ring);
        h = poly_add(h, s, ring);
        std::size_t found = s.term_count();
        sched = make_schedule(n, sched.T > found ? sched.T - found : 0, D);
        if (images.size() > sched.N) images.erase(images.begin() + sched.N, images.end());
        for (std::size_t j = 0; j < images.size(); ++j)
            images[j] = cyclic_sub(images[j], sparse_image(s, kmap, primes[j], ring), ring);
        std::tie(j0, alpha) = ok_prime_select(images);
    }
    return h;
}

}  // namespace slpi
