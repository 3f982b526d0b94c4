#pragma once

#include <cstdint>
#include <vector>

#include "slpi/poly.hpp"
#include "slpi/ring.hpp"
#include "slpi/slp.hpp"
#include "slpi/uni_interp.hpp"

namespace slpi {

struct MCandidate {
    RingElement coeff;
    std::vector<mpz_class> exps;  // length n, digits in [0, D)
};

// Kronecker-packed interpolation: univariate recovery at degree bound D^n,
// then D-adic unpacking of every exponent.
SparsePoly mpoly_kron(const SlpProgram& prog, const mpz_class& D, std::size_t T,
                      const Ring& ring, ProbeMeter* meter = nullptr);

// Unique k0 >= 1 with D^{k0-2} < p <= D^{k0-1}; may exceed n.
int find_k0(const mpz_class& D, std::uint64_t p);

// Exponent-vector recovery from the shifted substitutions: f_mod is the
// image at p, f_sub the exactly recovered f_{(D,p)}, g[k - k0] the exactly
// recovered f_{(D,p,k)} for k = k0..n.
std::vector<MCandidate> mterms(const CyclicPoly& f_mod, const SparsePoly& f_sub,
                               const std::vector<SparsePoly>& g, std::uint64_t p,
                               const mpz_class& D, int n, int k0, const Ring& ring);

// Multivariate interpolation via the shifted Kronecker-type substitution.
SparsePoly mpoly_si(const SlpProgram& prog, const mpz_class& D, std::size_t T,
                    const Ring& ring, ProbeMeter* meter = nullptr);

}  // namespace slpi
