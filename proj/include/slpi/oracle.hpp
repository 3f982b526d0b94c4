#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slpi/poly.hpp"
#include "slpi/ring.hpp"
#include "slpi/slp.hpp"

namespace slpi {

struct InstanceSpec {
    int nvars = 1;
    mpz_class degree_bound{2};  // D, exponents packed base D; total degree < D
    std::size_t term_bound = 1; // T
    RingSpec ring;
    std::uint64_t seed = 0;
    std::uint64_t coeff_range = 100;  // integer coefficients in [-range, range] \ {0}
};

// Symbolic expansion of the program; aborts if any register exceeds
// `max_terms` terms.
SparsePoly dense_expand(const SlpProgram& prog, const Ring& ring,
                        std::size_t max_terms = 1000000);

// A program whose dense_expand equals f; powers by repeated squaring.
SlpProgram sparse_to_slp(const SparsePoly& f);

// Deterministic in spec.seed; returns ground truth and its circuit.
std::pair<SparsePoly, SlpProgram> random_instance(const InstanceSpec& spec);

struct CollisionCensus {
    std::size_t uncollided = 0;
    std::size_t collided = 0;              // the count of collision terms
    std::vector<std::size_t> block_sizes;  // sizes >= 2, sorted
};

// Groups f's terms by packed degree (base D) mod p.
CollisionCensus collision_census(const SparsePoly& f, const mpz_class& D, std::uint64_t p);

// True iff the term with exponent vector `exps` shares its packed degree
// mod p with another term of f.
bool term_collides(const SparsePoly& f, std::size_t term_index, const mpz_class& D,
                   std::uint64_t p);

}  // namespace slpi
