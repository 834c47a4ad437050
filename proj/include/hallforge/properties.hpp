#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallforge/cohm.hpp"
#include "hallforge/random.hpp"

namespace hallforge {

struct PoolQuiver {
    std::string name;
    Quiver quiver;
};

// L0, L1 (tau = +-1), L1 symplectic, L2 type B, affine A1 (tau = +-1),
// A2 orthogonal and symplectic.
std::vector<PoolQuiver> property_pool();

// Random sigma-invariant vector, even at symplectic fixed nodes, each
// component <= bound.
DimVec random_selfdual(const Quiver& q, Lcg& rng, int bound);

// Each suite draws `instances` cases from the pool with Lcg(seed) and stops
// at the first failure.
CheckReport check_associativity(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_supercommutativity(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_module_axiom(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_unit_laws(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_s_antihomomorphism(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_module_relations(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
// Weight of f * g against w(f) + w(g) minus the twist exponent, and the
// super parity rule on sigma-symmetric quivers.
CheckReport check_parity(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
// Euler form identities: bilinearity, chi(d,d') = chi(s d', s d), E(d+d'),
// H additivity and the parity of E(H(d)+e).
CheckReport check_euler_identities(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_witt_preservation(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
// Coefficients of dt_series / ori_dt_series against slice dimensions.
CheckReport check_hilbert_coha(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);
CheckReport check_hilbert_cohm(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances);

}  // namespace hallforge
