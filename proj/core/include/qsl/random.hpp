#pragma once

// Seeded generators of random states and unitaries, used by property tests,
// benchmarks and the physicality sweeps.

#include <cstdint>
#include <random>

#include "qsl/state.hpp"

namespace qsl {

using Rng = std::mt19937_64;

/// Derives an independent stream seed for item `index` of a run seeded with
/// `seed` (splitmix64 finaliser). Used so parallel trials see the same
/// streams as sequential ones.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-random single-photon unitary.
JonesOperator random_jones(Rng& rng);

/// U1 (x) U2 with independent Haar factors.
Matrix4c random_local_unitary(Rng& rng);

/// Haar-random pure state.
PureKet random_pure_ket(Rng& rng);

/// A A^dag / Tr(A A^dag) with A a 4 x rank complex Ginibre matrix.
DensityMatrix random_density(Rng& rng, int rank = 4);

/// rho_1 (x) rho_2 with random single-photon mixed states.
DensityMatrix random_product_density(Rng& rng);

/// Convex mixture of `terms` random product states (separable by construction).
DensityMatrix random_separable_density(Rng& rng, int terms = 4);

}  // namespace qsl
