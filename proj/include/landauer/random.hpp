// random.hpp - seeded generators for random states, Hamiltonians and
// unitaries. Used by the randomized audit and by the property tests.

#pragma once

#include "landauer/qcore.hpp"

#include <cstdint>
#include <random>

namespace landauer::rnd {

using Engine = std::mt19937_64;

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
qcore::Matrix ginibre(Engine& eng, std::size_t rows, std::size_t cols);

/// Mixed state G G^dagger / tr(G G^dagger) with G of shape d x rank.
qcore::QuantumState random_state(Engine& eng, const qcore::FactorShape& shape, std::size_t rank = 0);

/// Haar-random pure state.
qcore::QuantumState random_pure(Engine& eng, const qcore::FactorShape& shape);

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
qcore::UnitaryOp random_unitary(Engine& eng, const qcore::FactorShape& shape);

/// GUE-like Hermitian matrix (G + G^dagger)/2.
qcore::Observable random_hamiltonian(Engine& eng, const qcore::FactorShape& shape,
                                     qcore::Unit unit = qcore::Unit::energy);

double uniform(Engine& eng, double lo, double hi);

}  // namespace landauer::rnd
