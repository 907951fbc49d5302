// operators.hpp - small fixed operators and kets used by the scenarios.

#pragma once

#include "landauer/qcore.hpp"

#include <cstddef>

namespace landauer::ops {

using qcore::Matrix;
using qcore::Vector;

Matrix identity(std::size_t d);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();  // diag(+1, -1)

/// |0><1| and |1><0|.
Matrix sigma_minus();
Matrix sigma_plus();

/// Qutrit ladder sum |0><1| + |1><0| + |1><2| + |2><1|.
Matrix qutrit_x();
/// Spin-one z component diag(+1, 0, -1), ordered like sigma_z.
Matrix qutrit_z();

/// Truncated bosonic ladder operators on `n` Fock levels.
Matrix annihilation(std::size_t n);
Matrix creation(std::size_t n);
Matrix number(std::size_t n);

/// |i><j| in dimension d.
Matrix outer(std::size_t d, std::size_t i, std::size_t j);

/// Computational basis ket |digits> on a register of equal-dimension factors.
Vector basis_ket(std::size_t d, std::size_t index);

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
Vector ghz(std::size_t n_qubits);
/// Equal superposition of single-excitation kets on n qubits.
Vector w_state(std::size_t n_qubits);

}  // namespace landauer::ops
