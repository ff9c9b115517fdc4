// Standard operators used throughout the checks.

#pragma once

#include <cstddef>

#include "gqm/linalg.hpp"

namespace gqm::ops {

HermitianOperator identity(std::size_t dim);
HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

// Truncated harmonic oscillator (hbar = 1, unit mass and frequency). The
// lowering operator is a|k> = sqrt(k)|k-1> on levels 0..dim-1, so
// [q, p] = i(I - dim |dim-1><dim-1|): the canonical relation fails only on
// the top level.
Eigen::MatrixXcd lowering(std::size_t dim);
HermitianOperator position(std::size_t dim);
HermitianOperator momentum(std::size_t dim);

}  // namespace gqm::ops
