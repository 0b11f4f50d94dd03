#pragma once

#include <array>

#include <Eigen/Dense>

namespace dephase {

inline constexpr int kMaxJacobiSweeps = 100;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending. Throws EigenNonConvergence if the off-diagonal norm does not
/// fall below 1e-13 * max(1, ||A||_F) within kMaxJacobiSweeps sweeps.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Eigenvalues of a 4x4 Hermitian matrix, ascending, via its real 8x8
/// embedding [[Re, -Im], [Im, Re]] (every eigenvalue appears twice there).
std::array<double, 4> hermitian_eigenvalues(const Eigen::Matrix4cd& h);

}  // namespace dephase
