#pragma once

#include <Eigen/Core>

namespace mirrorcut {

// Dense row-major storage throughout; matrices are at most a few hundred
// modes wide.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Block2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

/// Block-diagonal J = diag([[0,1],[-1,0]], ...) for n_modes modes.
[[nodiscard]] Matrix symplectic_form(int n_modes);

} // namespace mirrorcut
