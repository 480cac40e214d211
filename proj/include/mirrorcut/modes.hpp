#pragma once

#include <iosfwd>
#include <span>
#include <utility>

#include "mirrorcut/geometry.hpp"
#include "mirrorcut/linalg.hpp"

namespace mirrorcut {

// Mode frequencies. All mode numbers are 1-based; zero or negative indices
// throw std::domain_error.

/// Omega_l = pi l / R of the undivided cavity.
[[nodiscard]] double input_frequency(const CavityGeometry& geom, int l);

/// omega_n = pi n / r (left) or pi n / (R - r) (right).
[[nodiscard]] double side_frequency(const CavityGeometry& geom, Side side, int n);

/// Exact test of Omega_l == omega_n on the requested side:
/// l p == n q (left), l (q - p) == n q (right).
[[nodiscard]] bool is_resonant(const CavityGeometry& geom, Side side, int n, int l);

/// Overlap factor V_nl (left) or Vbar_nl (right) of the instantaneous
/// mirror quench. alpha and beta are (Omega_l +/- omega_n) times this value.
[[nodiscard]] double v_coeff(const CavityGeometry& geom, Side side, int n, int l);

struct Bogoliubov {
    double alpha;
    double beta;
};

[[nodiscard]] Bogoliubov alpha_beta(const CavityGeometry& geom, Side side, int n, int l);

/// 2 V diag(omega_n, Omega_l): the (n, l) quadrature block of the transform.
[[nodiscard]] Block2 s_block(const CavityGeometry& geom, Side side, int n, int l);

/// Truncated quadrature transform x_out = S x_in.
///
/// Rows hold the output modes u_1..u_L then ubar_1..ubar_L, columns the
/// input modes U_1..U_2L, each mode occupying a (Q, P) pair. Every 2x2 block
/// is diagonal.
class SymplecticTransform {
public:
    SymplecticTransform(Matrix matrix, int cutoff);

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] int cutoff() const { return cutoff_; }
    [[nodiscard]] int dimension() const { return static_cast<int>(matrix_.rows()); }

    /// Block between 1-based output mode `out` and input mode `in`.
    [[nodiscard]] Block2 block(int out, int in) const;

    /// Row-major CSV dump, 17 significant digits, no header.
    void write_csv(std::ostream& os) const;

private:
    Matrix matrix_;
    int cutoff_;
};

[[nodiscard]] SymplecticTransform build_transform(const CavityGeometry& geom,
                                                  const TruncationConfig& trunc);

/// max |(S J S^T - J)_ij| over the quadrature rows and columns of the given
/// 1-based output modes. Zero for an exactly symplectic transform.
[[nodiscard]] double symplectic_defect(const SymplecticTransform& transform,
                                       std::span<const int> output_modes);

} // namespace mirrorcut
