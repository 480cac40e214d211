#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mirrorcut/linalg.hpp"
#include "mirrorcut/modes.hpp"

namespace mirrorcut {

/// Multimode Gaussian state: first moments and covariance matrix in the
/// interleaved (Q1, P1, Q2, P2, ...) ordering.
///
/// Covariances follow the anticommutator convention with [Q, P] = i, so the
/// vacuum has cov = identity. Mode indices in the free functions below are
/// 1-based. Construction checks only dimensions and finiteness; physicality
/// is the job of validate().
class GaussianState {
public:
    GaussianState(Vector first_moments, Matrix cov);

    [[nodiscard]] int n_modes() const { return static_cast<int>(first_moments_.size() / 2); }
    [[nodiscard]] const Vector& first_moments() const { return first_moments_; }
    [[nodiscard]] const Matrix& cov() const { return cov_; }

    [[nodiscard]] Block2 cov_block(int i, int j) const;
    [[nodiscard]] Eigen::Vector2d mode_moments(int i) const;

    friend bool operator==(const GaussianState& a, const GaussianState& b) {
        return a.first_moments_ == b.first_moments_ && a.cov_ == b.cov_;
    }

private:
    Vector first_moments_;
    Matrix cov_;
};

struct ModePair {
    int a;
    int b;
};

[[nodiscard]] GaussianState vacuum(int n_modes);

/// Displaces mode k so that <Q_k> = rho cos(phi), <P_k> = rho sin(phi).
/// The covariance is left as is; on a vacuum mode this yields a coherent state.
[[nodiscard]] GaussianState set_coherent(const GaussianState& state, int k, double amplitude,
                                         double phase);

/// Single-mode squeezed thermal covariance with mean thermal occupation nbar,
/// squeezing s and squeezing angle theta.
[[nodiscard]] Block2 squeezed_thermal_cov(double nbar, double squeezing, double angle);

/// Two-mode squeezed vacuum covariance: cosh(2s) I on the diagonal,
/// -|sinh 2s| [[cos t, sin t], [sin t, -cos t]] off the diagonal.
[[nodiscard]] Matrix4 two_mode_squeezed_cov(double squeezing, double angle);

/// Replaces mode k by a squeezed thermal state (zero mean, no correlations to
/// the other modes).
[[nodiscard]] GaussianState set_squeezed_thermal(const GaussianState& state, int k, double nbar,
                                                 double squeezing, double angle);

/// Replaces modes k < k2 by a two-mode squeezed vacuum.
[[nodiscard]] GaussianState set_two_mode_squeezed(const GaussianState& state, int k, int k2,
                                                  double squeezing, double angle);

/// Zeroes the cross-covariance blocks between modes k and k2, leaving the
/// product of the two marginals.
[[nodiscard]] GaussianState strip_correlations(const GaussianState& state, int k, int k2);

/// x -> S x, cov -> S cov S^T. The state must have 2L modes for an L-cutoff
/// transform; the result is ordered u_1..u_L, ubar_1..ubar_L.
[[nodiscard]] GaussianState apply_transform(const GaussianState& state,
                                            const SymplecticTransform& transform);

/// Two-mode marginal on (pair.a, pair.b), in that order.
[[nodiscard]] GaussianState reduce(const GaussianState& state, ModePair pair);

/// 1/4 (Tr sigma_nn - 2) + 1/2 (<q_n>^2 + <p_n>^2).
[[nodiscard]] double mean_particle_number(const GaussianState& state, int mode);

enum class LogBase { e, two, ten };

/// Counts discriminants that were clamped to zero while computing the
/// logarithmic negativity.
struct NegativityDiagnostics {
    int clamped_discriminants = 0;
    int nu_above_one = 0;
};

/// Logarithmic negativity of a two-mode covariance matrix from its 2x2 block
/// determinants.
///
/// Throws std::domain_error when the discriminant is negative beyond the
/// numerical tolerance, which only happens for unphysical input.
[[nodiscard]] double log_negativity(const Matrix4& cov, LogBase base = LogBase::e,
                                    NegativityDiagnostics* diagnostics = nullptr);

/// As above for a two-mode state. Throws std::invalid_argument for any other
/// mode count.
[[nodiscard]] double log_negativity(const GaussianState& state, LogBase base = LogBase::e,
                                    NegativityDiagnostics* diagnostics = nullptr);

/// Ascending symplectic spectrum (n_modes values).
[[nodiscard]] std::vector<double> symplectic_eigenvalues(const GaussianState& state);

struct ValidationReport {
    bool ok = true;
    double max_asymmetry = 0.0;
    double min_symplectic_eigenvalue = 1.0;
    /// max(0, 1 - min symplectic eigenvalue).
    double deficit = 0.0;
    std::string message;
};

inline constexpr double kPhysicalitySlack = 1e-9;

[[nodiscard]] ValidationReport validate(const GaussianState& state,
                                        double slack = kPhysicalitySlack);

/// {"n_modes": N, "first_moments": [...], "cov": [row-major ...]}
[[nodiscard]] std::string to_json(const GaussianState& state);
[[nodiscard]] GaussianState state_from_json(std::string_view text);

} // namespace mirrorcut
