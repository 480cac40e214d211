#pragma once

#include "mirrorcut/geometry.hpp"
#include "mirrorcut/linalg.hpp"

// Block-level formulas for the quench output that avoid forming the full
// 4L x 4L product. Each one has a dense counterpart (build_transform +
// apply_transform) that the tests hold it against.

namespace mirrorcut {

/// Which 2x2 block of the output covariance: left-left (sigma_ij),
/// left-right (gamma_ij) or right-right (sigmabar_ij).
enum class OutputBlock { sigma, gamma, sigma_bar };

/// First-moment part of <n> for output mode n of `side` when input mode k
/// holds a coherent state of amplitude rho and phase phi (everything else in
/// vacuum): 2 rho^2 V_nk^2 (omega_n^2 cos^2 phi + Omega_k^2 sin^2 phi).
[[nodiscard]] double coherent_particles_closed_form(const CavityGeometry& geom, Side side, int n,
                                                    int k, double amplitude, double phase);

/// The same, averaged over phi: rho^2 V_nk^2 (omega_n^2 + Omega_k^2).
[[nodiscard]] double coherent_particles_phase_averaged(const CavityGeometry& geom, Side side,
                                                       int n, int k, double amplitude);

/// Second-moment (vacuum) part of <n> for output mode n of `side`.
[[nodiscard]] double vacuum_particles(const CavityGeometry& geom, const TruncationConfig& trunc,
                                      Side side, int n);

/// Output block (i, j) when only input mode k deviates from vacuum, with
/// single-mode covariance `input`.
[[nodiscard]] Block2 single_mode_output_blocks(const CavityGeometry& geom,
                                               const TruncationConfig& trunc, const Block2& input,
                                               int k, int i, int j, OutputBlock which);

/// Output block (i, j) when input modes k < k2 hold a joint two-mode state
/// with 4x4 covariance `input` (ordered k then k2), everything else vacuum.
[[nodiscard]] Block2 two_mode_output_blocks(const CavityGeometry& geom,
                                            const TruncationConfig& trunc, const Matrix4& input,
                                            int k, int k2, int i, int j, OutputBlock which);

/// Reduced covariance of (u_n, ubar_m) assembled from single-mode-input blocks.
[[nodiscard]] Matrix4 single_mode_pair_cov(const CavityGeometry& geom,
                                           const TruncationConfig& trunc, const Block2& input,
                                           int k, int n, int m);

/// Reduced covariance of (u_n, ubar_m) assembled from two-mode-input blocks.
[[nodiscard]] Matrix4 two_mode_pair_cov(const CavityGeometry& geom, const TruncationConfig& trunc,
                                        const Matrix4& input, int k, int k2, int n, int m);

struct LowestModeBlocks {
    Block2 sigma;
    Block2 gamma;
    Block2 sigma_bar;
};

/// sigma_11, gamma_11, sigmabar_11 for a squeezed thermal state in U_1, from
/// the explicit V-sum. gamma_11 is sigma_11 with the l = 2 summand negated,
/// which holds only for a midpoint mirror; other geometries throw
/// std::domain_error.
[[nodiscard]] LowestModeBlocks squeezed_thermal_sigma11(const CavityGeometry& geom,
                                                        const TruncationConfig& trunc,
                                                        double nbar, double squeezing,
                                                        double angle);

/// <n> of output mode n (total, both moments) for a squeezed thermal state in
/// U_1 and vacuum elsewhere.
[[nodiscard]] double squeezed_thermal_particles(const CavityGeometry& geom,
                                                const TruncationConfig& trunc, int n, double nbar,
                                                double squeezing, double angle,
                                                Side side = Side::left);

} // namespace mirrorcut
