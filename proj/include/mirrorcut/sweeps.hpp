#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorcut/gaussian.hpp"
#include "mirrorcut/geometry.hpp"
#include "mirrorcut/records.hpp"

// Sweep drivers behind the figure data. Every driver returns records in
// sweep order; parallel evaluation (SweepOptions::threads) does not change a
// single bit of the output.

namespace mirrorcut {

struct SweepOptions {
    LogBase base = LogBase::e;
    int threads = 1;
};

/// count evenly spaced points from start to stop inclusive (count == 1 gives
/// {start}).
[[nodiscard]] std::vector<double> linspace(double start, double stop, int count);

/// Particle gain from a coherent state in input mode k, per output mode
/// n = 1..n_max and phase. Outputs are first-moment <n> divided by the
/// initial rho^2 / 2, so they do not depend on rho.
///
/// Columns: phi, n, k, lambda | left, right, ratio (= left + right).
[[nodiscard]] std::vector<SweepRecord> coherent_phase_sweep(const CavityGeometry& geom,
                                                            const TruncationConfig& trunc, int k,
                                                            std::span<const double> phases,
                                                            int n_max = 3,
                                                            const SweepOptions& opts = {});

/// Phase-averaged version of the above, one record per output mode. The
/// vacuum (second-moment) contribution is reported on its own, in particles
/// summed over both sides.
///
/// Columns: n, k, lambda | left_ratio, right_ratio, ratio, percent,
/// cumulative_percent, vacuum_particles.
[[nodiscard]] std::vector<SweepRecord> phase_averaged_coherent(const CavityGeometry& geom,
                                                               const TruncationConfig& trunc,
                                                               int k, int n_max);

/// E_N(u_1, ubar_1) for an arbitrary single-mode covariance in input mode k.
[[nodiscard]] double lowest_pair_negativity(const CavityGeometry& geom,
                                            const TruncationConfig& trunc, const Block2& input,
                                            int k = 1, LogBase base = LogBase::e);

/// Single-mode families against their initial particle number: thermal,
/// coherent (phi = 0), squeezed vacuum at theta = 0 and theta = pi/2.
///
/// Columns: family, theta, initial_particles, parameter | negativity,
/// particles_u1.
[[nodiscard]] std::vector<SweepRecord> negativity_vs_particles(
    const CavityGeometry& geom, const TruncationConfig& trunc,
    std::span<const double> initial_particles, const SweepOptions& opts = {});

struct TemperatureScan {
    /// Columns: nbar, theta, s | negativity.
    std::vector<SweepRecord> records;
    /// Columns: nbar, theta | found, threshold_s. threshold_s is the grid
    /// stop when no positive point exists.
    std::vector<SweepRecord> thresholds;
};

[[nodiscard]] TemperatureScan squeezing_temperature_scan(const CavityGeometry& geom,
                                                         const TruncationConfig& trunc,
                                                         std::span<const double> nbars,
                                                         std::span<const double> s_grid,
                                                         double angle,
                                                         const SweepOptions& opts = {});

/// Smallest s on the grid with E_N(u_1, ubar_1) > 0, refined by bisection
/// against the preceding grid point down to `tol`. The returned s has
/// E_N > 0. nullopt when no grid point is positive.
[[nodiscard]] std::optional<double> squeezing_threshold(const CavityGeometry& geom,
                                                        const TruncationConfig& trunc,
                                                        double nbar,
                                                        std::span<const double> s_grid,
                                                        double angle, double tol = 1e-4,
                                                        LogBase base = LogBase::e);

/// Thermal occupation at which E_N(u_1, ubar_1) of an unsqueezed thermal
/// input in U_1 reaches zero, bisected on [lo, hi] to width `tol`.
/// Requires E_N(lo) > 0 and E_N(hi) == 0.
[[nodiscard]] double thermal_death_point(const CavityGeometry& geom,
                                         const TruncationConfig& trunc, double lo, double hi,
                                         double tol);

/// Heatmap of E_N(u_n, ubar_m), n, m = 1..size, for vacuum, a two-mode
/// squeezed vacuum in (U_k, U_k2), or its correlation-stripped marginals.
[[nodiscard]] HeatmapGrid entanglement_distribution(const CavityGeometry& geom,
                                                    const TruncationConfig& trunc,
                                                    TwoModeInput input, double squeezing,
                                                    double angle, int size, int k = 1, int k2 = 2,
                                                    const SweepOptions& opts = {});

enum class Observable {
    vacuum_en11,
    vacuum_en12,
    vacuum_n1,
    tms_en11,
    coherent_n1,
    total_particles,
    symplectic_defect,
};

[[nodiscard]] std::string_view to_string(Observable observable);
[[nodiscard]] std::optional<Observable> parse_observable(std::string_view name);

/// Value of the observable at each cutoff. delta is |f(L_i) - f(L_{i-1})|,
/// zero on the first rung.
///
/// Columns: observable, lambda | value, delta.
[[nodiscard]] std::vector<SweepRecord> convergence_study(const CavityGeometry& geom,
                                                         std::span<const int> cutoffs,
                                                         Observable observable,
                                                         const SweepOptions& opts = {});

enum class SingleModeFamily { coherent, squeezed_thermal };
enum class SweepParameter { nbar, squeezing, angle, amplitude, phase };

struct SingleModeParams {
    int k = 1;
    double amplitude = 1.0;
    double phase = 0.0;
    double nbar = 0.0;
    double squeezing = 0.0;
    double angle = 0.0;
};

[[nodiscard]] std::string_view to_string(SweepParameter parameter);

/// General single-mode sweep through the dense pipeline: builds S once, then
/// for each value prepares the input, transforms the full state and reads
/// off observables.
///
/// Columns: family, parameter, value, k, lambda | negativity, n_left_1..,
/// n_right_1.., pair_deficit.
[[nodiscard]] std::vector<SweepRecord> single_mode_sweep(const CavityGeometry& geom,
                                                         const TruncationConfig& trunc,
                                                         SingleModeFamily family,
                                                         const SingleModeParams& base,
                                                         SweepParameter parameter,
                                                         std::span<const double> values,
                                                         int n_max, const SweepOptions& opts = {});

} // namespace mirrorcut
