#include "mirrorcut/sweeps.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mirrorcut/closed_form.hpp"
#include "mirrorcut/modes.hpp"
#include "mirrorcut/parallel.hpp"

namespace mirrorcut {

namespace {

using std::numbers::pi;

constexpr double kFig6Squeezing = 0.75;
constexpr double kFig6Angle = pi;

Field in(std::string name, double v) { return {std::move(name), v}; }
Field in(std::string name, int v) { return {std::move(name), static_cast<std::int64_t>(v)}; }
Field in(std::string name, std::string v) { return {std::move(name), std::move(v)}; }

void require_input_mode(const TruncationConfig& trunc, int k) {
    if (k < 1 || k > trunc.input_modes()) {
        throw std::invalid_argument("input mode k=" + std::to_string(k) + " outside 1.." +
                                    std::to_string(trunc.input_modes()));
    }
}

void require_output_count(const TruncationConfig& trunc, int count, const char* what) {
    if (count < 1 || count > trunc.cutoff()) {
        throw std::invalid_argument(std::string(what) + "=" + std::to_string(count) +
                                    " must lie in 1.." + std::to_string(trunc.cutoff()));
    }
}

Matrix4 two_mode_input(TwoModeInput input, double squeezing, double angle) {
    switch (input) {
    case TwoModeInput::tms:
        return two_mode_squeezed_cov(squeezing, angle);
    case TwoModeInput::stripped: {
        Matrix4 m = two_mode_squeezed_cov(squeezing, angle);
        m.block<2, 2>(0, 2).setZero();
        m.block<2, 2>(2, 0).setZero();
        return m;
    }
    case TwoModeInput::vacuum:
        break;
    }
    return Matrix4::Identity();
}

// Grid scan for the first positive value, then bisection against its
// predecessor. `values` holds f on `grid`.
template <class Fn>
std::optional<double> refine_threshold(Fn&& f, std::span<const double> grid,
                                       std::span<const double> values, double tol) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (values[i] > 0.0) {
            if (i == 0) return grid[0];
            double lo = grid[i - 1];
            double hi = grid[i];
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? hi : lo) = mid;
            }
            return hi;
        }
    }
    return std::nullopt;
}

double squeezed_vacuum_param(double initial_particles) {
    return 0.5 * std::acosh(2.0 * initial_particles + 1.0);
}

} // namespace

int sweep_threads(int requested) {
    int threads = requested > 0 ? requested
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("MIRRORCUT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            threads = std::min(threads, static_cast<int>(cap));
        }
    }
    return threads;
}

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
    out.back() = stop;
    return out;
}

std::vector<SweepRecord> coherent_phase_sweep(const CavityGeometry& geom,
                                              const TruncationConfig& trunc, int k,
                                              std::span<const double> phases, int n_max,
                                              const SweepOptions& opts) {
    require_input_mode(trunc, k);
    require_output_count(trunc, n_max, "n_max");
    const auto per_phase = static_cast<std::size_t>(n_max);
    std::vector<SweepRecord> records(phases.size() * per_phase);
    parallel_for(records.size(), opts.threads, [&](std::size_t idx) {
        const double phi = phases[idx / per_phase];
        const int n = static_cast<int>(idx % per_phase) + 1;
        // Unit amplitude: the initial particle number is 1/2.
        const double left = coherent_particles_closed_form(geom, Side::left, n, k, 1.0, phi) / 0.5;
        const double right =
            coherent_particles_closed_form(geom, Side::right, n, k, 1.0, phi) / 0.5;
        records[idx] = {"fig2",
                        {in("phi", phi), in("n", n), in("k", k), in("lambda", trunc.cutoff())},
                        {in("left", left), in("right", right), in("ratio", left + right)}};
    });
    return records;
}

std::vector<SweepRecord> phase_averaged_coherent(const CavityGeometry& geom,
                                                 const TruncationConfig& trunc, int k, int n_max) {
    require_input_mode(trunc, k);
    require_output_count(trunc, n_max, "n_max");
    std::vector<SweepRecord> records;
    double cumulative = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double left = coherent_particles_phase_averaged(geom, Side::left, n, k, 1.0) / 0.5;
        const double right = coherent_particles_phase_averaged(geom, Side::right, n, k, 1.0) / 0.5;
        const double ratio = left + right;
        cumulative += 100.0 * ratio;
        const double vac = vacuum_particles(geom, trunc, Side::left, n) +
                           vacuum_particles(geom, trunc, Side::right, n);
        records.push_back({"fig3",
                           {in("n", n), in("k", k), in("lambda", trunc.cutoff())},
                           {in("left_ratio", left), in("right_ratio", right), in("ratio", ratio),
                            in("percent", 100.0 * ratio), in("cumulative_percent", cumulative),
                            in("vacuum_particles", vac)}});
    }
    return records;
}

double lowest_pair_negativity(const CavityGeometry& geom, const TruncationConfig& trunc,
                              const Block2& input, int k, LogBase base) {
    return log_negativity(single_mode_pair_cov(geom, trunc, input, k, 1, 1), base);
}

std::vector<SweepRecord> negativity_vs_particles(const CavityGeometry& geom,
                                                 const TruncationConfig& trunc,
                                                 std::span<const double> initial_particles,
                                                 const SweepOptions& opts) {
    for (double n0 : initial_particles) {
        if (!(n0 >= 0.0)) throw std::invalid_argument("initial particle number must be >= 0");
    }
    struct Family {
        const char* name;
        double angle;
    };
    const Family families[] = {
        {"thermal", 0.0}, {"coherent", 0.0}, {"squeezed", 0.0}, {"squeezed", pi / 2}};
    const std::size_t per_family = initial_particles.size();
    std::vector<SweepRecord> records(4 * per_family);
    parallel_for(records.size(), opts.threads, [&](std::size_t idx) {
        const Family& fam = families[idx / per_family];
        const double n0 = initial_particles[idx % per_family];
        const std::string name = fam.name;
        double parameter = 0.0;
        double negativity = 0.0;
        double particles = 0.0;
        if (name == "thermal") {
            parameter = n0;
            negativity = lowest_pair_negativity(geom, trunc, squeezed_thermal_cov(n0, 0.0, 0.0), 1,
                                                opts.base);
            particles = squeezed_thermal_particles(geom, trunc, 1, n0, 0.0, 0.0);
        } else if (name == "coherent") {
            parameter = std::sqrt(2.0 * n0);
            negativity = lowest_pair_negativity(geom, trunc, Block2::Identity(), 1, opts.base);
            particles = vacuum_particles(geom, trunc, Side::left, 1) +
                        coherent_particles_closed_form(geom, Side::left, 1, 1, parameter, 0.0);
        } else {
            parameter = squeezed_vacuum_param(n0);
            negativity = lowest_pair_negativity(
                geom, trunc, squeezed_thermal_cov(0.0, parameter, fam.angle), 1, opts.base);
            particles = squeezed_thermal_particles(geom, trunc, 1, 0.0, parameter, fam.angle);
        }
        records[idx] = {"fig4",
                        {in("family", name), in("theta", fam.angle),
                         in("initial_particles", n0), in("parameter", parameter)},
                        {in("negativity", negativity), in("particles_u1", particles)}};
    });
    return records;
}

std::optional<double> squeezing_threshold(const CavityGeometry& geom,
                                          const TruncationConfig& trunc, double nbar,
                                          std::span<const double> s_grid, double angle, double tol,
                                          LogBase base) {
    auto f = [&](double s) {
        return lowest_pair_negativity(geom, trunc, squeezed_thermal_cov(nbar, s, angle), 1, base);
    };
    std::vector<double> values;
    values.reserve(s_grid.size());
    for (double s : s_grid) values.push_back(f(s));
    return refine_threshold(f, s_grid, values, tol);
}

TemperatureScan squeezing_temperature_scan(const CavityGeometry& geom,
                                           const TruncationConfig& trunc,
                                           std::span<const double> nbars,
                                           std::span<const double> s_grid, double angle,
                                           const SweepOptions& opts) {
    for (double nbar : nbars) {
        if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
    }
    if (s_grid.empty()) throw std::invalid_argument("s grid is empty");
    const std::size_t per_nbar = s_grid.size();
    std::vector<double> values(nbars.size() * per_nbar);
    parallel_for(values.size(), opts.threads, [&](std::size_t idx) {
        values[idx] = lowest_pair_negativity(
            geom, trunc, squeezed_thermal_cov(nbars[idx / per_nbar], s_grid[idx % per_nbar], angle),
            1, opts.base);
    });

    TemperatureScan scan;
    scan.records.reserve(values.size());
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        scan.records.push_back({"fig5",
                                {in("nbar", nbars[idx / per_nbar]), in("theta", angle),
                                 in("s", s_grid[idx % per_nbar])},
                                {in("negativity", values[idx])}});
    }

    std::vector<SweepRecord> thresholds(nbars.size());
    parallel_for(nbars.size(), opts.threads, [&](std::size_t i) {
        const double nbar = nbars[i];
        auto f = [&](double s) {
            return lowest_pair_negativity(geom, trunc, squeezed_thermal_cov(nbar, s, angle), 1,
                                          opts.base);
        };
        const std::span<const double> row(values.data() + i * per_nbar, per_nbar);
        const std::optional<double> s_star = refine_threshold(f, s_grid, row, 1e-4);
        thresholds[i] = {"fig5-threshold",
                         {in("nbar", nbar), in("theta", angle)},
                         {in("found", s_star ? 1 : 0), in("threshold_s", s_star.value_or(s_grid.back()))}};
    });
    scan.thresholds = std::move(thresholds);
    return scan;
}

double thermal_death_point(const CavityGeometry& geom, const TruncationConfig& trunc, double lo,
                           double hi, double tol) {
    auto f = [&](double nbar) {
        return lowest_pair_negativity(geom, trunc, squeezed_thermal_cov(nbar, 0.0, 0.0));
    };
    if (!(lo < hi) || !(f(lo) > 0.0) || f(hi) != 0.0) {
        throw std::invalid_argument("thermal bracket must have E_N(lo) > 0 and E_N(hi) == 0");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

HeatmapGrid entanglement_distribution(const CavityGeometry& geom, const TruncationConfig& trunc,
                                      TwoModeInput input, double squeezing, double angle,
                                      int size, int k, int k2, const SweepOptions& opts) {
    require_output_count(trunc, size, "M");
    require_input_mode(trunc, k);
    require_input_mode(trunc, k2);
    if (k >= k2) throw std::invalid_argument("two-mode input needs k < k2");

    const Matrix4 cov_in = two_mode_input(input, squeezing, angle);
    HeatmapGrid grid;
    grid.input = input;
    grid.squeezing = squeezing;
    grid.angle = angle;
    grid.k = k;
    grid.k2 = k2;
    grid.cutoff = trunc.cutoff();
    grid.values = Matrix::Zero(size, size);
    const auto cells = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
    parallel_for(cells, opts.threads, [&](std::size_t idx) {
        const int n = static_cast<int>(idx / static_cast<std::size_t>(size)) + 1;
        const int m = static_cast<int>(idx % static_cast<std::size_t>(size)) + 1;
        grid.values(n - 1, m - 1) =
            log_negativity(two_mode_pair_cov(geom, trunc, cov_in, k, k2, n, m), opts.base);
    });
    return grid;
}

std::string_view to_string(Observable observable) {
    switch (observable) {
    case Observable::vacuum_en11:
        return "vacuum-en11";
    case Observable::vacuum_en12:
        return "vacuum-en12";
    case Observable::vacuum_n1:
        return "vacuum-n1";
    case Observable::tms_en11:
        return "tms-en11";
    case Observable::coherent_n1:
        return "coherent-n1";
    case Observable::total_particles:
        return "total-particles";
    case Observable::symplectic_defect:
        break;
    }
    return "symplectic-defect";
}

std::optional<Observable> parse_observable(std::string_view name) {
    for (Observable o : {Observable::vacuum_en11, Observable::vacuum_en12, Observable::vacuum_n1,
                         Observable::tms_en11, Observable::coherent_n1,
                         Observable::total_particles, Observable::symplectic_defect}) {
        if (to_string(o) == name) return o;
    }
    return std::nullopt;
}

namespace {

double observe(const CavityGeometry& geom, const TruncationConfig& trunc, Observable observable,
               LogBase base) {
    switch (observable) {
    case Observable::vacuum_en11:
        return lowest_pair_negativity(geom, trunc, Block2::Identity(), 1, base);
    case Observable::vacuum_en12:
        return log_negativity(single_mode_pair_cov(geom, trunc, Block2::Identity(), 1, 1, 2), base);
    case Observable::vacuum_n1:
        return vacuum_particles(geom, trunc, Side::left, 1);
    case Observable::tms_en11:
        return log_negativity(
            two_mode_pair_cov(geom, trunc, two_mode_squeezed_cov(kFig6Squeezing, kFig6Angle), 1, 2,
                              1, 1),
            base);
    case Observable::coherent_n1:
        return vacuum_particles(geom, trunc, Side::left, 1) +
               coherent_particles_closed_form(geom, Side::left, 1, 1, 1.0, 0.0);
    case Observable::total_particles: {
        double total = 0.0;
        for (Side side : {Side::left, Side::right}) {
            for (int n = 1; n <= trunc.cutoff(); ++n) total += vacuum_particles(geom, trunc, side, n);
        }
        return total;
    }
    case Observable::symplectic_defect:
        break;
    }
    const int modes[] = {1, trunc.cutoff() + 1};
    return symplectic_defect(build_transform(geom, trunc), modes);
}

} // namespace

std::vector<SweepRecord> convergence_study(const CavityGeometry& geom,
                                           std::span<const int> cutoffs, Observable observable,
                                           const SweepOptions& opts) {
    for (std::size_t i = 1; i < cutoffs.size(); ++i) {
        if (cutoffs[i] <= cutoffs[i - 1]) {
            throw std::invalid_argument("cutoff list must be strictly ascending");
        }
    }
    if (observable == Observable::vacuum_en12 && !cutoffs.empty() && cutoffs.front() < 2) {
        throw std::invalid_argument("vacuum-en12 needs cutoff >= 2");
    }
    std::vector<double> values(cutoffs.size());
    parallel_for(cutoffs.size(), opts.threads, [&](std::size_t i) {
        values[i] = observe(geom, TruncationConfig(cutoffs[i]), observable, opts.base);
    });
    std::vector<SweepRecord> records;
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        const double delta = i == 0 ? 0.0 : std::abs(values[i] - values[i - 1]);
        records.push_back({"converge",
                           {in("observable", std::string(to_string(observable))),
                            in("lambda", cutoffs[i])},
                           {in("value", values[i]), in("delta", delta)}});
    }
    return records;
}

std::string_view to_string(SweepParameter parameter) {
    switch (parameter) {
    case SweepParameter::nbar:
        return "nbar";
    case SweepParameter::squeezing:
        return "s";
    case SweepParameter::angle:
        return "theta";
    case SweepParameter::amplitude:
        return "rho";
    case SweepParameter::phase:
        break;
    }
    return "phi";
}

std::vector<SweepRecord> single_mode_sweep(const CavityGeometry& geom,
                                           const TruncationConfig& trunc, SingleModeFamily family,
                                           const SingleModeParams& base, SweepParameter parameter,
                                           std::span<const double> values, int n_max,
                                           const SweepOptions& opts) {
    require_input_mode(trunc, base.k);
    require_output_count(trunc, n_max, "n_max");
    const SymplecticTransform transform = build_transform(geom, trunc);
    const GaussianState empty = vacuum(trunc.input_modes());
    const std::string family_name =
        family == SingleModeFamily::coherent ? "coherent" : "squeezed-thermal";

    std::vector<SweepRecord> records(values.size());
    parallel_for(values.size(), opts.threads, [&](std::size_t idx) {
        SingleModeParams p = base;
        const double v = values[idx];
        switch (parameter) {
        case SweepParameter::nbar: p.nbar = v; break;
        case SweepParameter::squeezing: p.squeezing = v; break;
        case SweepParameter::angle: p.angle = v; break;
        case SweepParameter::amplitude: p.amplitude = v; break;
        case SweepParameter::phase: p.phase = v; break;
        }
        const GaussianState input =
            family == SingleModeFamily::coherent
                ? set_coherent(empty, p.k, p.amplitude, p.phase)
                : set_squeezed_thermal(empty, p.k, p.nbar, p.squeezing, p.angle);
        const GaussianState out = apply_transform(input, transform);
        const GaussianState pair = reduce(out, {output_mode_index(Side::left, 1, trunc),
                                                output_mode_index(Side::right, 1, trunc)});

        SweepRecord rec{"sweep",
                        {in("family", family_name), in("parameter", std::string(to_string(parameter))),
                         in("value", v), in("k", p.k), in("lambda", trunc.cutoff())},
                        {in("negativity", log_negativity(pair, opts.base))}};
        for (Side side : {Side::left, Side::right}) {
            const std::string prefix = side == Side::left ? "n_left_" : "n_right_";
            for (int n = 1; n <= n_max; ++n) {
                rec.outputs.push_back(in(prefix + std::to_string(n),
                                         mean_particle_number(out, output_mode_index(side, n, trunc))));
            }
        }
        rec.outputs.push_back(in("pair_deficit", validate(pair).deficit));
        records[idx] = std::move(rec);
    });
    return records;
}

} // namespace mirrorcut
