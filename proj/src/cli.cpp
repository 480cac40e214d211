#include "mirrorcut/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mirrorcut/config.hpp"
#include "mirrorcut/format.hpp"
#include "mirrorcut/parallel.hpp"
#include "mirrorcut/sweeps.hpp"

namespace mirrorcut::cli {

namespace {

// Angle flags arrive as text ("pi/2", "0.75") and are resolved after parsing.
struct AngleFlags {
    std::optional<std::string> phase;
    std::optional<std::string> angle;
    std::optional<std::string> phi_start;
    std::optional<std::string> phi_stop;
    std::optional<std::string> r_frac;
};

void add_geometry(CLI::App& sub, RunConfig& cfg, AngleFlags& flags) {
    sub.add_option("--R", cfg.length, "cavity length");
    sub.add_option("--r-frac", flags.r_frac, "mirror position as a fraction p/q of R");
    sub.add_option("--lambda", cfg.cutoff, "UV cutoff (output modes per side)");
    sub.add_option("--log-base", cfg.log_base, "logarithm base for E_N: e, 2 or 10");
    sub.add_option("--out", cfg.output, "output path (stdout when omitted)");
    sub.add_option("--format", cfg.format, "csv or json");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Records>
void write_records(const RunConfig& cfg, const Records& records, std::ostream& out,
                   std::span<const std::string> columns = {}) {
    const OutputFormat format = parse_format(cfg.format);
    if (cfg.output.empty()) {
        if (format == OutputFormat::csv) {
            write_csv(out, records, columns);
        } else {
            write_json(out, records);
        }
    } else {
        emit(records, format, cfg.output, columns);
    }
}

void write_grid(const RunConfig& cfg, const HeatmapGrid& grid, std::ostream& out) {
    const OutputFormat format = parse_format(cfg.format);
    if (cfg.output.empty()) {
        if (format == OutputFormat::csv) {
            write_csv(out, grid);
        } else {
            write_json(out, grid);
        }
    } else {
        emit(grid, format, cfg.output);
    }
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "nbar") return SweepParameter::nbar;
    if (name == "s") return SweepParameter::squeezing;
    if (name == "theta") return SweepParameter::angle;
    if (name == "rho") return SweepParameter::amplitude;
    return SweepParameter::phase;
}

void run_validate(const RunConfig& cfg, const CavityGeometry& geom, std::ostream& out) {
    const TruncationConfig trunc(cfg.cutoff);
    const GaussianState state = apply_transform(vacuum(trunc.input_modes()),
                                                build_transform(geom, trunc));
    const ValidationReport full = validate(state);

    double worst_pair = 0.0;
    std::string worst_label = "none";
    for (Side side_b : {Side::left, Side::right}) {
        for (int n = 1; n <= cfg.heatmap_size; ++n) {
            for (int m = 1; m <= cfg.heatmap_size; ++m) {
                const int a = output_mode_index(Side::left, n, trunc);
                const int b = output_mode_index(side_b, m, trunc);
                if (a == b) continue;
                const ValidationReport r = validate(reduce(state, {a, b}));
                if (r.deficit > worst_pair || worst_label == "none") {
                    worst_pair = std::max(worst_pair, r.deficit);
                    worst_label = "u" + std::to_string(n) + (side_b == Side::left ? ",u" : ",ubar") +
                                  std::to_string(m);
                }
            }
        }
    }
    out << "lambda=" << cfg.cutoff << '\n'
        << "full_state_min_symplectic_eigenvalue=" << format_double(full.min_symplectic_eigenvalue) << '\n'
        << "full_state_deficit=" << format_double(full.deficit) << '\n'
        << "full_state_status=" << (full.ok ? "ok" : "violation") << '\n'
        << "low_mode_pairs_M=" << cfg.heatmap_size << '\n'
        << "low_mode_pairs_worst_deficit=" << format_double(worst_pair) << '\n'
        << "low_mode_pairs_worst_pair=" << worst_label << '\n'
        << "low_mode_pairs_status=" << (worst_pair <= kPhysicalitySlack ? "ok" : "violation") << '\n';
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const CavityGeometry geom(cfg.length, cfg.mirror_num, cfg.mirror_den);
    const TruncationConfig trunc(cfg.cutoff);
    SweepOptions opts;
    opts.base = parse_log_base(cfg.log_base);
    opts.threads = sweep_threads();

    const std::string& e = cfg.experiment;
    if (e == "fig2") {
        const auto phases = linspace(cfg.phi_grid.start, cfg.phi_grid.stop, cfg.phi_grid.count);
        write_records(cfg, coherent_phase_sweep(geom, trunc, cfg.k, phases, cfg.n_max, opts), out);
    } else if (e == "fig3") {
        write_records(cfg, phase_averaged_coherent(geom, trunc, cfg.k, cfg.n_max), out);
    } else if (e == "fig4") {
        const auto grid =
            linspace(cfg.particles_grid.start, cfg.particles_grid.stop, cfg.particles_grid.count);
        write_records(cfg, negativity_vs_particles(geom, trunc, grid, opts), out);
    } else if (e == "fig5") {
        const auto s_grid = linspace(cfg.s_grid.start, cfg.s_grid.stop, cfg.s_grid.count);
        const TemperatureScan scan =
            squeezing_temperature_scan(geom, trunc, cfg.nbar_list, s_grid, cfg.angle, opts);
        write_records(cfg, scan.records, out);
        if (!cfg.thresholds_output.empty()) {
            emit(scan.thresholds, parse_format(cfg.format), cfg.thresholds_output);
        }
        for (const SweepRecord& t : scan.thresholds) {
            err << "nbar=" << format_double(t.number("nbar")) << " threshold_s="
                << (t.number("found") > 0 ? format_double(t.number("threshold_s")) : "none") << '\n';
        }
    } else if (e == "fig6") {
        const HeatmapGrid grid =
            entanglement_distribution(geom, trunc, parse_two_mode_input(cfg.state), cfg.squeezing,
                                      cfg.angle, cfg.heatmap_size, cfg.k, cfg.k2, opts);
        write_grid(cfg, grid, out);
    } else if (e == "sweep") {
        SingleModeParams base{cfg.k, cfg.amplitude, cfg.phase, cfg.nbar, cfg.squeezing, cfg.angle};
        const auto values = linspace(cfg.sweep_grid.start, cfg.sweep_grid.stop, cfg.sweep_grid.count);
        const SingleModeFamily family = cfg.family == "coherent" ? SingleModeFamily::coherent
                                                                 : SingleModeFamily::squeezed_thermal;
        write_records(cfg,
                      single_mode_sweep(geom, trunc, family, base,
                                        parse_sweep_parameter(cfg.sweep_parameter), values,
                                        cfg.n_max, opts),
                      out);
    } else if (e == "converge") {
        write_records(cfg,
                      convergence_study(geom, cfg.cutoff_list, *parse_observable(cfg.observable), opts),
                      out);
    } else if (e == "validate") {
        run_validate(cfg, geom, out);
    }
    return kExitOk;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    const auto& names = experiment_names();
    if (args.empty()) {
        err << "config error: experiment: missing experiment (one of fig2..fig6, sweep, validate, converge)\n";
        return kExitConfig;
    }
    const std::string& first = args.front();
    if (!first.starts_with('-') && std::find(names.begin(), names.end(), first) == names.end()) {
        err << "config error: experiment: unknown experiment '" << first << "'\n";
        return kExitConfig;
    }

    RunConfig cfg;
    AngleFlags flags;
    std::string config_path;
    bool dump_config = false;
    std::vector<double> nbar_list;
    std::vector<int> cutoff_list;

    try {
        // A --config file supplies the baseline; explicit flags override it.
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") config_path = args[i + 1];
        }
        if (!config_path.empty()) {
            cfg = config_from_json(read_file(config_path));
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App app{"Instantaneous cavity bisection for multimode Gaussian states", "mirrorcut"};
    app.require_subcommand(1);
    app.add_option("--config", config_path, "JSON run configuration")->configurable(false);
    app.add_flag("--dump-config", dump_config, "print the resolved configuration and exit");
    app.fallthrough();

    std::optional<int> phi_steps;
    std::optional<double> s_start, s_stop, p_start, p_stop, v_start, v_stop;
    std::optional<int> s_count, p_count, v_count;

    auto* fig2 = app.add_subcommand("fig2", "coherent particle gain versus phase");
    auto* fig3 = app.add_subcommand("fig3", "phase-averaged coherent particle gain per mode");
    auto* fig4 = app.add_subcommand("fig4", "E_N(u1, ubar1) versus initial particle number");
    auto* fig5 = app.add_subcommand("fig5", "E_N(u1, ubar1) versus squeezing at several nbar");
    auto* fig6 = app.add_subcommand("fig6", "E_N(u_n, ubar_m) heatmap for two-mode inputs");
    auto* sweep = app.add_subcommand("sweep", "dense single-mode parameter sweep");
    auto* val = app.add_subcommand("validate", "physicality report for the transformed vacuum");
    auto* conv = app.add_subcommand("converge", "observable versus cutoff");

    for (CLI::App* sub : {fig2, fig3, fig4, fig5, fig6, sweep, val, conv}) {
        add_geometry(*sub, cfg, flags);
    }
    for (CLI::App* sub : {fig2, fig3, fig6, sweep}) {
        sub->add_option("--k", cfg.k, "input mode (1-based)");
    }
    for (CLI::App* sub : {fig2, fig3, sweep}) {
        sub->add_option("--n-max", cfg.n_max, "highest output mode reported");
    }
    fig2->add_option("--phi-steps", phi_steps, "number of phases on [phi-start, phi-stop]");
    fig2->add_option("--phi-start", flags.phi_start);
    fig2->add_option("--phi-stop", flags.phi_stop);

    fig4->add_option("--particles-start", p_start);
    fig4->add_option("--particles-stop", p_stop);
    fig4->add_option("--particles-count", p_count);

    fig5->add_option("--nbar-list", nbar_list, "thermal occupations")->delimiter(',');
    fig5->add_option("--s-start", s_start);
    fig5->add_option("--s-stop", s_stop);
    fig5->add_option("--s-count", s_count);
    fig5->add_option("--thresholds-out", cfg.thresholds_output, "threshold table path");

    for (CLI::App* sub : {fig5, fig6, sweep}) {
        sub->add_option("--theta", flags.angle, "squeezing angle (radians or multiples of pi)");
    }
    for (CLI::App* sub : {fig6, sweep}) {
        sub->add_option("--s", cfg.squeezing, "squeezing parameter");
    }
    fig6->add_option("--k2", cfg.k2, "second input mode of the two-mode state");
    fig6->add_option("--state", cfg.state, "vacuum, tms or stripped");
    for (CLI::App* sub : {fig6, val}) {
        sub->add_option("--M", cfg.heatmap_size, "modes per side in the heatmap");
    }

    sweep->add_option("--family", cfg.family, "coherent or squeezed-thermal");
    sweep->add_option("--param", cfg.sweep_parameter, "swept parameter: nbar, s, theta, rho, phi");
    sweep->add_option("--start", v_start);
    sweep->add_option("--stop", v_stop);
    sweep->add_option("--count", v_count);
    sweep->add_option("--rho", cfg.amplitude, "coherent amplitude");
    sweep->add_option("--phi", flags.phase, "coherent phase");
    sweep->add_option("--nbar", cfg.nbar, "thermal occupation");

    conv->add_option("--lambdas", cutoff_list, "ascending cutoffs")->delimiter(',');
    conv->add_option("--observable", cfg.observable,
                     "vacuum-en11, vacuum-en12, vacuum-n1, tms-en11, coherent-n1, "
                     "total-particles, symplectic-defect");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        cfg.experiment = chosen->get_name();
        if (!nbar_list.empty()) cfg.nbar_list = nbar_list;
        if (!cutoff_list.empty()) cfg.cutoff_list = cutoff_list;
        if (flags.r_frac) {
            const MirrorFraction f = parse_fraction(*flags.r_frac, "r-frac");
            cfg.mirror_num = f.num;
            cfg.mirror_den = f.den;
        }
        if (flags.phase) cfg.phase = parse_angle(*flags.phase, "phi");
        if (flags.angle) cfg.angle = parse_angle(*flags.angle, "theta");
        if (flags.phi_start) cfg.phi_grid.start = parse_angle(*flags.phi_start, "phi-start");
        if (flags.phi_stop) cfg.phi_grid.stop = parse_angle(*flags.phi_stop, "phi-stop");
        if (phi_steps) cfg.phi_grid.count = *phi_steps;
        if (s_start) cfg.s_grid.start = *s_start;
        if (s_stop) cfg.s_grid.stop = *s_stop;
        if (s_count) cfg.s_grid.count = *s_count;
        if (p_start) cfg.particles_grid.start = *p_start;
        if (p_stop) cfg.particles_grid.stop = *p_stop;
        if (p_count) cfg.particles_grid.count = *p_count;
        if (v_start) cfg.sweep_grid.start = *v_start;
        if (v_stop) cfg.sweep_grid.stop = *v_stop;
        if (v_count) cfg.sweep_grid.count = *v_count;

        // Figure-specific defaults when neither flags nor a config file set them.
        if (config_path.empty()) {
            if (cfg.experiment == "fig6") {
                if (fig6->count("--s") == 0) cfg.squeezing = 0.75;
                if (!flags.angle) cfg.angle = std::numbers::pi;
            }
            if (cfg.experiment == "fig3" && fig3->count("--n-max") == 0) cfg.n_max = 6;
        }

        if (dump_config) {
            out << to_json(cfg) << '\n';
            return kExitOk;
        }
        validate(cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        return dispatch(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace mirrorcut::cli
