#include "mirrorcut/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "mirrorcut/sweeps.hpp"

namespace mirrorcut {

namespace {

using nlohmann::json;

void check(bool ok, const char* field, const std::string& message) {
    if (!ok) throw ConfigError(field, message);
}

void check_grid(const Grid& g, const char* field) {
    check(g.count >= 1, field, "count must be >= 1");
    check(std::isfinite(g.start) && std::isfinite(g.stop), field, "bounds must be finite");
    check(g.start <= g.stop, field, "start must not exceed stop");
}

bool one_of(std::string_view value, std::initializer_list<std::string_view> allowed) {
    return std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

json grid_json(const Grid& g) { return {{"start", g.start}, {"stop", g.stop}, {"count", g.count}}; }

Grid grid_from(const json& j) {
    return {j.at("start").get<double>(), j.at("stop").get<double>(), j.at("count").get<int>()};
}

} // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"fig2", "fig3", "fig4",     "fig5",
                                                "fig6", "sweep", "validate", "converge"};
    return names;
}

void validate(const RunConfig& c) {
    const auto& names = experiment_names();
    check(std::find(names.begin(), names.end(), c.experiment) != names.end(), "experiment",
          "unknown experiment '" + c.experiment + "'");
    check(std::isfinite(c.length) && c.length > 0.0, "R", "cavity length must be positive");
    check(c.mirror_num > 0 && c.mirror_num < c.mirror_den, "r-frac", "need 0 < p < q");
    check(c.cutoff >= 1, "lambda", "cutoff must be >= 1");
    check(c.k >= 1 && c.k <= 2 * c.cutoff, "k", "input mode must lie in 1..2*lambda");
    check(c.k2 > c.k && c.k2 <= 2 * c.cutoff, "k2", "need k < k2 <= 2*lambda");
    check(std::isfinite(c.amplitude) && c.amplitude >= 0.0, "rho", "amplitude must be >= 0");
    check(std::isfinite(c.phase), "phi", "must be finite");
    check(std::isfinite(c.nbar) && c.nbar >= 0.0, "nbar", "thermal occupation must be >= 0");
    check(std::isfinite(c.squeezing), "s", "must be finite");
    check(std::isfinite(c.angle), "theta", "must be finite");
    check_grid(c.phi_grid, "phi-grid");
    check_grid(c.particles_grid, "particles-grid");
    check(c.particles_grid.start >= 0.0, "particles-grid", "initial particle number must be >= 0");
    check_grid(c.s_grid, "s-grid");
    check_grid(c.sweep_grid, "sweep-grid");
    check(!c.nbar_list.empty(), "nbar-list", "must not be empty");
    for (double v : c.nbar_list) check(std::isfinite(v) && v >= 0.0, "nbar-list", "entries must be >= 0");
    check(!c.cutoff_list.empty(), "lambdas", "must not be empty");
    for (std::size_t i = 0; i < c.cutoff_list.size(); ++i) {
        check(c.cutoff_list[i] >= 1, "lambdas", "entries must be >= 1");
        check(i == 0 || c.cutoff_list[i] > c.cutoff_list[i - 1], "lambdas",
              "must be strictly ascending");
    }
    // Output-mode counts only constrain the experiments that use them, so a
    // small --lambda is not rejected because of an unrelated default.
    const bool uses_heatmap = c.experiment == "fig6" || c.experiment == "validate";
    const bool uses_n_max = c.experiment == "fig2" || c.experiment == "fig3" || c.experiment == "sweep";
    check(c.heatmap_size >= 1 && (!uses_heatmap || c.heatmap_size <= c.cutoff), "M",
          "must lie in 1..lambda");
    check(c.n_max >= 1 && (!uses_n_max || c.n_max <= c.cutoff), "n-max", "must lie in 1..lambda");
    check(one_of(c.state, {"vacuum", "tms", "stripped"}), "state",
          "expected vacuum, tms or stripped");
    check(parse_observable(c.observable).has_value(), "observable",
          "unknown observable '" + c.observable + "'");
    check(one_of(c.family, {"coherent", "squeezed-thermal"}), "family",
          "expected coherent or squeezed-thermal");
    check(one_of(c.sweep_parameter, {"nbar", "s", "theta", "rho", "phi"}), "param",
          "expected nbar, s, theta, rho or phi");
    if (c.sweep_parameter == "nbar" || c.sweep_parameter == "rho") {
        check(c.sweep_grid.start >= 0.0, "sweep-grid", c.sweep_parameter + " must be >= 0");
    }
    check(one_of(c.log_base, {"e", "2", "10"}), "log-base", "expected e, 2 or 10");
    check(one_of(c.format, {"csv", "json"}), "format", "expected csv or json");
}

std::string to_json(const RunConfig& c) {
    const json j = {
        {"experiment", c.experiment},
        {"R", c.length},
        {"r_frac", {c.mirror_num, c.mirror_den}},
        {"lambda", c.cutoff},
        {"k", c.k},
        {"k2", c.k2},
        {"rho", c.amplitude},
        {"phi", c.phase},
        {"nbar", c.nbar},
        {"s", c.squeezing},
        {"theta", c.angle},
        {"phi_grid", grid_json(c.phi_grid)},
        {"particles_grid", grid_json(c.particles_grid)},
        {"s_grid", grid_json(c.s_grid)},
        {"sweep_grid", grid_json(c.sweep_grid)},
        {"nbar_list", c.nbar_list},
        {"lambdas", c.cutoff_list},
        {"M", c.heatmap_size},
        {"n_max", c.n_max},
        {"state", c.state},
        {"observable", c.observable},
        {"family", c.family},
        {"param", c.sweep_parameter},
        {"log_base", c.log_base},
        {"format", c.format},
        {"out", c.output},
        {"thresholds_out", c.thresholds_output},
    };
    return j.dump(2);
}

RunConfig config_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    static const std::vector<std::string> known{
        "experiment", "R",         "r_frac",         "lambda",     "k",          "k2",
        "rho",        "phi",       "nbar",           "s",          "theta",      "phi_grid",
        "particles_grid", "s_grid", "sweep_grid",    "nbar_list",  "lambdas",    "M",
        "n_max",      "state",     "observable",     "family",     "param",      "log_base",
        "format",     "out",       "thresholds_out"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw ConfigError(item.key(), "unknown configuration key");
        }
    }
    RunConfig c;
    auto take = [&](const char* key, auto& dst) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(dst);
        } catch (const json::exception& e) {
            throw ConfigError(key, e.what());
        }
    };
    take("experiment", c.experiment);
    take("R", c.length);
    if (j.contains("r_frac")) {
        std::vector<std::int64_t> frac;
        take("r_frac", frac);
        check(frac.size() == 2, "r_frac", "expected [p, q]");
        c.mirror_num = frac[0];
        c.mirror_den = frac[1];
    }
    take("lambda", c.cutoff);
    take("k", c.k);
    take("k2", c.k2);
    take("rho", c.amplitude);
    take("phi", c.phase);
    take("nbar", c.nbar);
    take("s", c.squeezing);
    take("theta", c.angle);
    for (auto [key, grid] : {std::pair{"phi_grid", &c.phi_grid},
                             std::pair{"particles_grid", &c.particles_grid},
                             std::pair{"s_grid", &c.s_grid}, std::pair{"sweep_grid", &c.sweep_grid}}) {
        if (!j.contains(key)) continue;
        try {
            *grid = grid_from(j.at(key));
        } catch (const json::exception& e) {
            throw ConfigError(key, e.what());
        }
    }
    take("nbar_list", c.nbar_list);
    take("lambdas", c.cutoff_list);
    take("M", c.heatmap_size);
    take("n_max", c.n_max);
    take("state", c.state);
    take("observable", c.observable);
    take("family", c.family);
    take("param", c.sweep_parameter);
    take("log_base", c.log_base);
    take("format", c.format);
    take("out", c.output);
    take("thresholds_out", c.thresholds_output);
    return c;
}

double parse_angle(std::string_view text, const std::string& field) {
    const std::string_view s = trim(text);
    const auto bad = [&] { return ConfigError(field, "cannot parse angle '" + std::string(text) + "'"); };
    const std::size_t pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) {
        double v = 0.0;
        if (!parse_number(s, v) || !std::isfinite(v)) throw bad();
        return v;
    }
    double factor = 1.0;
    const std::string_view head = trim(s.substr(0, pi_pos));
    if (head == "-") {
        factor = -1.0;
    } else if (!head.empty() && head != "+") {
        std::string_view num = head;
        if (num.back() == '*') num = trim(num.substr(0, num.size() - 1));
        if (!parse_number(num, factor)) throw bad();
    }
    std::string_view tail = trim(s.substr(pi_pos + 2));
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw bad();
        if (!parse_number(tail.substr(1), divisor) || divisor == 0.0) throw bad();
    }
    const double v = factor * std::numbers::pi / divisor;
    if (!std::isfinite(v)) throw bad();
    return v;
}

MirrorFraction parse_fraction(std::string_view text, const std::string& field) {
    const std::string_view s = trim(text);
    const std::size_t slash = s.find('/');
    MirrorFraction f{0, 0};
    auto parse_int = [&](std::string_view part, std::int64_t& out) {
        part = trim(part);
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc() && ptr == part.data() + part.size() && !part.empty();
    };
    if (slash == std::string_view::npos || !parse_int(s.substr(0, slash), f.num) ||
        !parse_int(s.substr(slash + 1), f.den)) {
        throw ConfigError(field, "expected p/q, got '" + std::string(text) + "'");
    }
    if (f.num <= 0 || f.den <= 0 || f.num >= f.den) {
        throw ConfigError(field, "need 0 < p < q");
    }
    return f;
}

LogBase parse_log_base(std::string_view text) {
    if (text == "2") return LogBase::two;
    if (text == "10") return LogBase::ten;
    if (text == "e") return LogBase::e;
    throw ConfigError("log-base", "expected e, 2 or 10");
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("format", "expected csv or json");
}

TwoModeInput parse_two_mode_input(std::string_view text) {
    if (text == "vacuum") return TwoModeInput::vacuum;
    if (text == "tms") return TwoModeInput::tms;
    if (text == "stripped") return TwoModeInput::stripped;
    throw ConfigError("state", "expected vacuum, tms or stripped");
}

} // namespace mirrorcut
