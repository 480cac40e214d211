#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorcut/gaussian.hpp"
#include "mirrorcut/records.hpp"

namespace mirrorcut {

/// Bad user input. `field()` names the offending setting.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    friend bool operator==(const Grid&, const Grid&) = default;
};

struct RunConfig {
    std::string experiment;

    double length = 2.0;
    std::int64_t mirror_num = 1;
    std::int64_t mirror_den = 2;
    int cutoff = 64;

    int k = 1;
    int k2 = 2;
    double amplitude = 1.0;
    double phase = 0.0;
    double nbar = 0.0;
    double squeezing = 0.0;
    double angle = 0.0;

    Grid phi_grid{0.0, std::numbers::pi, 97};
    Grid particles_grid{0.0, 2.0, 41};
    Grid s_grid{0.0, 3.0, 61};
    Grid sweep_grid{0.0, 1.0, 11};
    std::vector<double> nbar_list{0.0, 5.0, 10.0, 15.0};
    std::vector<int> cutoff_list{16, 32, 64, 128};

    int heatmap_size = 6;
    int n_max = 3;
    std::string state = "tms";
    std::string observable = "vacuum-en11";
    std::string family = "squeezed-thermal";
    std::string sweep_parameter = "nbar";

    std::string log_base = "e";
    std::string format = "csv";
    std::string output;
    std::string thresholds_output;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Known experiment names, in CLI order.
[[nodiscard]] const std::vector<std::string>& experiment_names();

/// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& config);

[[nodiscard]] std::string to_json(const RunConfig& config);
[[nodiscard]] RunConfig config_from_json(std::string_view text);

/// Angle literal: plain radians ("1.5"), or a multiple of pi ("pi", "-pi",
/// "0.25pi", "pi/2", "3pi/4"). Throws ConfigError(field, ...) otherwise.
[[nodiscard]] double parse_angle(std::string_view text, const std::string& field);

/// "p/q" mirror fraction.
struct MirrorFraction {
    std::int64_t num;
    std::int64_t den;
};
[[nodiscard]] MirrorFraction parse_fraction(std::string_view text, const std::string& field);

[[nodiscard]] LogBase parse_log_base(std::string_view text);
[[nodiscard]] OutputFormat parse_format(std::string_view text);
[[nodiscard]] TwoModeInput parse_two_mode_input(std::string_view text);

} // namespace mirrorcut
