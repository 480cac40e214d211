#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mirrorcut/cli.hpp"
#include "mirrorcut/config.hpp"

using namespace mirrorcut;
using std::numbers::pi;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "mirrorcut_cli_test") {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("fig2 produces one row per phase and mode") {
    const Result r = run_cli({"fig2", "--k", "1", "--phi-steps", "97", "--lambda", "16"});
    REQUIRE(r.code == cli::kExitOk);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 1 + 97 * 3);
    CHECK(lines[0].rfind("experiment,", 0) == 0);
}

TEST_CASE("fig6 writes an M x M grid") {
    const Result r = run_cli({"fig6", "--state", "tms", "--M", "5", "--lambda", "16"});
    REQUIRE(r.code == cli::kExitOk);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "n,m1,m2,m3,m4,m5");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 5);
    }
}

TEST_CASE("validate reports the physicality deficit") {
    const Result r = run_cli({"validate", "--lambda", "64"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("deficit=") != std::string::npos);
    CHECK(r.out.find("low_mode_pairs_status=ok") != std::string::npos);
}

TEST_CASE("every experiment runs at a small cutoff") {
    for (const std::string& name : experiment_names()) {
        std::vector<std::string> args{name, "--lambda", "8"};
        if (name == "converge") args = {name, "--lambdas", "4,8"};
        if (name == "fig5") {
            args.insert(args.end(), {"--nbar-list", "0,5", "--s-count", "7"});
        }
        const Result r = run_cli(args);
        CAPTURE(name);
        CAPTURE(r.err);
        CHECK(r.code == cli::kExitOk);
        CHECK_FALSE(r.out.empty());
    }
}

TEST_CASE("configuration errors exit with code 2 and name the field") {
    CHECK(run_cli({"fig9"}).code == cli::kExitConfig);
    CHECK(run_cli({}).code == cli::kExitConfig);

    const Result steps = run_cli({"fig2", "--phi-steps", "0"});
    CHECK(steps.code == cli::kExitConfig);
    CHECK(steps.err.find("phi") != std::string::npos);

    const Result rho = run_cli({"sweep", "--rho", "-1"});
    CHECK(rho.code == cli::kExitConfig);
    CHECK(rho.err.find("rho") != std::string::npos);

    const Result frac = run_cli({"fig2", "--r-frac", "3/2"});
    CHECK(frac.code == cli::kExitConfig);
    CHECK(frac.err.find("r-frac") != std::string::npos);

    CHECK(run_cli({"fig6", "--theta", "pie"}).code == cli::kExitConfig);
    CHECK(run_cli({"fig2", "--lambda", "0"}).code == cli::kExitConfig);
    CHECK(run_cli({"fig2", "--log-base", "7"}).code == cli::kExitConfig);
    CHECK(run_cli({"fig6", "--state", "cat"}).code == cli::kExitConfig);
    CHECK(run_cli({"fig2", "--no-such-flag"}).code == cli::kExitConfig);
}

TEST_CASE("unwritable output exits with code 3") {
    const Result r = run_cli({"fig2", "--lambda", "4", "--phi-steps", "3", "--out",
                              "/nonexistent_dir_for_mirrorcut/out.csv"});
    CHECK(r.code == cli::kExitRuntime);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    TempDir tmp;
    const auto a = tmp.path / "a.csv";
    const auto b = tmp.path / "b.csv";
    REQUIRE(run_cli({"fig4", "--lambda", "16", "--particles-count", "9", "--out", a.string()}).code == 0);
    REQUIRE(run_cli({"fig4", "--lambda", "16", "--particles-count", "9", "--out", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    // A repeat into an existing file overwrites rather than appends.
    REQUIRE(run_cli({"fig4", "--lambda", "16", "--particles-count", "9", "--out", a.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("json and csv outputs agree") {
    const Result csv = run_cli({"fig3", "--lambda", "16"});
    const Result js = run_cli({"fig3", "--lambda", "16", "--format", "json"});
    REQUIRE(csv.code == 0);
    REQUIRE(js.code == 0);
    const auto parsed = nlohmann::json::parse(js.out);
    const auto lines = lines_of(csv.out);
    REQUIRE(lines.size() == parsed.size() + 1);
    std::vector<std::string> header;
    {
        std::istringstream hs(lines[0]);
        std::string cell;
        while (std::getline(hs, cell, ',')) header.push_back(cell);
    }
    for (std::size_t row = 0; row < parsed.size(); ++row) {
        std::istringstream ls(lines[row + 1]);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            const auto& v = parsed[row].at(header[c]);
            if (v.is_string()) {
                CHECK(cell == v.get<std::string>());
            } else {
                CHECK(std::stod(cell) == v.get<double>());
            }
            ++c;
        }
    }
}

TEST_CASE("configuration round-trips through JSON") {
    RunConfig cfg;
    cfg.experiment = "fig5";
    cfg.length = 3.25;
    cfg.mirror_num = 2;
    cfg.mirror_den = 7;
    cfg.cutoff = 48;
    cfg.angle = pi / 3;
    cfg.nbar_list = {1.0, 2.5};
    cfg.cutoff_list = {8, 24};
    cfg.s_grid = {0.1, 2.2, 23};
    cfg.log_base = "2";
    cfg.format = "json";
    cfg.output = "x.json";
    CHECK(config_from_json(to_json(cfg)) == cfg);
    CHECK(config_from_json(to_json(RunConfig{})) == RunConfig{});
    CHECK_THROWS_AS((void)config_from_json("{\"lambda\": \"many\"}"), ConfigError);
    CHECK_THROWS_AS((void)config_from_json("{\"lamda\": 8}"), ConfigError);
    CHECK_THROWS_AS((void)config_from_json("[1, 2]"), ConfigError);
}

TEST_CASE("dumped configuration reproduces the run") {
    TempDir tmp;
    const Result dump = run_cli({"fig2", "--lambda", "8", "--phi-steps", "5", "--k", "2", "--dump-config"});
    REQUIRE(dump.code == 0);
    const auto cfg_path = tmp.path / "cfg.json";
    std::ofstream(cfg_path) << dump.out;
    const Result again = run_cli({"fig2", "--config", cfg_path.string(), "--dump-config"});
    REQUIRE(again.code == 0);
    CHECK(again.out == dump.out);

    const Result direct = run_cli({"fig2", "--lambda", "8", "--phi-steps", "5", "--k", "2"});
    const Result via = run_cli({"fig2", "--config", cfg_path.string()});
    CHECK(direct.out == via.out);
}

TEST_CASE("angle and fraction parsing") {
    CHECK(parse_angle("pi", "theta") == pi);
    CHECK(parse_angle("-pi", "theta") == -pi);
    CHECK(parse_angle("pi/2", "theta") == doctest::Approx(pi / 2));
    CHECK(parse_angle("3pi/4", "theta") == doctest::Approx(0.75 * pi));
    CHECK(parse_angle("0.25pi", "theta") == doctest::Approx(0.25 * pi));
    CHECK(parse_angle("1.5", "theta") == 1.5);
    CHECK_THROWS_AS((void)parse_angle("pie", "theta"), ConfigError);
    CHECK_THROWS_AS((void)parse_angle("pi/0", "theta"), ConfigError);
    CHECK_THROWS_AS((void)parse_angle("", "theta"), ConfigError);

    const MirrorFraction f = parse_fraction("2/4", "r-frac");
    CHECK(f.num == 2);
    CHECK(f.den == 4);
    CHECK_THROWS_AS((void)parse_fraction("1/0", "r-frac"), ConfigError);
    CHECK_THROWS_AS((void)parse_fraction("half", "r-frac"), ConfigError);
    try {
        (void)parse_fraction("x", "r-frac");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "r-frac");
    }
}

TEST_CASE("log base and format parsing") {
    CHECK(parse_log_base("e") == LogBase::e);
    CHECK(parse_log_base("2") == LogBase::two);
    CHECK(parse_log_base("10") == LogBase::ten);
    CHECK_THROWS_AS((void)parse_log_base("3"), ConfigError);
    CHECK(parse_format("json") == OutputFormat::json);
    CHECK_THROWS_AS((void)parse_format("xml"), ConfigError);
    CHECK(parse_two_mode_input("stripped") == TwoModeInput::stripped);
}
