#include "curvjc/errors.hpp"
#include "curvjc/observables.hpp"
#include "curvjc/scenario.hpp"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace curvjc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("curvjc_scenario_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

constexpr const char* kInversion = R"(name: t
observable: inversion
initial: {atom: excited, field: coherent, alpha: 1.5}
lambda: [0.0, 0.2]
time: {start: 0.0, end: 2.0, steps: 5}
output: inv
)";

}  // namespace

TEST(ParseConfig, MinimalInversion) {
    const auto cfg = parse_config(kInversion);
    EXPECT_EQ(cfg.observable, Observable::inversion);
    EXPECT_EQ(cfg.lambda_values.size(), 2u);
    ASSERT_EQ(cfg.times.size(), 5u);
    EXPECT_DOUBLE_EQ(cfg.times[4], 2.0);
    EXPECT_TRUE(cfg.frequencies_defaulted);
    EXPECT_DOUBLE_EQ(cfg.params.omega, 1.0);
    EXPECT_EQ(cfg.truncation(), state_truncation(1.5));
}

TEST(ParseConfig, ExplicitFrequenciesAndComplexAlpha) {
    const auto cfg = parse_config(R"(observable: inversion
params: {omega: 2.0, omega_eg: 1.5, g: 1.0}
initial: {atom: excited, field: coherent, alpha: [0.0, 1.0]}
lambda: 0.3
time: [1.0, 2.0]
)");
    EXPECT_FALSE(cfg.frequencies_defaulted);
    EXPECT_DOUBLE_EQ(cfg.params.omega, 2.0);
    const auto* c = std::get_if<CoherentField>(&cfg.initial);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->alpha, complex(0.0, 1.0));
}

TEST(ParseConfig, NegativeLambdaNamesInvariantAndLine) {
    try {
        parse_config(R"(observable: inversion
initial: {atom: excited, field: coherent, alpha: 1.0}
lambda: [0.1, -0.1]
time: [1.0]
)");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "lambda");
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("lambda >= 0"), std::string::npos);
    }
}

TEST(ParseConfig, UnknownKeyRejected) {
    try {
        parse_config(std::string(kInversion) + "colour: blue\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "colour");
        EXPECT_EQ(e.line(), 7);
    }
}

TEST(ParseConfig, SyntaxErrorHasPosition) {
    try {
        parse_config("observable: [inversion\nlambda: 0\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_GT(e.line(), 0);
    }
}

TEST(ParseConfig, EvenGridRejected) {
    try {
        parse_config(R"(observable: wigner
initial: {atom: excited, field: coherent, alpha: 1.0}
lambda: [0.1]
time: [1.0]
grid: {x_min: -4, x_max: 4, p_min: -4, p_max: 4, nx: 100, np: 101}
)");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
    }
}

TEST(ParseConfig, BadRangesRejected) {
    EXPECT_THROW(parse_config(R"(observable: inversion
initial: {atom: excited, field: coherent, alpha: 1.0}
lambda: [0.1]
time: {start: 0.0, end: 1.0, steps: 1}
)"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"(observable: inversion
initial: {atom: excited, field: coherent, alpha: 1.0}
lambda: [0.1]
time: {start: 2.0, end: 1.0, steps: 5}
)"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"(observable: entropy
initial: {atom: excited, field: fock, n: -1}
lambda: [0.1]
time: [1.0]
)"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"(observable: revival_time
initial: {atom: excited, field: coherent, alpha: 1.0}
lambda: [0.1]
)"),
                 ConfigError);
}

TEST(Presets, AllParseAndValidate) {
    const auto names = preset_names();
    EXPECT_EQ(names.size(), 9u);
    for (const auto& n : names) {
        const auto text = preset_text(n);
        ASSERT_TRUE(text.has_value()) << n;
        EXPECT_NO_THROW(parse_config(*text, n).validate()) << n;
    }
    EXPECT_FALSE(preset_text("fig10").has_value());
}

TEST(Presets, FilesMatchCompiledCopies) {
    for (const auto& n : preset_names()) {
        const auto on_disk = slurp(fs::path(CURVJC_SOURCE_DIR) / "configs/presets" / (n + ".yaml"));
        EXPECT_EQ(on_disk, std::string(*preset_text(n))) << n;
    }
}

TEST(RunScenario, InversionCsvMatchesLibrary) {
    const auto dir = scratch("inv");
    const auto cfg = parse_config(kInversion);
    const auto res = run_scenario(cfg, {dir, 1});
    EXPECT_EQ(res.rows, 10u);
    EXPECT_LT(res.max_norm_residual, 1e-12);
    std::ifstream csv(dir / "inv.csv");
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "lambda,gt,value");
    int rows = 0;
    while (std::getline(csv, line)) {
        double l = 0, t = 0, v = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &l, &t, &v), 3);
        SystemParams p;
        p.lambda = l;
        EXPECT_DOUBLE_EQ(v, population_inversion(evolve_excited_coherent(1.5, t, p)));
        ++rows;
    }
    EXPECT_EQ(rows, 10);

    const auto meta = nlohmann::json::parse(slurp(dir / "inv.meta.json"));
    EXPECT_EQ(meta["assumptions"]["frequencies_defaulted"], true);
    EXPECT_EQ(meta["n_max"], state_truncation(1.5));
    EXPECT_TRUE(meta.contains("library_version"));
}

TEST(RunScenario, Deterministic) {
    const auto a = scratch("det_a"), b = scratch("det_b");
    const auto cfg = parse_config(kInversion);
    run_scenario(cfg, {a, 1});
    run_scenario(cfg, {b, 1});
    EXPECT_EQ(slurp(a / "inv.csv"), slurp(b / "inv.csv"));
}

TEST(RunScenario, WignerWritesMatricesAndSidecars) {
    const auto dir = scratch("wig");
    const auto cfg = parse_config(R"(observable: wigner
initial: {atom: excited, field: coherent, alpha: 0.5}
lambda: [0.3]
time: [0.0, 1.0]
grid: {x_min: -6, x_max: 6, p_min: -6, p_max: 6, nx: 61, np: 61}
output: w
)");
    const auto res = run_scenario(cfg, {dir, 0});
    EXPECT_TRUE(fs::exists(dir / "w.csv"));
    EXPECT_TRUE(fs::exists(dir / "w_000.csv"));
    EXPECT_TRUE(fs::exists(dir / "w_001.meta.json"));
    EXPECT_TRUE(fs::exists(dir / "w.meta.json"));
    EXPECT_EQ(res.rows, 2u);
    const auto meta = nlohmann::json::parse(slurp(dir / "w_001.meta.json"));
    EXPECT_TRUE(meta.contains("phase_space_convention"));
    const auto text = slurp(dir / "w_000.csv");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 62);
}

TEST(RunScenario, RevivalTimeRows) {
    const auto dir = scratch("rev");
    const auto cfg = parse_config(R"(observable: revival_time
lambda: {start: 0.0, end: 1.0, steps: 3}
n_bar: [2, 4]
output: r
)");
    const auto res = run_scenario(cfg, {dir, 1});
    EXPECT_EQ(res.rows, 6u);
    const auto text = slurp(dir / "r.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "lambda,n_bar,value");
}

TEST(Sweep, EmptyAxisRejected) {
    const auto cfg = parse_config(kInversion);
    EXPECT_THROW(sweep(cfg, SweepAxis::alpha, {scratch("sw"), 1}), ConfigError);
}

TEST(Sweep, AlphaAxisAddsColumn) {
    const auto dir = scratch("swa");
    auto cfg = parse_config(std::string(kInversion) + "alpha_values: [0.5, 1.0, 2.0]\n");
    const auto res = sweep(cfg, SweepAxis::alpha, {dir, 1});
    EXPECT_EQ(res.rows, 2u * 3u * 5u);
    const auto text = slurp(dir / "inv.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "lambda,alpha,gt,value");
}

TEST(Sweep, GtAxisWithCustomField) {
    const auto dir = scratch("swg");
    const auto cfg = parse_config(R"(observable: entropy
initial: {atom: excited, field: custom, amplitudes: [[0.6, 0], [0, 0.8]]}
lambda: [0.2]
time: {start: 0, end: 2, steps: 3}
output: c
)");
    const auto res = sweep(cfg, SweepAxis::gt, {dir, 1});
    EXPECT_EQ(res.rows, 3u);
    EXPECT_EQ(res.n_max, 1);
    const auto text = slurp(dir / "c.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "lambda,gt,value");
}

TEST(RunScenario, VacuumMandelIsUndefinedNotZero) {
    const auto dir = scratch("vac");
    const auto cfg = parse_config(R"(observable: mandel
initial: {atom: excited, field: fock, n: 0}
lambda: [0.0]
time: [0.0, 1.0]
output: v
)");
    run_scenario(cfg, {dir, 1});
    const auto text = slurp(dir / "v.csv");
    EXPECT_NE(text.find("0,0,nan"), std::string::npos);
}

TEST(EnumParsing, RoundTrip) {
    for (auto o : {Observable::inversion, Observable::revival_time, Observable::mandel, Observable::wigner,
                   Observable::negativity, Observable::entropy}) {
        EXPECT_EQ(parse_observable(to_string(o)), o);
    }
    for (auto a : {SweepAxis::lambda, SweepAxis::gt, SweepAxis::alpha}) EXPECT_EQ(parse_axis(to_string(a)), a);
    EXPECT_FALSE(parse_observable("entanglement").has_value());
}
