// scenario.hpp: declarative scenario runner behind the curvjc CLI
//
// A scenario is a YAML file naming one observable, the physical parameters,
// the initial field and the (λ, gt) sampling. Running it writes a long-form
// CSV (or one matrix CSV per Wigner snapshot) and a JSON metadata sidecar that
// records every parameter, defaulted or not.

#pragma once

#include "curvjc/jc_dynamics.hpp"
#include "curvjc/phase_space.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curvjc {

enum class Observable { inversion, revival_time, mandel, wigner, negativity, entropy };
enum class SweepAxis { lambda, gt, alpha };

std::string_view to_string(Observable o);
std::string_view to_string(SweepAxis a);
std::optional<Observable> parse_observable(std::string_view s);
std::optional<SweepAxis> parse_axis(std::string_view s);

/// Malformed or invariant-violating configuration. Carries the source
/// position (1-based; 0 when unknown) and the offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::string field = {}, int line = 0, int column = 0);

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    std::string field_;
    int line_;
    int column_;
};

struct TimeRange {
    double start = 0.0;
    double end = 0.0;
    int steps = 0;

    std::vector<double> samples() const;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::string source;  // file path or preset name, for metadata
    Observable observable = Observable::inversion;

    SystemParams params;              // params.lambda is ignored; see lambda_values
    bool frequencies_defaulted = true;  // omega/omega_eg not given explicitly
    InitialField initial = CoherentField{complex{1.0, 0.0}};

    std::optional<TimeRange> time_range;
    std::vector<double> times;  // resolved sample times (gt)
    std::vector<double> lambda_values;
    std::vector<double> alpha_values;  // optional, coherent initial field only
    std::vector<double> n_bar_values;  // revival_time only
    int revival_index = 1;

    std::optional<PhaseGrid> grid;  // wigner/negativity; default grid when absent
    double truncation_epsilon = 1e-12;
    std::optional<int> n_max;  // explicit truncation override

    std::string output_path;
    std::uint64_t seed = 0;  // reserved

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
    PhaseGrid effective_grid() const { return grid.value_or(PhaseGrid{}); }
    /// Truncation n_max used for the given coherent amplitude (or the configured field).
    int truncation(std::optional<double> alpha = std::nullopt) const;
};

ScenarioConfig parse_config(std::string_view yaml_text, std::string source = "<string>");
ScenarioConfig load_config(const std::filesystem::path& path);

struct Diagnostics {
    bool ok = false;
    std::vector<std::string> messages;
    int n_max = 0;
};

/// Parse + invariant check + truncation report, no computation.
Diagnostics validate_config_file(const std::filesystem::path& path);

struct RunOptions {
    std::filesystem::path output_dir = ".";
    int threads = 0;  // 0: runtime default
};

struct RunResult {
    std::vector<std::filesystem::path> files;
    int n_max = 0;
    double max_norm_residual = 0.0;
    std::size_t rows = 0;
};

/// Executes every (λ, gt) point of the scenario. Throws InvariantError on a
/// numerical invariant violation.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {});

/// Cross product over λ × α × gt (row order: λ outer, gt inner). The named
/// axis must be populated in the config.
RunResult sweep(const ScenarioConfig& cfg, SweepAxis axis, const RunOptions& options = {});

std::vector<std::string> preset_names();
std::optional<std::string_view> preset_text(std::string_view name);
RunResult run_preset(std::string_view name, const RunOptions& options = {});

}  // namespace curvjc
