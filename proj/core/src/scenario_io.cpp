// YAML parsing, validation and the compiled-in presets.

#include "curvjc/scenario.hpp"

#include "curvjc/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace curvjc {

namespace {

#include "curvjc_presets.inc"

std::string with_position(const std::string& message, const std::string& field, int line, int col) {
    std::ostringstream os;
    if (line > 0) os << "line " << line << ", column " << col << ": ";
    if (!field.empty()) os << "'" << field << "': ";
    os << message;
    return os.str();
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) {
    const auto mark = node.Mark();
    const int line = mark.is_null() ? 0 : mark.line + 1;
    const int col = mark.is_null() ? 0 : mark.column + 1;
    throw ConfigError(msg, field, line, col);
}

void reject_unknown_keys(const YAML::Node& map, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(kv.first, where.empty() ? key : where + "." + key, "unknown key");
        }
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) fail(node, field, "expected a scalar value");
    try {
        return node.as<T>();
    } catch (const YAML::BadConversion&) {
        fail(node, field, "cannot convert '" + node.Scalar() + "'");
    }
}

TimeRange parse_range(const YAML::Node& node, const std::string& field) {
    reject_unknown_keys(node, field, {"start", "end", "steps"});
    for (const char* key : {"start", "end", "steps"}) {
        if (!node[key]) fail(node, field, std::string("range needs '") + key + "'");
    }
    TimeRange r;
    r.start = scalar<double>(node["start"], field + ".start");
    r.end = scalar<double>(node["end"], field + ".end");
    r.steps = scalar<int>(node["steps"], field + ".steps");
    if (r.steps < 2) fail(node["steps"], field + ".steps", "n_steps >= 2 invariant violated");
    if (!(r.end > r.start)) fail(node, field, "end > start invariant violated");
    return r;
}

/// A list of numbers or a {start, end, steps} range.
std::vector<double> parse_values(const YAML::Node& node, const std::string& field,
                                 std::optional<TimeRange>* range_out = nullptr) {
    if (node.IsSequence()) {
        std::vector<double> out;
        for (std::size_t i = 0; i < node.size(); ++i) {
            out.push_back(scalar<double>(node[i], field + "[" + std::to_string(i) + "]"));
        }
        return out;
    }
    if (node.IsMap()) {
        const auto r = parse_range(node, field);
        if (range_out) *range_out = r;
        return r.samples();
    }
    if (node.IsScalar()) return {scalar<double>(node, field)};
    fail(node, field, "expected a number, a list or a {start, end, steps} range");
}

complex parse_complex(const YAML::Node& node, const std::string& field) {
    if (node.IsSequence()) {
        if (node.size() != 2) fail(node, field, "complex values are written [re, im]");
        return {scalar<double>(node[0], field + "[0]"), scalar<double>(node[1], field + "[1]")};
    }
    return {scalar<double>(node, field), 0.0};
}

InitialField parse_initial(const YAML::Node& node) {
    if (!node.IsMap()) fail(node, "initial", "expected a map");
    reject_unknown_keys(node, "initial", {"atom", "field", "alpha", "n", "amplitudes"});
    if (node["atom"]) {
        const auto atom = scalar<std::string>(node["atom"], "initial.atom");
        if (atom != "excited") {
            fail(node["atom"], "initial.atom", "only an initially excited atom is supported");
        }
    }
    const auto kind = node["field"] ? scalar<std::string>(node["field"], "initial.field")
                                    : std::string("coherent");
    if (kind == "coherent") {
        if (!node["alpha"]) fail(node, "initial.alpha", "coherent field needs 'alpha'");
        return CoherentField{parse_complex(node["alpha"], "initial.alpha")};
    }
    if (kind == "fock") {
        if (!node["n"]) fail(node, "initial.n", "Fock field needs 'n'");
        const int n = scalar<int>(node["n"], "initial.n");
        if (n < 0) fail(node["n"], "initial.n", "Fock index must be >= 0");
        return FockField{n};
    }
    if (kind == "custom") {
        const auto& amps = node["amplitudes"];
        if (!amps || !amps.IsSequence() || amps.size() == 0) {
            fail(node, "initial.amplitudes", "custom field needs a nonempty 'amplitudes' list");
        }
        CustomField f;
        double total = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            f.amplitudes.push_back(parse_complex(amps[i], "initial.amplitudes[" + std::to_string(i) + "]"));
            total += std::norm(f.amplitudes.back());
        }
        if (std::abs(total - 1.0) > 1e-12) {
            fail(amps, "initial.amplitudes", "custom amplitudes must be normalized within 1e-12");
        }
        return f;
    }
    fail(node["field"], "initial.field", "unknown field kind '" + kind + "' (coherent|fock|custom)");
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string field, int line, int column)
    : std::runtime_error(with_position(message, field, line, column)),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

std::vector<double> TimeRange::samples() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    const double h = (end - start) / (steps - 1);
    for (int i = 0; i < steps; ++i) out[i] = start + i * h;
    out.back() = end;
    return out;
}

ScenarioConfig parse_config(std::string_view yaml_text, std::string source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(e.msg, "", e.mark.line + 1, e.mark.column + 1);
    }
    if (!root.IsMap()) throw ConfigError("top level must be a map");
    reject_unknown_keys(root, "",
                        {"name", "observable", "params", "initial", "lambda", "time", "alpha_values",
                         "n_bar", "revival_index", "grid", "truncation", "output", "seed"});

    ScenarioConfig cfg;
    cfg.source = std::move(source);
    if (root["name"]) cfg.name = scalar<std::string>(root["name"], "name");

    if (!root["observable"]) throw ConfigError("missing required key", "observable");
    {
        const auto text = scalar<std::string>(root["observable"], "observable");
        const auto obs = parse_observable(text);
        if (!obs) {
            fail(root["observable"], "observable",
                 "unknown observable '" + text +
                     "' (inversion|revival_time|mandel|wigner|negativity|entropy)");
        }
        cfg.observable = *obs;
    }

    if (const auto& params = root["params"]) {
        reject_unknown_keys(params, "params", {"omega", "omega_eg", "g"});
        if (params["omega"]) cfg.params.omega = scalar<double>(params["omega"], "params.omega");
        if (params["omega_eg"]) cfg.params.omega_eg = scalar<double>(params["omega_eg"], "params.omega_eg");
        if (params["g"]) cfg.params.g = scalar<double>(params["g"], "params.g");
        cfg.frequencies_defaulted = !params["omega"] || !params["omega_eg"];
    }

    if (cfg.observable != Observable::revival_time) {
        if (!root["initial"]) throw ConfigError("missing required key", "initial");
        cfg.initial = parse_initial(root["initial"]);
    } else if (root["initial"]) {
        cfg.initial = parse_initial(root["initial"]);
    }

    if (!root["lambda"]) throw ConfigError("missing required key", "lambda");
    cfg.lambda_values = parse_values(root["lambda"], "lambda");
    for (std::size_t i = 0; i < cfg.lambda_values.size(); ++i) {
        if (!(cfg.lambda_values[i] >= 0.0)) {
            const auto& node = root["lambda"].IsSequence() ? root["lambda"][i] : root["lambda"];
            fail(node, "lambda", "lambda >= 0 invariant violated (got " +
                                     std::to_string(cfg.lambda_values[i]) + ")");
        }
    }

    if (root["time"]) cfg.times = parse_values(root["time"], "time", &cfg.time_range);
    if (root["alpha_values"]) cfg.alpha_values = parse_values(root["alpha_values"], "alpha_values");
    if (root["n_bar"]) cfg.n_bar_values = parse_values(root["n_bar"], "n_bar");
    if (root["revival_index"]) cfg.revival_index = scalar<int>(root["revival_index"], "revival_index");

    if (const auto& grid = root["grid"]) {
        reject_unknown_keys(grid, "grid", {"x_min", "x_max", "p_min", "p_max", "nx", "np"});
        PhaseGrid g;
        if (grid["x_min"]) g.x_min = scalar<double>(grid["x_min"], "grid.x_min");
        if (grid["x_max"]) g.x_max = scalar<double>(grid["x_max"], "grid.x_max");
        if (grid["p_min"]) g.p_min = scalar<double>(grid["p_min"], "grid.p_min");
        if (grid["p_max"]) g.p_max = scalar<double>(grid["p_max"], "grid.p_max");
        if (grid["nx"]) g.nx = scalar<int>(grid["nx"], "grid.nx");
        if (grid["np"]) g.np = scalar<int>(grid["np"], "grid.np");
        try {
            g.validate();
        } catch (const DomainError& e) {
            fail(grid, "grid", e.what());
        }
        cfg.grid = g;
    }

    if (const auto& trunc = root["truncation"]) {
        reject_unknown_keys(trunc, "truncation", {"epsilon", "n_max"});
        if (trunc["epsilon"]) cfg.truncation_epsilon = scalar<double>(trunc["epsilon"], "truncation.epsilon");
        if (trunc["n_max"]) cfg.n_max = scalar<int>(trunc["n_max"], "truncation.n_max");
    }

    cfg.output_path = root["output"] ? scalar<std::string>(root["output"], "output") : cfg.name;
    if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

void ScenarioConfig::validate() const {
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), "params");
    }
    if (lambda_values.empty()) throw ConfigError("lambda_values must be nonempty", "lambda");
    for (const double l : lambda_values) {
        if (!(l >= 0.0)) throw ConfigError("lambda >= 0 invariant violated", "lambda");
    }
    if (time_range) {
        if (time_range->steps < 2) throw ConfigError("n_steps >= 2 invariant violated", "time.steps");
        if (!(time_range->end > time_range->start)) {
            throw ConfigError("t_end > t_start invariant violated", "time");
        }
    }
    if (observable == Observable::revival_time) {
        if (n_bar_values.empty()) throw ConfigError("revival_time needs a nonempty n_bar list", "n_bar");
        for (const double n : n_bar_values) {
            if (!(n >= 0.0)) throw ConfigError("n_bar >= 0 invariant violated", "n_bar");
        }
        if (revival_index < 1) throw ConfigError("revival index m >= 1 invariant violated", "revival_index");
    } else {
        if (times.empty()) throw ConfigError("time samples must be nonempty", "time");
    }
    if (!alpha_values.empty() && !std::holds_alternative<CoherentField>(initial)) {
        throw ConfigError("alpha_values requires a coherent initial field", "alpha_values");
    }
    if (grid) {
        try {
            grid->validate();
        } catch (const DomainError& e) {
            throw ConfigError(e.what(), "grid");
        }
    }
    if (!(truncation_epsilon > 0.0)) throw ConfigError("epsilon > 0 invariant violated", "truncation.epsilon");
    if (n_max && *n_max < 0) throw ConfigError("n_max >= 0 invariant violated", "truncation.n_max");
    if (output_path.empty()) throw ConfigError("output path must be nonempty", "output");
}

int ScenarioConfig::truncation(std::optional<double> alpha) const {
    if (n_max) return *n_max;
    if (alpha) return state_truncation(complex{*alpha, 0.0}, truncation_epsilon);
    if (const auto* c = std::get_if<CoherentField>(&initial)) {
        int best = state_truncation(c->alpha, truncation_epsilon);
        for (const double a : alpha_values) {
            best = std::max(best, state_truncation(complex{a, 0.0}, truncation_epsilon));
        }
        return best;
    }
    return truncation_for(initial, truncation_epsilon);
}

Diagnostics validate_config_file(const std::filesystem::path& path) {
    Diagnostics d;
    try {
        const auto cfg = load_config(path);
        d.n_max = cfg.observable == Observable::revival_time ? 0 : cfg.truncation();
        d.ok = true;
        d.messages.push_back("OK");
        if (cfg.observable != Observable::revival_time) {
            d.messages.push_back("n_max = " + std::to_string(d.n_max));
        }
        if (cfg.frequencies_defaulted) {
            d.messages.push_back("note: omega/omega_eg not set; using the default omega = omega_eg = " +
                                 std::to_string(cfg.params.omega) + " g");
        }
    } catch (const ConfigError& e) {
        d.ok = false;
        d.messages.push_back(std::string("config error: ") + e.what());
    } catch (const InvariantError& e) {
        d.ok = false;
        d.messages.push_back(std::string("config error: ") + e.what());
    }
    return d;
}

std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::inversion: return "inversion";
        case Observable::revival_time: return "revival_time";
        case Observable::mandel: return "mandel";
        case Observable::wigner: return "wigner";
        case Observable::negativity: return "negativity";
        case Observable::entropy: return "entropy";
    }
    return "?";
}

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::lambda: return "lambda";
        case SweepAxis::gt: return "gt";
        case SweepAxis::alpha: return "alpha";
    }
    return "?";
}

std::optional<Observable> parse_observable(std::string_view s) {
    for (auto o : {Observable::inversion, Observable::revival_time, Observable::mandel,
                   Observable::wigner, Observable::negativity, Observable::entropy}) {
        if (to_string(o) == s) return o;
    }
    return std::nullopt;
}

std::optional<SweepAxis> parse_axis(std::string_view s) {
    for (auto a : {SweepAxis::lambda, SweepAxis::gt, SweepAxis::alpha}) {
        if (to_string(a) == s) return a;
    }
    return std::nullopt;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : kPresets) names.emplace_back(name);
    return names;
}

std::optional<std::string_view> preset_text(std::string_view name) {
    for (const auto& [n, text] : kPresets) {
        if (n == name) return text;
    }
    return std::nullopt;
}

RunResult run_preset(std::string_view name, const RunOptions& options) {
    const auto text = preset_text(name);
    if (!text) throw ConfigError("unknown preset '" + std::string(name) + "' (fig1..fig9)");
    return run_scenario(parse_config(*text, "preset:" + std::string(name)), options);
}

}  // namespace curvjc
