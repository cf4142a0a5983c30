// Scenario execution and output writing.

#include "curvjc/scenario.hpp"

#include "curvjc/entanglement.hpp"
#include "curvjc/errors.hpp"
#include "curvjc/observables.hpp"
#include "curvjc/version.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

namespace curvjc {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kStateNormTol = 1e-10;
constexpr double kWignerNormTol = 1e-6;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.17g}", v);
}

struct Point {
    double lambda = 0.0;
    double alpha = 0.0;
    double gt = 0.0;
};

struct ScalarRow {
    double value = 0.0;
    double error_estimate = 0.0;
    double norm_residual = 0.0;
};

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

fs::path resolve_stem(const ScenarioConfig& cfg, const RunOptions& options) {
    const fs::path out = cfg.output_path;
    return out.is_absolute() ? out : options.output_dir / out;
}

ordered_json initial_json(const InitialField& field) {
    ordered_json j;
    if (const auto* c = std::get_if<CoherentField>(&field)) {
        j["field"] = "coherent";
        j["alpha"] = {c->alpha.real(), c->alpha.imag()};
    } else if (const auto* f = std::get_if<FockField>(&field)) {
        j["field"] = "fock";
        j["n"] = f->n;
    } else {
        const auto& amps = std::get<CustomField>(field).amplitudes;
        j["field"] = "custom";
        auto arr = ordered_json::array();
        for (const auto& a : amps) arr.push_back({a.real(), a.imag()});
        j["amplitudes"] = arr;
    }
    j["atom"] = "excited";
    return j;
}

ordered_json grid_json(const PhaseGrid& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"p_min", g.p_min},
            {"p_max", g.p_max}, {"nx", g.nx},       {"np", g.np}};
}

ordered_json base_metadata(const ScenarioConfig& cfg) {
    ordered_json m;
    m["name"] = cfg.name;
    m["source"] = cfg.source;
    m["observable"] = std::string(to_string(cfg.observable));
    m["library_version"] = kVersion;
    m["params"] = {{"omega", cfg.params.omega}, {"omega_eg", cfg.params.omega_eg}, {"g", cfg.params.g}};
    m["initial"] = initial_json(cfg.initial);
    m["lambda"] = cfg.lambda_values;
    if (cfg.observable == Observable::revival_time) {
        m["n_bar"] = cfg.n_bar_values;
        m["revival_index"] = cfg.revival_index;
    } else {
        if (cfg.time_range) {
            m["time_range"] = {{"start", cfg.time_range->start},
                               {"end", cfg.time_range->end},
                               {"steps", cfg.time_range->steps}};
        }
        m["time"] = cfg.times;
    }
    if (!cfg.alpha_values.empty()) m["alpha_values"] = cfg.alpha_values;
    if (cfg.observable == Observable::wigner || cfg.observable == Observable::negativity) {
        m["grid"] = grid_json(cfg.effective_grid());
        m["phase_space_convention"] =
            "hbar = 1, x = (a + a^dagger)/sqrt(2); coherent |alpha> centred at (sqrt2 Re alpha, sqrt2 Im alpha)";
    }
    m["truncation"] = {{"epsilon", cfg.truncation_epsilon}};
    if (cfg.n_max) m["truncation"]["n_max_override"] = *cfg.n_max;
    m["seed"] = cfg.seed;
    m["units"] = "hbar = 1, time is gt, frequencies in units of g";
    m["assumptions"] = {
        {"frequencies_defaulted", cfg.frequencies_defaulted},
        {"note",
         "omega and omega_eg were not given and default to 1 (units of g); the lambda-dependent "
         "detuning omega_eg - omega(n lambda + gamma) scales with omega, so results depend on this pair"}};
    return m;
}

void write_metadata(const fs::path& path, const ordered_json& meta) {
    auto out = open_output(path);
    out << meta.dump(2) << '\n';
}

std::vector<double> alphas_for(const ScenarioConfig& cfg) {
    if (!cfg.alpha_values.empty()) return cfg.alpha_values;
    if (const auto* c = std::get_if<CoherentField>(&cfg.initial)) return {c->alpha.real()};
    return {std::numeric_limits<double>::quiet_NaN()};
}

AmplitudeVector initial_amplitudes(const ScenarioConfig& cfg, double alpha, int n_max) {
    if (const auto* c = std::get_if<CoherentField>(&cfg.initial)) {
        const complex a = cfg.alpha_values.empty() ? c->alpha : complex{alpha, 0.0};
        return coherent_amplitudes(a, n_max);
    }
    return field_amplitudes(cfg.initial, n_max);
}

void check_state(const JointState& s) {
    const double residual = std::abs(norm(s) - 1.0);
    if (residual > kStateNormTol) {
        throw InvariantError("state normalization", fmt::format("|norm - 1| = {:.3e} at gt = {}", residual, s.time));
    }
}

ScalarRow evaluate_scalar(Observable obs, const JointState& s, const PhaseGrid& grid, double lambda) {
    ScalarRow row;
    row.norm_residual = std::abs(norm(s) - 1.0);
    switch (obs) {
        case Observable::inversion:
            row.value = population_inversion(s);
            break;
        case Observable::mandel:
            try {
                row.value = mandel_parameter(s);
            } catch (const UndefinedStatistic&) {
                row.value = std::numeric_limits<double>::quiet_NaN();
            }
            break;
        case Observable::entropy:
            row.value = atom_entropy(reduced_atom_density(s));
            break;
        case Observable::negativity: {
            const auto w = wigner(reduced_field_density(s), grid, s.time, lambda);
            const auto neg = negativity(w);
            const double nres = std::abs(neg.normalization - 1.0);
            if (nres > std::max(kWignerNormTol, neg.error_estimate)) {
                throw InvariantError("Wigner normalization",
                                     fmt::format("|integral W - 1| = {:.3e} at lambda = {}, gt = {}", nres,
                                                 lambda, s.time));
            }
            row.value = neg.value;
            row.error_estimate = neg.error_estimate;
            break;
        }
        default:
            break;
    }
    return row;
}

class ThreadScope {
public:
    explicit ThreadScope(int threads) {
#ifdef _OPENMP
        previous_ = omp_get_max_threads();
        if (threads > 0) omp_set_num_threads(threads);
#else
        (void)threads;
#endif
    }
    ~ThreadScope() {
#ifdef _OPENMP
        omp_set_num_threads(previous_);
#endif
    }
    ThreadScope(const ThreadScope&) = delete;
    ThreadScope& operator=(const ThreadScope&) = delete;

private:
    int previous_ = 1;
};

RunResult run_revival(const ScenarioConfig& cfg, const fs::path& stem) {
    RunResult result;
    const fs::path csv = stem.string() + ".csv";
    auto out = open_output(csv);
    out << "lambda,n_bar,value\n";
    for (const double lambda : cfg.lambda_values) {
        SystemParams p = cfg.params;
        p.lambda = lambda;
        for (const double n_bar : cfg.n_bar_values) {
            out << num(lambda) << ',' << num(n_bar) << ',' << num(revival_time(p, n_bar, cfg.revival_index))
                << '\n';
            ++result.rows;
        }
    }
    result.files.push_back(csv);
    return result;
}

RunResult run_wigner(const ScenarioConfig& cfg, const std::vector<Point>& points, int n_max,
                     const fs::path& stem, ordered_json meta, bool with_alpha) {
    RunResult result;
    result.n_max = n_max;
    const PhaseGrid grid = cfg.effective_grid();
    const fs::path index_path = stem.string() + ".csv";
    auto index = open_output(index_path);
    index << (with_alpha ? "lambda,alpha,gt,file,normalization,min_value\n"
                         : "lambda,gt,file,normalization,min_value\n");

    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& pt = points[k];
        SystemParams p = cfg.params;
        p.lambda = pt.lambda;
        const auto state = evolve_excited(initial_amplitudes(cfg, pt.alpha, n_max), pt.gt, p);
        check_state(state);
        result.max_norm_residual = std::max(result.max_norm_residual, std::abs(norm(state) - 1.0));

        const auto w = wigner(reduced_field_density(state), grid, pt.gt, pt.lambda);
        const auto neg = negativity(w);
        const double nres = std::abs(neg.normalization - 1.0);
        if (nres > std::max(kWignerNormTol, neg.error_estimate)) {
            throw InvariantError("Wigner normalization",
                                 fmt::format("|integral W - 1| = {:.3e} at lambda = {}, gt = {}", nres,
                                             pt.lambda, pt.gt));
        }

        const std::string base = fmt::format("{}_{:03d}", stem.filename().string(), k);
        const fs::path matrix_path = stem.parent_path() / (base + ".csv");
        {
            auto out = open_output(matrix_path);
            // header: p values; first column: x values
            out << "x\\p";
            for (int j = 0; j < grid.np; ++j) out << ',' << num(grid.p(j));
            out << '\n';
            for (int i = 0; i < grid.nx; ++i) {
                out << num(grid.x(i));
                for (int j = 0; j < grid.np; ++j) out << ',' << num(w.values(i, j));
                out << '\n';
            }
        }
        ordered_json side = meta;
        side["lambda_value"] = pt.lambda;
        side["gt"] = pt.gt;
        if (with_alpha) side["alpha"] = pt.alpha;
        side["n_max"] = n_max;
        side["normalization"] = neg.normalization;
        side["normalization_residual"] = neg.normalization - 1.0;
        side["negativity"] = neg.value;
        side["quadrature_error_estimate"] = neg.error_estimate;
        side["layout"] = "row i: x index, column j: p index; first row holds p, first column holds x";
        const fs::path side_path = stem.parent_path() / (base + ".meta.json");
        write_metadata(side_path, side);

        index << num(pt.lambda) << ',';
        if (with_alpha) index << num(pt.alpha) << ',';
        index << num(pt.gt) << ',' << matrix_path.filename().string() << ',' << num(neg.normalization)
              << ',' << num(w.values.minCoeff()) << '\n';
        result.files.push_back(matrix_path);
        result.files.push_back(side_path);
        ++result.rows;
    }
    result.files.insert(result.files.begin(), index_path);
    return result;
}

RunResult execute(const ScenarioConfig& cfg, const RunOptions& options, bool with_alpha,
                  std::optional<SweepAxis> axis) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    ThreadScope threads(options.threads);

    const fs::path stem = resolve_stem(cfg, options);
    ordered_json meta = base_metadata(cfg);
    if (axis) meta["sweep_axis"] = std::string(to_string(*axis));

    RunResult result;
    if (cfg.observable == Observable::revival_time) {
        result = run_revival(cfg, stem);
    } else {
        const auto alphas = alphas_for(cfg);
        const int n_max = cfg.truncation();
        meta["n_max"] = n_max;

        std::vector<Point> points;
        for (const double l : cfg.lambda_values)
            for (const double a : alphas)
                for (const double t : cfg.times) points.push_back({l, a, t});

        if (cfg.observable == Observable::wigner) {
            result = run_wigner(cfg, points, n_max, stem, meta, with_alpha);
        } else {
            result.n_max = n_max;
            const PhaseGrid grid = cfg.effective_grid();
            std::vector<ScalarRow> rows(points.size());
            std::vector<std::string> errors(points.size());
            std::vector<std::string> error_names(points.size());
            // Points are independent; results are gathered by index so the
            // output order never depends on scheduling.
            const long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
            for (long k = 0; k < count; ++k) {
                try {
                    const auto& pt = points[k];
                    SystemParams p = cfg.params;
                    p.lambda = pt.lambda;
                    const auto state = evolve_excited(initial_amplitudes(cfg, pt.alpha, n_max), pt.gt, p);
                    check_state(state);
                    rows[k] = evaluate_scalar(cfg.observable, state, grid, pt.lambda);
                } catch (const InvariantError& e) {
                    error_names[k] = e.invariant();
                    errors[k] = e.what();
                } catch (const std::exception& e) {
                    errors[k] = e.what();
                }
            }
            for (std::size_t k = 0; k < points.size(); ++k) {
                if (errors[k].empty()) continue;
                if (!error_names[k].empty()) throw InvariantError(error_names[k], errors[k]);
                throw std::runtime_error(errors[k]);
            }

            const fs::path csv = stem.string() + ".csv";
            auto out = open_output(csv);
            const bool neg = cfg.observable == Observable::negativity;
            out << (with_alpha ? "lambda,alpha,gt,value" : "lambda,gt,value")
                << (neg ? ",error_estimate\n" : "\n");
            for (std::size_t k = 0; k < points.size(); ++k) {
                out << num(points[k].lambda) << ',';
                if (with_alpha) out << num(points[k].alpha) << ',';
                out << num(points[k].gt) << ',' << num(rows[k].value);
                if (neg) out << ',' << num(rows[k].error_estimate);
                out << '\n';
                result.max_norm_residual = std::max(result.max_norm_residual, rows[k].norm_residual);
            }
            result.rows = points.size();
            result.files.push_back(csv);
        }
        meta["max_norm_residual"] = result.max_norm_residual;
    }
    meta["rows"] = result.rows;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    meta["wall_time_seconds"] = elapsed.count();
    const fs::path meta_path = stem.string() + ".meta.json";
    write_metadata(meta_path, meta);
    result.files.push_back(meta_path);
    return result;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
    return execute(cfg, options, !cfg.alpha_values.empty(), std::nullopt);
}

RunResult sweep(const ScenarioConfig& cfg, SweepAxis axis, const RunOptions& options) {
    switch (axis) {
        case SweepAxis::lambda:
            if (cfg.lambda_values.empty()) throw ConfigError("sweep axis 'lambda' has no values", "lambda");
            break;
        case SweepAxis::gt:
            if (cfg.observable == Observable::revival_time) {
                throw ConfigError("revival_time has no gt axis", "time");
            }
            if (cfg.times.empty()) throw ConfigError("sweep axis 'gt' has no values", "time");
            break;
        case SweepAxis::alpha:
            if (cfg.alpha_values.empty()) {
                throw ConfigError("sweep axis 'alpha' has no values", "alpha_values");
            }
            if (cfg.observable == Observable::revival_time) {
                throw ConfigError("revival_time has no alpha axis", "alpha_values");
            }
            break;
    }
    return execute(cfg, options, !cfg.alpha_values.empty(), axis);
}

}  // namespace curvjc
