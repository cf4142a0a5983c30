// curvjc: command-line front end for the curvature-dependent JCM scenarios.
//
//   curvjc run <config>
//   curvjc sweep <config> --axis lambda|gt|alpha
//   curvjc validate <config>
//   curvjc preset fig1..fig9 --out <dir>
//
// Exit codes: 0 success, 2 config error, 3 numerical invariant violation.
// CURVJC_OUTPUT_DIR overrides the output directory of run/sweep.

#include "curvjc/errors.hpp"
#include "curvjc/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

std::filesystem::path output_dir_or(const std::string& fallback) {
    if (const char* env = std::getenv("CURVJC_OUTPUT_DIR"); env && *env) return env;
    return fallback;
}

void report(const curvjc::RunResult& r) {
    for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
    std::cout << "rows: " << r.rows << ", n_max: " << r.n_max
              << ", max norm residual: " << r.max_norm_residual << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature-dependent Jaynes-Cummings model: dynamics and nonclassicality"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);

    std::string config_path;
    std::string out_dir = ".";

    auto* run = app.add_subcommand("run", "Run a scenario config");
    run->add_option("config", config_path, "Scenario YAML file")->required();
    run->add_option("--out", out_dir, "Output directory");

    std::string axis_name;
    auto* sweep = app.add_subcommand("sweep", "Cross-product sweep of a scenario");
    sweep->add_option("config", config_path, "Scenario YAML file")->required();
    sweep->add_option("--axis", axis_name, "lambda | gt | alpha")->required();
    sweep->add_option("--out", out_dir, "Output directory");

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
    validate->add_option("config", config_path, "Scenario YAML file")->required();

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run one of the built-in preset scenarios");
    preset->add_option("name", preset_name, "fig1 .. fig9")->required();
    preset->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*validate) {
            const auto d = curvjc::validate_config_file(config_path);
            for (const auto& m : d.messages) (d.ok ? std::cout : std::cerr) << m << '\n';
            return d.ok ? 0 : kExitConfig;
        }

        curvjc::RunOptions options;
        options.threads = threads;
        if (*preset) {
            options.output_dir = out_dir;
            report(curvjc::run_preset(preset_name, options));
            return 0;
        }

        options.output_dir = output_dir_or(out_dir);
        const auto cfg = curvjc::load_config(config_path);
        if (*run) {
            report(curvjc::run_scenario(cfg, options));
        } else {
            const auto axis = curvjc::parse_axis(axis_name);
            if (!axis) throw curvjc::ConfigError("unknown sweep axis '" + axis_name + "' (lambda|gt|alpha)");
            report(curvjc::sweep(cfg, *axis, options));
        }
        return 0;
    } catch (const curvjc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvjc::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvjc::InvariantError& e) {
        std::cerr << "numerical invariant violated [" << e.invariant() << "]: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
