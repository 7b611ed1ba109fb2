// SPDX-License-Identifier: MIT
// roughfunc <subcommand> --config <path> [--out <dir>] [--seed <u64>] [--jobs <k>]
//
// Exit status: 0 all checks pass, 1 a check failed (named on stderr), 2 bad
// configuration or usage.

#include <omp.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "roughfunc/config.hpp"
#include "roughfunc/experiments.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void log(const std::string& msg) { std::cerr << "[roughfunc] " << msg << '\n'; }

std::filesystem::path default_out() {
    if (const char* env = std::getenv("ROUGHFUNC_OUT"); env && *env) return env;
    return "roughfunc_out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerics for rough functional Itô calculus"};
    app.set_version_flag("--version", std::string(ROUGHFUNC_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int jobs = 0;

    for (const auto& name : roughfunc::subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config (defaults apply when omitted)");
        sub->add_option("--out", out_dir, "output directory (default $ROUGHFUNC_OUT or ./roughfunc_out)");
        sub->add_option("--seed", seed, "master seed override");
        sub->add_option("--jobs", jobs, "OpenMP threads")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    const std::string subcommand = app.get_subcommands().front()->get_name();
    if (jobs > 0) omp_set_num_threads(jobs);

    roughfunc::ExperimentConfig cfg;
    try {
        cfg = config_path.empty() ? roughfunc::default_config(subcommand) : roughfunc::load_config(config_path, subcommand);
        if (seed) roughfunc::override_seed(cfg, *seed);
    } catch (const roughfunc::ConfigError& e) {
        log(std::string("invalid config: ") + e.what());
        return kExitConfig;
    }

    const std::filesystem::path dir = out_dir.empty() ? default_out() : std::filesystem::path(out_dir);
    log(subcommand + ": seed " + std::to_string(cfg.seed) + ", output " + dir.string());

    const auto t0 = std::chrono::steady_clock::now();
    roughfunc::RunOutput result;
    try {
        result = roughfunc::run_experiment(cfg);
    } catch (const roughfunc::ConfigError& e) {
        log(std::string("invalid config: ") + e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log(std::string("invalid config: ") + e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        log(std::string("error: ") + e.what());
        return kExitFail;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    try {
        roughfunc::write_run(dir, cfg, result, wall);
    } catch (const std::exception& e) {
        log(std::string("cannot write outputs: ") + e.what());
        return kExitFail;
    }

    bool ok = true;
    for (const auto& c : result.checks) {
        const bool pass = c.pass();
        ok = ok && pass;
        std::string line = (pass ? "PASS " : "FAIL ") + c.name;
        if (c.criterion > 0) line += " (criterion " + std::to_string(c.criterion) + ")";
        line += ": " + c.detail();
        if (c.time_limit > 0.0 && c.seconds > c.time_limit)
            line += "; runtime " + std::to_string(c.seconds) + "s over " + std::to_string(c.time_limit) + "s";
        log(line);
        if (!c.note.empty()) log("  note: " + c.note);
    }
    log("wrote " + std::to_string(result.files.size() + 1) + " files in " + std::to_string(wall) + "s");
    return ok ? 0 : kExitFail;
}
