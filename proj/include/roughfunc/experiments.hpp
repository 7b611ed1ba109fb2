// SPDX-License-Identifier: MIT
/**
 * Experiment runners behind the CLI subcommands.
 *
 * Every runner is a pure function of its configuration: it returns the checks
 * it evaluated and the CSV payloads to write, nothing touches the filesystem
 * until write_run().
 */
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "roughfunc/config.hpp"

namespace roughfunc {

struct CheckPart {
    std::string label;
    double measured = 0.0;
    double threshold = 0.0;
    bool upper = true;  ///< pass when measured <= threshold; otherwise measured >= threshold

    bool pass() const;
};

struct CheckResult {
    int criterion = 0;  ///< 0 for checks outside the acceptance list
    std::string name;
    std::vector<CheckPart> parts;
    double seconds = 0.0;
    double time_limit = 0.0;  ///< 0: unlimited
    std::string note;

    bool pass() const;
    /// "label=measured<=threshold; ..." with every number at 17 significant digits.
    std::string detail() const;
};

struct RunOutput {
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> files;  ///< file name, content

    bool pass() const;
};

RunOutput run_verify_algebra(const ExperimentConfig& cfg);
RunOutput run_taylor_bv(const ExperimentConfig& cfg);
RunOutput run_remainder_scaling(const ExperimentConfig& cfg);
RunOutput run_rough_integral(const ExperimentConfig& cfg);
RunOutput run_ito_residual(const ExperimentConfig& cfg);
/// All acceptance criteria at their stated settings, one row each in report.csv.
RunOutput run_report(const ExperimentConfig& cfg);

RunOutput run_experiment(const ExperimentConfig& cfg);

/// Writes the CSV payloads atomically plus manifest.json (config echo, version,
/// wall-clock, per-check results). Only manifest.json carries timings.
void write_run(const std::filesystem::path& dir, const ExperimentConfig& cfg, const RunOutput& out,
               double wall_seconds);

}  // namespace roughfunc
