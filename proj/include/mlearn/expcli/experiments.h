// Copyright 2026 The mlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLEARN_EXPCLI_EXPERIMENTS_H
#define MLEARN_EXPCLI_EXPERIMENTS_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlearn/expcli/csv.h"
#include "mlearn/measure/device.h"
#include "mlearn/qcore/rng.h"
#include "mlearn/stats/success.h"

namespace mlearn {

/// Master seed used when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20260517;

inline constexpr std::string_view kVersion = "1.0.0";

/// Stream for cell `index` of `experiment` under `master`; equal to
/// RngStream(master, stable_hash(experiment, index)).
RngStream derive_seed(std::uint64_t master, std::string_view experiment, std::uint64_t index);

struct ExperimentConfig {
    /// collision | measure-twice | robust | sweep | verify-weingarten | verify-tv
    std::string experiment;
    std::vector<std::size_t> dims;
    /// Query count N (collision), repetitions (measure-twice, robust), T or
    /// T_max (verify-tv, verify-weingarten). Collision defaults to ceil(20 sqrt d).
    std::optional<std::size_t> n;
    std::size_t trials = 200;
    /// Success target of the sweep's minimal-budget search.
    double target = 2.0 / 3.0;
    std::uint64_t seed = kDefaultSeed;
    Backend backend = Backend::Fast;
    std::optional<std::filesystem::path> out;
    /// measure-twice only: run the coin-routed variant with twice the reps.
    bool robust = false;
    /// Also write raw per-trial rows to `<stem>.trials.csv`.
    bool per_trial = false;
    /// Fill elapsed_ms. Off by default so repeated runs are byte-identical.
    bool timing = false;
    /// 0 = all cores. Never changes the results.
    std::size_t threads = 0;
};

/// Throws UsageError for an unknown experiment and InvalidParameter for
/// out-of-range values.
void validate_config(const ExperimentConfig &cfg);

/// One simulated trial, for `--per-trial` output.
struct TrialRow {
    std::string experiment;
    std::size_t d;
    std::size_t n_queries;
    std::size_t trial;
    TrialRecord record;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<TrialRow> trial_rows;
    /// Sweep only: fitted log-log slopes of the minimal budgets.
    std::optional<double> collision_slope;
    std::optional<double> measure_twice_slope;
    /// False when a verify-* experiment found a bound violation.
    bool bounds_hold = true;
    double wall_ms = 0;
};

ExperimentResult run_experiment(const ExperimentConfig &cfg);

/// JSON sidecar text: config, version, fitted slopes and wall time.
std::string summary_json(const ExperimentConfig &cfg, const ExperimentResult &result);

std::string render_trial_csv(const std::vector<TrialRow> &rows);

/// Appends rows to cfg.out and rewrites `<stem>.summary.json`, plus
/// `<stem>.trials.csv` when per-trial output was requested. Throws IoError.
void write_outputs(const ExperimentConfig &cfg, const ExperimentResult &result);

}  // namespace mlearn

#endif
