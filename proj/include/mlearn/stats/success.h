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

#ifndef MLEARN_STATS_SUCCESS_H
#define MLEARN_STATS_SUCCESS_H

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mlearn/measure/device.h"
#include "mlearn/protocols/protocols.h"
#include "mlearn/qcore/rng.h"

namespace mlearn {

/// Success fraction with a 95% Wilson score interval.
struct SuccessEstimate {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double rate = 0;
    double wilson_low = 0;
    double wilson_high = 0;
};

SuccessEstimate wilson_estimate(std::size_t successes, std::size_t trials);

/// Outcome of one simulated distinguishing trial.
struct TrialRecord {
    Hypothesis truth = Hypothesis::Classical;
    Verdict verdict = Verdict::Classical;
    /// Collision count, or the sharpness estimate.
    double statistic = 0;
    /// Robust variant only: the fresh-input agreement rate and honesty flag.
    double baseline = 0;
    bool honest = true;

    bool correct() const {
        return truth == verdict;
    }
};

/// Options shared by the trial runners.
struct TrialOptions {
    Backend backend = Backend::Fast;
    /// Hypothesis for every trial; fair coin per trial when empty.
    std::optional<Hypothesis> forced;
    /// Worker threads, 0 = all cores. Results do not depend on this.
    std::size_t threads = 0;
};

/// Trial t draws its hypothesis, device and queries from rng.derive(t).
std::vector<TrialRecord> run_collision_trials(std::size_t d, std::size_t n, std::size_t trials, const RngStream &rng,
                                              const TrialOptions &opts = {});

/// Measuring-twice trials, decided by decide_sharpness. With `robust`, the
/// coin-routed variant runs instead and a trial only counts as correct when
/// the verdict is right and the honesty flag holds.
std::vector<TrialRecord> run_measure_twice_trials(std::size_t d, std::size_t reps, std::size_t trials,
                                                  const RngStream &rng, const TrialOptions &opts = {},
                                                  bool robust = false);

/// Counts correct trials, optionally restricted to one true hypothesis.
SuccessEstimate summarize(std::span<const TrialRecord> records, std::optional<Hypothesis> only = std::nullopt);
/// Robust trials count as successes only when the honesty flag also holds.
SuccessEstimate summarize_robust(std::span<const TrialRecord> records, std::optional<Hypothesis> only = std::nullopt);

/// Fair-prior success of the collision test with N queries.
SuccessEstimate empirical_success(std::size_t d, std::size_t n, std::size_t trials, const RngStream &rng,
                                  const TrialOptions &opts = {});

/// Success estimate as a function of the query budget.
using SuccessFn = std::function<SuccessEstimate(std::size_t)>;

/// Smallest budget n in [start, cap] with success(n).rate >= target: doubling
/// from `start` until the target is met, then bisection on the last bracket.
/// Throws InvalidParameter unless 0.5 < target < 1 and SearchFailure when the
/// cap is reached without meeting the target.
std::size_t minimal_budget_search(const SuccessFn &success, double target, std::size_t start, std::size_t cap);

/// floor(64 sqrt(d)).
std::size_t collision_search_cap(std::size_t d);

/// Minimal collision-test N reaching `target` under the fair prior. Budget n
/// is evaluated with trial streams derived from rng.derive(n).
std::size_t minimal_query_search(std::size_t d, double target, std::size_t trials, const RngStream &rng,
                                 const TrialOptions &opts = {});

/// Minimal measuring-twice repetition count reaching `target` (each rep
/// costs two queries). Searched over [1, 1024].
std::size_t minimal_reps_search(std::size_t d, double target, std::size_t trials, const RngStream &rng,
                                const TrialOptions &opts = {});

}  // namespace mlearn

#endif
