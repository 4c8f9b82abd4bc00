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

#include "mlearn/stats/success.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlearn/errors.h"
#include "mlearn/qcore/parallel.h"

namespace mlearn {

namespace {

constexpr double kWilsonZ = 1.959963984540054;

Device trial_device(std::size_t d, Access access, const TrialOptions &opts, RngStream &rng, Hypothesis &truth) {
    if (opts.forced) {
        truth = *opts.forced;
        return make_hypothesis_device(truth, d, access, opts.backend, rng);
    }
    auto drawn = make_random_hypothesis(d, access, opts.backend, rng);
    truth = drawn.truth;
    return std::move(drawn.device);
}

}  // namespace

SuccessEstimate wilson_estimate(std::size_t successes, std::size_t trials) {
    SuccessEstimate out;
    out.trials = trials;
    out.successes = successes;
    if (trials == 0) {
        out.wilson_high = 1;
        return out;
    }
    auto n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = kWilsonZ * kWilsonZ;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = kWilsonZ * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    out.rate = p;
    out.wilson_low = std::max(0.0, center - half);
    out.wilson_high = std::min(1.0, center + half);
    return out;
}

std::vector<TrialRecord> run_collision_trials(std::size_t d, std::size_t n, std::size_t trials, const RngStream &rng,
                                              const TrialOptions &opts) {
    return parallel_map(trials, opts.threads, [&](std::size_t t) {
        RngStream trial_rng = rng.derive(t);
        TrialRecord rec;
        Device device = trial_device(d, Access::ClassicalOnly, opts, trial_rng, rec.truth);
        Decision decision = collision_test(device, n, trial_rng);
        rec.verdict = decision.verdict;
        rec.statistic = decision.statistic;
        return rec;
    });
}

std::vector<TrialRecord> run_measure_twice_trials(std::size_t d, std::size_t reps, std::size_t trials,
                                                  const RngStream &rng, const TrialOptions &opts, bool robust) {
    return parallel_map(trials, opts.threads, [&](std::size_t t) {
        RngStream trial_rng = rng.derive(t);
        TrialRecord rec;
        Device device = trial_device(d, Access::WithPostState, opts, trial_rng, rec.truth);
        SharpnessEstimate est;
        if (robust) {
            RobustReport report = robust_measure_twice(device, reps, trial_rng);
            est = report.estimate;
            rec.baseline = report.baseline_rate;
            rec.honest = report.honest;
        } else {
            est = measure_twice(device, reps, trial_rng);
        }
        Decision decision = decide_sharpness(est, d);
        rec.verdict = decision.verdict;
        rec.statistic = decision.statistic;
        return rec;
    });
}

SuccessEstimate summarize(std::span<const TrialRecord> records, std::optional<Hypothesis> only) {
    std::size_t trials = 0, successes = 0;
    for (const auto &r : records) {
        if (only && r.truth != *only) {
            continue;
        }
        trials++;
        successes += r.correct() ? 1 : 0;
    }
    return wilson_estimate(successes, trials);
}

SuccessEstimate summarize_robust(std::span<const TrialRecord> records, std::optional<Hypothesis> only) {
    std::size_t trials = 0, successes = 0;
    for (const auto &r : records) {
        if (only && r.truth != *only) {
            continue;
        }
        trials++;
        successes += (r.correct() && r.honest) ? 1 : 0;
    }
    return wilson_estimate(successes, trials);
}

SuccessEstimate empirical_success(std::size_t d, std::size_t n, std::size_t trials, const RngStream &rng,
                                  const TrialOptions &opts) {
    if (trials < 1) {
        throw InvalidParameter("empirical_success: trials must be at least 1");
    }
    auto records = run_collision_trials(d, n, trials, rng, opts);
    return summarize(records);
}

std::size_t minimal_budget_search(const SuccessFn &success, double target, std::size_t start, std::size_t cap) {
    if (!(target > 0.5 && target < 1.0)) {
        throw InvalidParameter("minimal_budget_search: target must lie in (0.5, 1), got " + std::to_string(target));
    }
    if (start < 1 || cap < start) {
        throw InvalidParameter("minimal_budget_search: need 1 <= start <= cap");
    }
    auto meets = [&](std::size_t n) { return success(n).rate >= target; };

    std::size_t lo = 0;  // largest budget known to miss the target (0 = none)
    std::size_t hi = start;
    while (!meets(hi)) {
        if (hi >= cap) {
            throw SearchFailure("minimal_budget_search: target " + std::to_string(target) + " not reached by cap " +
                                std::to_string(cap));
        }
        lo = hi;
        hi = std::min(hi * 2, cap);
    }
    if (lo == 0) {
        return hi;
    }
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (meets(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::size_t collision_search_cap(std::size_t d) {
    return static_cast<std::size_t>(std::floor(64.0 * std::sqrt(static_cast<double>(d))));
}

std::size_t minimal_query_search(std::size_t d, double target, std::size_t trials, const RngStream &rng,
                                 const TrialOptions &opts) {
    if (trials < 1) {
        throw InvalidParameter("minimal_query_search: trials must be at least 1");
    }
    SuccessFn success = [&](std::size_t n) { return empirical_success(d, n, trials, rng.derive(n), opts); };
    return minimal_budget_search(success, target, 2, collision_search_cap(d));
}

std::size_t minimal_reps_search(std::size_t d, double target, std::size_t trials, const RngStream &rng,
                                const TrialOptions &opts) {
    if (trials < 1) {
        throw InvalidParameter("minimal_reps_search: trials must be at least 1");
    }
    SuccessFn success = [&](std::size_t reps) {
        auto records = run_measure_twice_trials(d, reps, trials, rng.derive(reps), opts);
        return summarize(records);
    };
    return minimal_budget_search(success, target, 1, 1024);
}

}  // namespace mlearn
