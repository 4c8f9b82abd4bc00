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

#ifndef MLEARN_PROTOCOLS_PROTOCOLS_H
#define MLEARN_PROTOCOLS_PROTOCOLS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "mlearn/measure/device.h"
#include "mlearn/protocols/channel.h"

namespace mlearn {

using Verdict = Hypothesis;

/// A verdict together with the statistic and threshold that produced it.
struct Decision {
    Verdict verdict;
    double statistic;
    double threshold;
};

/// Fraction of measuring-twice repetitions whose two outcomes agreed.
struct SharpnessEstimate {
    double mean = 0;
    std::size_t reps = 0;
    /// sqrt(mean (1 - mean) / reps).
    double std_error = 0;
    std::size_t collisions = 0;
    /// |mean - true sharpness|, filled in when the device's instrument is known.
    std::optional<double> bias;
};

SharpnessEstimate make_sharpness_estimate(std::size_t collisions, std::size_t reps);

struct RobustReport {
    /// Estimate from the repetitions whose coin routed the post-state back in.
    SharpnessEstimate estimate;
    /// Agreement rate on the repetitions whose second input was a fresh I/d.
    double baseline_rate = 0;
    std::size_t baseline_reps = 0;
    /// Four binomial standard errors of the baseline around 1/d.
    double baseline_tolerance = 0;
    /// False iff the baseline deviates from 1/d by more than `baseline_tolerance`.
    bool honest = true;
};

/// ceil(20 sqrt(d)).
std::size_t default_collision_queries(std::size_t d);

/// Number of pairs a < b with equal outcomes.
std::uint64_t count_collisions(std::span<const std::size_t> outcomes);

/// Midpoint of the expected collision counts under the two hypotheses:
/// C(N,2) (1/d + 2/(d+1)) / 2.
double collision_threshold(std::size_t n, std::size_t d);

/// Quantum iff count >= collision_threshold(n, d).
Decision collision_decision(std::uint64_t count, std::size_t n, std::size_t d);

/// Queries the fixed input |0> n times and thresholds the collision count.
/// Requires n >= 2, d >= 2 and a classical-only channel.
Decision collision_test(QueryChannel &channel, std::size_t n, RngStream &rng);
Decision collision_test(const Device &device, std::size_t n, RngStream &rng);

/// Measures I/d, measures the post-state again, and averages 1[i = j].
/// Unbiased for the sharpness whenever the Kraus operators are normal.
SharpnessEstimate measure_twice(QueryChannel &channel, std::size_t reps, RngStream &rng);
/// As above; for Custom devices also fills `bias` against the exact sharpness.
SharpnessEstimate measure_twice(const Device &device, std::size_t reps, RngStream &rng);

/// One repetition of the coin-routed protocol.
struct RobustRep {
    bool coin;
    std::size_t first;
    std::size_t second;
};
/// First query on I/d, then a fair coin: 0 re-measures the post-state, 1
/// measures a fresh I/d.
RobustRep robust_rep(QueryChannel &channel, RngStream &rng);

/// Throws InsufficientSubsample when every coin came up the same way.
RobustReport robust_measure_twice(QueryChannel &channel, std::size_t reps, RngStream &rng);
RobustReport robust_measure_twice(const Device &device, std::size_t reps, RngStream &rng);

/// Quantum iff est.mean >= 1/2. Requires d >= 2.
Decision decide_sharpness(const SharpnessEstimate &est, std::size_t d);

}  // namespace mlearn

#endif
