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

#include "mlearn/protocols/protocols.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mlearn/errors.h"

namespace mlearn {

namespace {

void require_nondegenerate(std::size_t d, const char *what) {
    if (d < 2) {
        throw DegenerateDimension(std::string(what) + ": d must be at least 2, both hypotheses coincide at d = 1");
    }
}

double pairs(std::size_t n) {
    auto x = static_cast<double>(n);
    return x * (x - 1) / 2;
}

}  // namespace

SharpnessEstimate make_sharpness_estimate(std::size_t collisions, std::size_t reps) {
    SharpnessEstimate est;
    est.reps = reps;
    est.collisions = collisions;
    if (reps > 0) {
        est.mean = static_cast<double>(collisions) / static_cast<double>(reps);
        est.std_error = std::sqrt(est.mean * (1 - est.mean) / static_cast<double>(reps));
    }
    return est;
}

std::size_t default_collision_queries(std::size_t d) {
    return static_cast<std::size_t>(std::ceil(20.0 * std::sqrt(static_cast<double>(d)) - 1e-9));
}

std::uint64_t count_collisions(std::span<const std::size_t> outcomes) {
    std::vector<std::size_t> sorted(outcomes.begin(), outcomes.end());
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t total = 0;
    std::size_t run = 1;
    for (std::size_t k = 1; k <= sorted.size(); k++) {
        if (k < sorted.size() && sorted[k] == sorted[k - 1]) {
            run++;
        } else {
            total += static_cast<std::uint64_t>(run) * (run - 1) / 2;
            run = 1;
        }
    }
    return total;
}

double collision_threshold(std::size_t n, std::size_t d) {
    auto dd = static_cast<double>(d);
    return pairs(n) * (1.0 / dd + 2.0 / (dd + 1.0)) / 2.0;
}

Decision collision_decision(std::uint64_t count, std::size_t n, std::size_t d) {
    double tau = collision_threshold(n, d);
    auto c = static_cast<double>(count);
    return {c >= tau ? Verdict::Quantum : Verdict::Classical, c, tau};
}

Decision collision_test(QueryChannel &channel, std::size_t n, RngStream &rng) {
    if (n < 2) {
        throw InvalidParameter("collision_test: need at least 2 queries, got " + std::to_string(n));
    }
    require_nondegenerate(channel.dim(), "collision_test");
    if (channel.access() != Access::ClassicalOnly) {
        throw AccessError("collision_test: expects a classical-only device");
    }
    std::vector<std::size_t> outcomes(n);
    for (auto &x : outcomes) {
        x = channel.query_fixed_zero(rng);
    }
    return collision_decision(count_collisions(outcomes), n, channel.dim());
}

Decision collision_test(const Device &device, std::size_t n, RngStream &rng) {
    DeviceChannel channel(device);
    return collision_test(channel, n, rng);
}

SharpnessEstimate measure_twice(QueryChannel &channel, std::size_t reps, RngStream &rng) {
    if (reps < 1) {
        throw InvalidParameter("measure_twice: reps must be at least 1");
    }
    require_nondegenerate(channel.dim(), "measure_twice");
    if (channel.access() != Access::WithPostState) {
        throw AccessError("measure_twice: device does not release post-measurement states");
    }
    std::size_t agree = 0;
    for (std::size_t r = 0; r < reps; r++) {
        Observation first = channel.query_mixed(rng);
        std::size_t second = channel.query_post_state(first, rng);
        agree += first.index == second ? 1 : 0;
    }
    return make_sharpness_estimate(agree, reps);
}

SharpnessEstimate measure_twice(const Device &device, std::size_t reps, RngStream &rng) {
    DeviceChannel channel(device);
    auto est = measure_twice(channel, reps, rng);
    if (const Instrument *inst = device.instrument()) {
        est.bias = std::abs(est.mean - sharpness(povm_of(*inst)));
    }
    return est;
}

RobustRep robust_rep(QueryChannel &channel, RngStream &rng) {
    Observation first = channel.query_mixed(rng);
    bool coin = rng.coin();
    std::size_t second = coin ? channel.query_mixed(rng).index : channel.query_post_state(first, rng);
    return {coin, first.index, second};
}

RobustReport robust_measure_twice(QueryChannel &channel, std::size_t reps, RngStream &rng) {
    if (reps < 2) {
        throw InvalidParameter("robust_measure_twice: reps must be at least 2");
    }
    require_nondegenerate(channel.dim(), "robust_measure_twice");
    if (channel.access() != Access::WithPostState) {
        throw AccessError("robust_measure_twice: device does not release post-measurement states");
    }
    std::size_t routed = 0, routed_agree = 0;
    std::size_t fresh = 0, fresh_agree = 0;
    for (std::size_t r = 0; r < reps; r++) {
        RobustRep rep = robust_rep(channel, rng);
        bool agree = rep.first == rep.second;
        if (rep.coin) {
            fresh++;
            fresh_agree += agree ? 1 : 0;
        } else {
            routed++;
            routed_agree += agree ? 1 : 0;
        }
    }
    if (routed == 0 || fresh == 0) {
        throw InsufficientSubsample("robust_measure_twice: all " + std::to_string(reps) +
                                    " coins landed on the same side; increase reps");
    }
    RobustReport report;
    report.estimate = make_sharpness_estimate(routed_agree, routed);
    report.baseline_reps = fresh;
    report.baseline_rate = static_cast<double>(fresh_agree) / static_cast<double>(fresh);
    double p = 1.0 / static_cast<double>(channel.dim());
    report.baseline_tolerance = 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(fresh));
    report.honest = std::abs(report.baseline_rate - p) <= report.baseline_tolerance;
    return report;
}

RobustReport robust_measure_twice(const Device &device, std::size_t reps, RngStream &rng) {
    DeviceChannel channel(device);
    auto report = robust_measure_twice(channel, reps, rng);
    if (const Instrument *inst = device.instrument()) {
        report.estimate.bias = std::abs(report.estimate.mean - sharpness(povm_of(*inst)));
    }
    return report;
}

Decision decide_sharpness(const SharpnessEstimate &est, std::size_t d) {
    require_nondegenerate(d, "decide_sharpness");
    constexpr double kThreshold = 0.5;
    return {est.mean >= kThreshold ? Verdict::Quantum : Verdict::Classical, est.mean, kThreshold};
}

}  // namespace mlearn
