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

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "mlearn/errors.h"
#include "mlearn/protocols/cswap.h"
#include "mlearn/protocols/protocols.h"
#include "mlearn/qcore/haar.h"
#include "test_util.h"

using namespace mlearn;
using namespace mlearn::testing;

namespace {

std::uint64_t brute_force_collisions(const std::vector<std::size_t> &xs) {
    std::uint64_t c = 0;
    for (std::size_t a = 0; a < xs.size(); a++) {
        for (std::size_t b = a + 1; b < xs.size(); b++) {
            c += xs[a] == xs[b] ? 1 : 0;
        }
    }
    return c;
}

Device dense_device(KindSpec spec, Access access, RngStream &rng) {
    return make_device(std::move(spec), access, Backend::Dense, rng);
}

}  // namespace

TEST(collision, count_matches_pairwise_oracle) {
    RngStream r(1, 1);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = 2 + r.uniform_index(60);
        std::size_t d = 1 + r.uniform_index(20);
        std::vector<std::size_t> xs(n);
        for (auto &x : xs) {
            x = r.uniform_index(d);
        }
        ASSERT_EQ(count_collisions(xs), brute_force_collisions(xs));
    }
    std::vector<std::size_t> same(10, 4);
    EXPECT_EQ(count_collisions(same), 45u);
}

TEST(collision, threshold_and_ties) {
    // tau = C(N,2) (1/d + 2/(d+1)) / 2.
    double tau = collision_threshold(320, 256);
    EXPECT_NEAR(tau, 51040.0 * (1.0 / 256 + 2.0 / 257) / 2, 1e-9);
    EXPECT_EQ(collision_decision(0, 320, 256).verdict, Verdict::Classical);
    EXPECT_EQ(collision_decision(1000, 320, 256).verdict, Verdict::Quantum);
    // N = 2, d = 2: tau = (1/2 + 2/3)/2 = 7/12; one collision is Quantum.
    EXPECT_EQ(collision_decision(1, 2, 2).verdict, Verdict::Quantum);
    EXPECT_EQ(default_collision_queries(256), 320u);
    EXPECT_EQ(default_collision_queries(2), 29u);
}

TEST(collision, monotone_in_count) {
    for (std::uint64_t c = 0; c + 1 < 600; c++) {
        auto a = collision_decision(c, 320, 256);
        auto b = collision_decision(c + 1, 320, 256);
        ASSERT_FALSE(a.verdict == Verdict::Quantum && b.verdict == Verdict::Classical);
    }
}

TEST(collision, errors) {
    RngStream r(2, 2);
    Device c = make_device(ClassicalUniformSpec{4}, Access::ClassicalOnly, Backend::Fast, r);
    EXPECT_THROW(collision_test(c, 1, r), InvalidParameter);
    Device one = make_device(ClassicalUniformSpec{1}, Access::ClassicalOnly, Backend::Fast, r);
    EXPECT_THROW(collision_test(one, 10, r), DegenerateDimension);
    Device post = make_device(ClassicalUniformSpec{4}, Access::WithPostState, Backend::Fast, r);
    EXPECT_THROW(collision_test(post, 10, r), AccessError);
}

TEST(collision, two_uniform_bits_collide_half_the_time) {
    RngStream r(3, 3);
    Device c = make_device(ClassicalUniformSpec{2}, Access::ClassicalOnly, Backend::Fast, r);
    const int n = 20000;
    int ones = 0;
    for (int k = 0; k < n; k++) {
        auto dec = collision_test(c, 2, r);
        ASSERT_TRUE(dec.statistic == 0 || dec.statistic == 1);
        ones += dec.statistic == 1 ? 1 : 0;
    }
    EXPECT_NEAR(ones / static_cast<double>(n), 0.5, 4 * std::sqrt(0.25 / n));
}

TEST(collision, dense_and_fast_statistics_agree_in_law) {
    RngStream r(4, 4);
    const std::size_t d = 16, n = 40;
    const int trials = 3000;
    double mean_dense = 0, mean_fast = 0;
    for (int k = 0; k < trials; k++) {
        Device a = make_device(ProjectiveHaarSpec{d, std::nullopt}, Access::ClassicalOnly, Backend::Dense, r);
        Device b = make_device(ProjectiveHaarSpec{d, std::nullopt}, Access::ClassicalOnly, Backend::Fast, r);
        mean_dense += collision_test(a, n, r).statistic / trials;
        mean_fast += collision_test(b, n, r).statistic / trials;
    }
    // Both estimate C(40,2) 2/17 = 91.76; per-trial sd is below 40.
    double expected = 780.0 * 2 / 17;
    EXPECT_NEAR(mean_dense, expected, 5 * 40 / std::sqrt(trials));
    EXPECT_NEAR(mean_fast, expected, 5 * 40 / std::sqrt(trials));
}

TEST(measure_twice, projective_always_one) {
    RngStream r(5, 5);
    for (std::size_t d : {2, 7, 64}) {
        for (Backend b : {Backend::Dense, Backend::Fast}) {
            Device dev = make_device(ProjectiveHaarSpec{d, std::nullopt}, Access::WithPostState, b, r);
            auto est = measure_twice(dev, 50, r);
            EXPECT_EQ(est.mean, 1.0);
            EXPECT_EQ(est.std_error, 0.0);
        }
    }
}

TEST(measure_twice, classical_estimates_one_over_d) {
    RngStream r(6, 6);
    Device dev = make_device(ClassicalUniformSpec{4}, Access::WithPostState, Backend::Dense, r);
    auto est = measure_twice(dev, 10000, r);
    EXPECT_NEAR(est.mean, 0.25, 4 * std::sqrt(0.25 * 0.75 / 10000));
    EXPECT_NEAR(est.std_error, std::sqrt(est.mean * (1 - est.mean) / 10000), 1e-15);
}

TEST(measure_twice, unbiased_for_normal_custom_instrument) {
    RngStream r(7, 7);
    Device dev = make_device(CustomSpec{diagonal_instrument()}, Access::WithPostState, Backend::Dense, r);
    const std::size_t reps = 100000;
    auto est = measure_twice(dev, reps, r);
    EXPECT_NEAR(est.mean, 0.625, 4 * std::sqrt(0.625 * 0.375 / reps));
    ASSERT_TRUE(est.bias.has_value());
    EXPECT_NEAR(*est.bias, std::abs(est.mean - 0.625), 1e-15);
}

TEST(measure_twice, non_normal_instrument_reports_bias) {
    // K0 = |0><1|, K1 = |0><0|: every post-state is |0><0|, so the second
    // outcome is always 1 while the first is uniform on I/2.
    std::vector<cplx> k0{0, 1, 0, 0};
    std::vector<cplx> k1{1, 0, 0, 0};
    Instrument inst({ComplexMatrix(2, 2, k0), ComplexMatrix(2, 2, k1)});
    ASSERT_FALSE(inst.is_normal());
    RngStream r(8, 8);
    Device dev = make_device(CustomSpec{inst}, Access::WithPostState, Backend::Dense, r);
    auto est = measure_twice(dev, 20000, r);
    // Sharpness is 1 (both effects are projectors) but p(i = j) = 1/2.
    EXPECT_NEAR(sharpness(povm_of(inst)), 1.0, 1e-15);
    EXPECT_NEAR(est.mean, 0.5, 5 * std::sqrt(0.25 / 20000));
    ASSERT_TRUE(est.bias.has_value());
    EXPECT_GT(*est.bias, 0.4);
}

TEST(measure_twice, errors) {
    RngStream r(9, 9);
    Device no_post = make_device(ClassicalUniformSpec{4}, Access::ClassicalOnly, Backend::Fast, r);
    EXPECT_THROW(measure_twice(no_post, 10, r), AccessError);
    Device post = make_device(ClassicalUniformSpec{4}, Access::WithPostState, Backend::Fast, r);
    EXPECT_THROW(measure_twice(post, 0, r), InvalidParameter);
}

TEST(measure_twice, decision_rule) {
    auto est = [](double mean) {
        SharpnessEstimate e;
        e.mean = mean;
        e.reps = 10;
        return e;
    };
    EXPECT_EQ(decide_sharpness(est(1.0), 16).verdict, Verdict::Quantum);
    EXPECT_EQ(decide_sharpness(est(1.0 / 16), 16).verdict, Verdict::Classical);
    EXPECT_EQ(decide_sharpness(est(0.5), 4).verdict, Verdict::Quantum);
    EXPECT_THROW(decide_sharpness(est(0.5), 1), DegenerateDimension);
    for (int k = 0; k < 100; k++) {
        auto a = decide_sharpness(est(k / 100.0), 8).verdict;
        auto b = decide_sharpness(est((k + 1) / 100.0), 8).verdict;
        ASSERT_FALSE(a == Verdict::Quantum && b == Verdict::Classical);
    }
}

TEST(robust, honest_projective_and_classical) {
    RngStream r(10, 10);
    Device q = make_device(ProjectiveHaarSpec{8, std::nullopt}, Access::WithPostState, Backend::Dense, r);
    auto rq = robust_measure_twice(q, 10000, r);
    EXPECT_EQ(rq.estimate.mean, 1.0);
    double se = std::sqrt(0.125 * 0.875 / static_cast<double>(rq.baseline_reps));
    EXPECT_NEAR(rq.baseline_rate, 0.125, 4 * se);
    EXPECT_TRUE(rq.honest);
    EXPECT_NEAR(rq.baseline_tolerance, 4 * se, 1e-15);

    Device c = make_device(ClassicalUniformSpec{8}, Access::WithPostState, Backend::Fast, r);
    auto rc = robust_measure_twice(c, 10000, r);
    EXPECT_NEAR(rc.estimate.mean, 0.125, 4 * std::sqrt(0.125 * 0.875 / static_cast<double>(rc.estimate.reps)));
    EXPECT_TRUE(rc.honest);
    EXPECT_EQ(rc.estimate.reps + rc.baseline_reps, 10000u);
}

TEST(robust, repeating_adversary_is_caught) {
    RngStream r(11, 11);
    RepeatingAdversary adv(8);
    // The plain protocol is fooled.
    EXPECT_EQ(measure_twice(adv, 200, r).mean, 1.0);
    auto report = robust_measure_twice(adv, 200, r);
    EXPECT_EQ(report.estimate.mean, 1.0);
    EXPECT_EQ(report.baseline_rate, 1.0);
    EXPECT_FALSE(report.honest);
}

TEST(robust, requires_both_branches) {
    RngStream r(12, 12);
    Device c = make_device(ClassicalUniformSpec{8}, Access::WithPostState, Backend::Fast, r);
    EXPECT_THROW(robust_measure_twice(c, 1, r), InvalidParameter);
    // With two reps both coins land on the same side half the time.
    int insufficient = 0;
    for (int k = 0; k < 400; k++) {
        try {
            robust_measure_twice(c, 2, r);
        } catch (const InsufficientSubsample &) {
            insufficient++;
        }
    }
    EXPECT_GT(insufficient, 150);
    EXPECT_LT(insufficient, 250);
}

TEST(cswap, exact_tables_agree) {
    RngStream r(13, 13);
    for (std::size_t d : {2, 3, 4}) {
        std::vector<Device> devices;
        devices.push_back(dense_device(ProjectiveHaarSpec{d, std::nullopt}, Access::WithPostState, r));
        devices.push_back(dense_device(ClassicalUniformSpec{d}, Access::WithPostState, r));
        if (d == 2) {
            devices.push_back(dense_device(CustomSpec{diagonal_instrument()}, Access::WithPostState, r));
        }
        for (const auto &dev : devices) {
            auto circuit = cswap_circuit_table(dev);
            auto routed = coin_routing_table(dev);
            auto early = cswap_circuit_table(dev, true);
            ASSERT_EQ(circuit.size(), 2 * d * d);
            EXPECT_NEAR(std::accumulate(circuit.begin(), circuit.end(), 0.0), 1.0, 1e-12);
            for (std::size_t k = 0; k < circuit.size(); k++) {
                EXPECT_NEAR(circuit[k], routed[k], 1e-10);
                EXPECT_NEAR(circuit[k], early[k], 1e-10);
            }
        }
    }
}

TEST(cswap, coin_routing_by_hand_for_identity_basis) {
    // U = I, d = 2: first outcome uniform; coin 0 repeats it; coin 1 is a fresh uniform outcome.
    RngStream r(14, 14);
    Device dev = dense_device(ProjectiveHaarSpec{2, UnitaryMatrix(ComplexMatrix::identity(2))},
                              Access::WithPostState, r);
    auto t = coin_routing_table(dev);
    EXPECT_NEAR(t[(0 * 2 + 0) * 2 + 0], 0.25, 1e-15);
    EXPECT_NEAR(t[(0 * 2 + 0) * 2 + 1], 0.0, 1e-15);
    EXPECT_NEAR(t[(1 * 2 + 0) * 2 + 1], 0.125, 1e-15);
}

TEST(cswap, sampled_check_passes) {
    RngStream r(15, 15);
    EXPECT_TRUE(controlled_swap_equivalence_check(2, 100000, r));
    Device dev = dense_device(ProjectiveHaarSpec{4, std::nullopt}, Access::WithPostState, r);
    auto res = controlled_swap_equivalence_check(dev, 100000, r);
    EXPECT_TRUE(res.passed);
    EXPECT_LE(res.sampled_tv, 0.02);
    EXPECT_THROW(controlled_swap_equivalence_check(5, 1000, r), ResourceError);
}
