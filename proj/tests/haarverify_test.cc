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
#include <map>

#include "gtest/gtest.h"
#include "mlearn/errors.h"
#include "mlearn/haarverify/permutation.h"
#include "mlearn/haarverify/tv.h"
#include "mlearn/haarverify/twirl.h"
#include "mlearn/haarverify/weingarten.h"
#include "mlearn/qcore/haar.h"
#include "mlearn/qcore/states.h"

using namespace mlearn;

namespace {

double falling_over(std::size_t d, std::size_t t) {
    double r = 1;
    for (std::size_t k = 0; k < t; k++) {
        r *= static_cast<double>(d + k);
    }
    return r;
}

double factorial(std::size_t n) {
    double r = 1;
    for (std::size_t k = 2; k <= n; k++) {
        r *= static_cast<double>(k);
    }
    return r;
}

/// TV between the uniform law on [d]^T and the Haar-averaged law of T
/// measurements of |0>, summed tuple by tuple. The Haar weight of a tuple
/// is (d-1)! prod m_i! / (d-1+T)! for outcome multiplicities m.
double tv_by_tuples(std::size_t d, std::size_t t) {
    std::vector<std::size_t> xs(t, 0);
    double total = 0;
    double uniform = std::pow(static_cast<double>(d), -static_cast<double>(t));
    while (true) {
        std::map<std::size_t, std::size_t> mult;
        for (auto x : xs) {
            mult[x]++;
        }
        double haar = 1 / falling_over(d, t);
        for (auto [_, m] : mult) {
            haar *= factorial(m);
        }
        total += std::abs(haar - uniform);
        std::size_t k = 0;
        while (k < t && ++xs[k] == d) {
            xs[k++] = 0;
        }
        if (k == t) {
            break;
        }
    }
    return total / 2;
}

ComplexMatrix random_hermitian(std::size_t n, RngStream &rng) {
    std::vector<cplx> e(n * n);
    for (auto &x : e) {
        x = rng.complex_normal();
    }
    ComplexMatrix b(n, n, e);
    return b + adjoint(b);
}

double wg_entry(const WeingartenTable &tab, const Permutation &p) {
    for (std::size_t k = 0; k < tab.perms.size(); k++) {
        if (tab.perms[k] == p) {
            return tab.wg(0, k);
        }
    }
    ADD_FAILURE() << "permutation not in table";
    return 0;
}

}  // namespace

TEST(permutation, basics) {
    EXPECT_THROW(Permutation({0, 0, 1}), InvariantViolation);
    EXPECT_THROW(Permutation({0, 3}), InvariantViolation);
    EXPECT_FALSE(is_valid_permutation({1, 1}));
    EXPECT_EQ(cycle_count(Permutation::identity(5)), 5u);
    EXPECT_EQ(cycle_count(Permutation({1, 2, 0})), 1u);
    EXPECT_EQ(cycle_count(Permutation({1, 0, 3, 2})), 2u);
    EXPECT_EQ(cycle_count(Permutation({0, 2, 1})), 2u);
    Permutation a({1, 2, 0}), b({1, 0, 2});
    // compose(a, b)(i) = a(b(i)).
    EXPECT_EQ(compose(a, b), Permutation({2, 1, 0}));
    EXPECT_EQ(compose(a, inverse(a)), Permutation::identity(3));
    EXPECT_THROW(compose(a, Permutation::identity(2)), ShapeError);
    auto all = all_permutations(4);
    EXPECT_EQ(all.size(), 24u);
    EXPECT_EQ(all.front(), Permutation::identity(4));
}

TEST(permutation, operator_is_a_representation) {
    for (std::size_t t : {2, 3}) {
        auto perms = all_permutations(t);
        for (const auto &a : perms) {
            auto pa = permutation_operator(a, 2);
            EXPECT_LT(unitarity_residual(pa), 1e-14);
            for (const auto &b : perms) {
                auto lhs = pa * permutation_operator(b, 2);
                auto rhs = permutation_operator(compose(a, b), 2);
                ASSERT_EQ(max_abs_diff(lhs, rhs), 0.0);
            }
        }
    }
    // SWAP on two qubits: |01> <-> |10>.
    auto swap = permutation_operator(Permutation({1, 0}), 2);
    EXPECT_EQ(swap(1, 2), cplx(1));
    EXPECT_EQ(swap(2, 1), cplx(1));
    EXPECT_EQ(swap(0, 0), cplx(1));
}

TEST(weingarten, hand_computed_t2_d2) {
    auto tab = weingarten_table(2, 2);
    EXPECT_NEAR(tab.gram(0, 0), 4, 0);
    EXPECT_NEAR(tab.gram(0, 1), 2, 0);
    EXPECT_NEAR(tab.wg(0, 0), 1.0 / 3, 1e-14);
    EXPECT_NEAR(tab.wg(0, 1), -1.0 / 6, 1e-14);
    EXPECT_NEAR(tab.wg(1, 1), 1.0 / 3, 1e-14);
    // d^T wg - I = [[1/3, -2/3], [-2/3, 1/3]].
    double gap = 0;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            gap = std::max(gap, std::abs(4 * tab.wg(i, j) - (i == j ? 1 : 0)));
        }
    }
    EXPECT_NEAR(gap, 2.0 / 3, 1e-14);
    EXPECT_LT(tab.inverse_residual, 1e-14);
}

TEST(weingarten, known_low_order_values) {
    for (std::size_t d : {1, 2, 5, 17}) {
        EXPECT_NEAR(weingarten_table(1, d).wg(0, 0), 1.0 / static_cast<double>(d), 1e-15);
    }
    for (std::size_t d : {2, 3, 7, 32}) {
        double dd = static_cast<double>(d);
        auto tab = weingarten_table(2, d);
        EXPECT_NEAR(wg_entry(tab, Permutation({0, 1})), 1 / (dd * dd - 1), 1e-13);
        EXPECT_NEAR(wg_entry(tab, Permutation({1, 0})), -1 / (dd * (dd * dd - 1)), 1e-13);
    }
    for (std::size_t d : {3, 4, 9}) {
        double dd = static_cast<double>(d);
        double den = (dd * dd - 1) * (dd * dd - 4);
        auto tab = weingarten_table(3, d);
        EXPECT_NEAR(wg_entry(tab, Permutation({0, 1, 2})), (dd * dd - 2) / (dd * den), 1e-12);
        EXPECT_NEAR(wg_entry(tab, Permutation({1, 0, 2})), -1 / den, 1e-12);
        EXPECT_NEAR(wg_entry(tab, Permutation({1, 2, 0})), 2 / (dd * den), 1e-12);
    }
}

TEST(weingarten, limits_and_errors) {
    EXPECT_THROW(weingarten_table(0, 4), ResourceError);
    EXPECT_THROW(weingarten_table(6, 64), ResourceError);
    EXPECT_THROW(weingarten_table(3, 2), DomainError);
    EXPECT_THROW(wg_identity_gap(2, 3), DomainError);
    auto gap = wg_identity_gap(2, 4);
    EXPECT_NEAR(gap.entrywise, 4.0 / 15, 1e-14);
    EXPECT_EQ(gap.bound, 1.0);
}

TEST(weingarten, gap_within_bound_over_grid) {
    for (std::size_t t = 1; t <= kMaxWeingartenT; t++) {
        for (std::size_t d = t * t; d <= 256; d = d * 2 + 1) {
            auto tab = weingarten_table(t, d);
            EXPECT_LT(tab.inverse_residual, kWeingartenInverseTolerance);
            auto gap = wg_identity_gap(t, d);
            EXPECT_TRUE(gap.within_bound()) << "T=" << t << " d=" << d << " gap=" << gap.entrywise;
            EXPECT_LE(gap.entrywise, gap.spectral + 1e-12);
            EXPECT_LE(gap.spectral, gap.row_sum + 1e-12);
        }
    }
}

TEST(weingarten, cycle_sum_identity) {
    auto cs = cycle_sum_identity(3, 2);
    EXPECT_NEAR(cs.lhs, 3.0, 1e-14);
    EXPECT_NEAR(cs.rhs, 3.0, 1e-14);
    for (std::size_t t = 1; t <= 8; t++) {
        for (std::size_t d : {1, 2, 3, 10, 1000}) {
            auto c = cycle_sum_identity(t, d);
            EXPECT_NEAR(c.lhs / c.rhs, 1.0, 1e-12) << "T=" << t << " d=" << d;
        }
    }
    EXPECT_THROW(cycle_sum_identity(9, 4), ResourceError);
}

TEST(twirl, closed_form_examples) {
    auto id4 = ComplexMatrix::identity(4);
    EXPECT_LT(max_abs_diff(twirl_closed_form(id4, 2, 2), id4), 1e-14);

    // |00><00| twirls to (I + SWAP) / 6.
    std::vector<cplx> basis(4, 0.0);
    basis[0] = 1;
    auto zz = ComplexMatrix::outer(basis, basis);
    auto expected = scale(id4 + permutation_operator(Permutation({1, 0}), 2), 1.0 / 6);
    EXPECT_LT(max_abs_diff(twirl_closed_form(zz, 2, 2), expected), 1e-14);

    // T = 1: the twirl is the trace times I / d.
    RngStream r(1, 1);
    auto a = random_hermitian(3, r);
    auto one = twirl_closed_form(a, 1, 3);
    EXPECT_LT(max_abs_diff(one, scale(ComplexMatrix::identity(3), trace(a) / 3.0)), 1e-13);

    // The twirl is invariant under V^{x3} conjugation and idempotent.
    auto h = random_hermitian(27, r);
    auto tw = twirl_closed_form(h, 3, 3);
    auto v = sample_haar_unitary(3, r).matrix();
    auto v3 = tensor(tensor(v, v), v);
    EXPECT_LT(max_abs_diff(v3 * tw * adjoint(v3), tw), 1e-10);
    EXPECT_LT(max_abs_diff(twirl_closed_form(tw, 3, 3), tw), 1e-10);
}

TEST(twirl, monte_carlo_matches_closed_form) {
    RngStream r(2, 2);
    std::vector<cplx> basis(4, 0.0);
    basis[0] = 1;
    auto zz = ComplexMatrix::outer(basis, basis);
    const std::size_t samples = 100000;
    auto cmp = twirl_compare(zz, 2, 2, samples, r.derive(1));
    EXPECT_EQ(cmp.samples, samples);
    EXPECT_NEAR(cmp.noise_scale, 1 / std::sqrt(static_cast<double>(samples)), 1e-15);
    EXPECT_LE(cmp.deviation, 5 * cmp.noise_scale);

    auto a = random_hermitian(4, r);
    a = scale(a, 1 / max_abs(a));
    auto small = twirl_compare(a, 2, 2, 10000, r.derive(2));
    auto large = twirl_compare(a, 2, 2, 100000, r.derive(3));
    EXPECT_LE(large.deviation, 0.02);
    EXPECT_LE(large.deviation / small.deviation, 0.6);
}

TEST(twirl, deterministic_across_threads) {
    RngStream r(3, 3);
    auto a = random_hermitian(9, r);
    auto x = twirl_monte_carlo(a, 2, 3, 5000, r, 1);
    auto y = twirl_monte_carlo(a, 2, 3, 5000, r, 6);
    EXPECT_EQ(max_abs_diff(x, y), 0.0);
}

TEST(twirl, argument_checks) {
    RngStream r(4, 4);
    auto id = ComplexMatrix::identity(4);
    EXPECT_THROW(twirl_compare(id, 2, 2, 999, r), InvalidParameter);
    EXPECT_THROW(twirl_compare(ComplexMatrix::identity(3), 2, 2, 1000, r), ShapeError);
    EXPECT_THROW(twirl_compare(ComplexMatrix::identity(625), 4, 5, 1000, r), ResourceError);
}

TEST(tv, hand_values) {
    EXPECT_NEAR(tv_iid_protocol(8, 2).tv, 7.0 / 72, 1e-12);
    EXPECT_NEAR(tv_iid_protocol(2, 2).tv, 1.0 / 6, 1e-12);
    EXPECT_NEAR(tv_iid_protocol(8, 1).tv, 0.0, 1e-15);
    EXPECT_NEAR(tv_iid_protocol(8, 2).bound, 3.0 * 4 / 16, 1e-15);
}

TEST(tv, matches_tuple_enumeration) {
    for (std::size_t t = 1; t <= kMaxTvQueries; t++) {
        for (std::size_t d : {2, 3, 5, 8}) {
            EXPECT_NEAR(tv_iid_protocol(d, t).tv, tv_by_tuples(d, t), 1e-12) << "T=" << t << " d=" << d;
        }
    }
}

TEST(tv, bound_holds_on_grid) {
    for (std::size_t t = 1; t <= kMaxTvQueries; t++) {
        for (std::size_t d = 2; d <= kMaxTvDim; d++) {
            auto r = tv_iid_protocol(d, t);
            EXPECT_TRUE(r.within_bound()) << "T=" << t << " d=" << d;
            EXPECT_GE(r.tv, 0.0);
        }
    }
    EXPECT_THROW(tv_iid_protocol(8, 5), ResourceError);
    EXPECT_THROW(tv_iid_protocol(65, 2), ResourceError);
}

TEST(tv, partitions_and_counts) {
    EXPECT_EQ(integer_partitions(4, 4).size(), 5u);
    EXPECT_EQ(integer_partitions(4, 2).size(), 3u);
    EXPECT_EQ(integer_partitions(6, 6).size(), 11u);
    // Shapes partition the d^T tuples.
    for (std::size_t d : {2, 3, 7}) {
        for (std::size_t t = 1; t <= 4; t++) {
            double total = 0;
            for (const auto &shape : integer_partitions(t, std::min(t, d))) {
                total += tuples_with_shape(shape, d);
            }
            EXPECT_NEAR(total, std::pow(static_cast<double>(d), static_cast<double>(t)), 1e-9);
        }
    }
    std::vector<std::size_t> two{2};
    EXPECT_NEAR(haar_monomial_moment(two, 4), 2.0 / 20, 1e-15);
}
