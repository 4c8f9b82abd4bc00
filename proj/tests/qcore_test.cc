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
#include <limits>
#include <set>

#include "gtest/gtest.h"
#include "mlearn/errors.h"
#include "mlearn/qcore/haar.h"
#include "mlearn/qcore/matrix.h"
#include "mlearn/qcore/parallel.h"
#include "mlearn/qcore/rng.h"
#include "mlearn/qcore/states.h"

using namespace mlearn;

namespace {

ComplexMatrix m2(cplx a, cplx b, cplx c, cplx d) {
    std::vector<cplx> e{a, b, c, d};
    return ComplexMatrix(2, 2, e);
}

ComplexMatrix random_matrix(std::size_t n, RngStream &rng) {
    std::vector<cplx> e(n * n);
    for (auto &x : e) {
        x = rng.complex_normal();
    }
    return ComplexMatrix(n, n, e);
}

}  // namespace

TEST(rng, same_identity_same_sequence) {
    RngStream a(42, 7), b(42, 7);
    for (int k = 0; k < 1000; k++) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
}

TEST(rng, distinct_indices_differ) {
    RngStream a(42, 7), b(42, 8), c(43, 7);
    EXPECT_NE(a.next_u64(), b.next_u64());
    RngStream a2(42, 7);
    EXPECT_NE(a2.next_u64(), c.next_u64());
}

TEST(rng, derive_ignores_consumption) {
    RngStream a(5, 1), b(5, 1);
    for (int k = 0; k < 17; k++) {
        a.next_u64();
    }
    RngStream ca = a.derive(3), cb = b.derive(3);
    EXPECT_EQ(ca.next_u64(), cb.next_u64());
    RngStream na = a.derive("x", 3), nb = b.derive("y", 3);
    EXPECT_NE(na.next_u64(), nb.next_u64());
}

TEST(rng, first_outputs_of_children_distinct) {
    RngStream root(2026, 0);
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 10000; t++) {
        seen.insert(root.derive(t).next_u64());
    }
    EXPECT_EQ(seen.size(), 10000u);
}

TEST(rng, uniform_and_index_ranges) {
    RngStream r(1, 2);
    double sum = 0;
    const int n = 100000;
    for (int k = 0; k < n; k++) {
        double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Mean of U(0,1) has standard error sqrt(1/12/n).
    EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    for (int k = 0; k < 1000; k++) {
        ASSERT_LT(r.uniform_index(7), 7u);
    }
    EXPECT_EQ(r.uniform_index(1), 0u);
}

TEST(rng, complex_normal_variance) {
    RngStream r(3, 4);
    const int n = 100000;
    double re2 = 0, im2 = 0, reim = 0;
    for (int k = 0; k < n; k++) {
        cplx z = r.complex_normal();
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        reim += z.real() * z.imag();
    }
    // Var of x^2 for x ~ N(0, 1/2) is 2 * (1/2)^2 = 1/2.
    double se = std::sqrt(0.5 / n);
    EXPECT_NEAR(re2 / n, 0.5, 5 * se);
    EXPECT_NEAR(im2 / n, 0.5, 5 * se);
    EXPECT_NEAR(reim / n, 0.0, 5 * std::sqrt(0.25 / n));
}

TEST(rng, stable_hash_is_stable) {
    EXPECT_EQ(stable_hash("collision", 3), stable_hash("collision", 3));
    EXPECT_NE(stable_hash("collision", 3), stable_hash("collision", 4));
    EXPECT_NE(stable_hash("collision", 3), stable_hash("measure-twice", 3));
}

TEST(matrix, construction_checks) {
    std::vector<cplx> three{1, 2, 3};
    EXPECT_THROW(ComplexMatrix(2, 2, three), ShapeError);
    std::vector<cplx> bad{1, 2, 3, std::numeric_limits<double>::quiet_NaN()};
    EXPECT_THROW(ComplexMatrix(2, 2, bad), InvariantViolation);
    std::vector<cplx> inf{1, 2, 3, std::numeric_limits<double>::infinity()};
    EXPECT_THROW(ComplexMatrix(2, 2, inf), InvariantViolation);
    auto z = ComplexMatrix(2, 3);
    EXPECT_EQ(z.rows(), 2u);
    EXPECT_EQ(z.cols(), 3u);
    EXPECT_EQ(max_abs(z), 0.0);
}

TEST(matrix, row_major_layout) {
    auto a = m2(1, 2, 3, 4);
    EXPECT_EQ(a(0, 1), cplx(2));
    EXPECT_EQ(a(1, 0), cplx(3));
    auto e = a.entries();
    EXPECT_EQ(e, (std::vector<cplx>{1, 2, 3, 4}));
}

TEST(matrix, basic_identities) {
    EXPECT_EQ(trace(ComplexMatrix::identity(5)), cplx(5));
    RngStream r(9, 9);
    auto a = random_matrix(4, r);
    EXPECT_EQ(adjoint(adjoint(a)), a);
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ComplexMatrix::identity(6));
}

TEST(matrix, multiply_by_hand) {
    auto a = m2(1, cplx(0, 1), 2, 3);
    auto b = m2(cplx(0, -1), 1, 1, 0);
    // [[1*-i + i*1, 1*1 + i*0], [2*-i + 3, 2]]
    auto expected = m2(0, 1, cplx(3, -2), 2);
    EXPECT_LE(max_abs_diff(a * b, expected), 1e-15);
    EXPECT_THROW(multiply(a, ComplexMatrix(3, 3)), ShapeError);
    EXPECT_THROW(add(a, ComplexMatrix(3, 3)), ShapeError);
}

TEST(matrix, tensor_by_hand) {
    auto x = m2(0, 1, 1, 0);
    auto z = m2(1, 0, 0, -1);
    auto xz = tensor(x, z);
    // X (x) Z = [[0, Z], [Z, 0]].
    EXPECT_EQ(xz(0, 2), cplx(1));
    EXPECT_EQ(xz(1, 3), cplx(-1));
    EXPECT_EQ(xz(2, 0), cplx(1));
    EXPECT_EQ(xz(0, 0), cplx(0));
}

TEST(matrix, inverse_and_solve) {
    auto a = m2(4, 2, 2, 4);
    auto inv = inverse(a);
    // Hand inverse of [[4,2],[2,4]] is [[1/3, -1/6], [-1/6, 1/3]].
    EXPECT_NEAR(inv(0, 0).real(), 1.0 / 3, 1e-15);
    EXPECT_NEAR(inv(0, 1).real(), -1.0 / 6, 1e-15);
    RngStream r(10, 1);
    for (std::size_t n : {1, 3, 8, 16}) {
        auto m = random_matrix(n, r);
        auto res = identity_residual(m * inverse(m));
        EXPECT_LE(res, 1e-9 * static_cast<double>(n));
    }
    EXPECT_THROW(inverse(m2(1, 2, 2, 4)), SingularMatrix);
    EXPECT_THROW(inverse(ComplexMatrix(2, 3)), ShapeError);
}

TEST(matrix, frobenius_and_hermitian) {
    auto a = m2(1, cplx(0, 1), cplx(0, -1), 2);
    EXPECT_TRUE(is_hermitian(a, 1e-12));
    EXPECT_FALSE(is_hermitian(m2(1, 1, 0, 1), 1e-12));
    EXPECT_DOUBLE_EQ(frobenius_norm_sq(a), 1 + 1 + 1 + 4);
    EXPECT_NEAR(trace_of_product(a, a).real(), 7.0, 1e-14);
}

TEST(states, unitary_validation) {
    EXPECT_NO_THROW(UnitaryMatrix(m2(0, 1, 1, 0)));
    EXPECT_THROW(UnitaryMatrix(m2(1, 1, 0, 1)), InvariantViolation);
    EXPECT_THROW(UnitaryMatrix(ComplexMatrix(2, 3)), InvalidDimension);
    UnitaryMatrix h(m2(std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5), -std::sqrt(0.5)));
    auto c1 = h.column(1);
    EXPECT_NEAR(c1[1].real(), -std::sqrt(0.5), 1e-15);
}

TEST(states, adjoint_column_is_conjugated_row) {
    RngStream r(4, 4);
    auto u = sample_haar_unitary(4, r);
    auto v = u.adjoint_column(2);
    for (std::size_t x = 0; x < 4; x++) {
        EXPECT_EQ(v[x], std::conj(u.matrix()(2, x)));
    }
}

TEST(states, pure_state_checks) {
    EXPECT_THROW(PureState({1, 1}), InvariantViolation);
    EXPECT_THROW(PureState({}), InvalidDimension);
    auto b = PureState::basis(3, 2);
    EXPECT_EQ(b[2], cplx(1));
    EXPECT_THROW(PureState::basis(3, 3), ShapeError);
}

TEST(states, density_state_checks) {
    EXPECT_THROW(DensityState(m2(0.5, 0.1, 0.2, 0.5)), InvariantViolation);
    EXPECT_THROW(DensityState(m2(0.6, 0, 0, 0.6)), InvariantViolation);
    DensityState neg(m2(1.5, 0, 0, -0.5));
    EXPECT_THROW(neg.validate_psd(), InvariantViolation);
    auto pure = DensityState::from_pure(PureState({std::sqrt(0.5), cplx(0, std::sqrt(0.5))}));
    EXPECT_NEAR(pure.purity(), 1.0, 1e-14);
    EXPECT_NO_THROW(pure.validate_psd());
}

TEST(states, maximally_mixed) {
    auto m = maximally_mixed(2);
    EXPECT_EQ(m.matrix(), m2(0.5, 0, 0, 0.5));
    auto m4 = maximally_mixed(4);
    EXPECT_NEAR(trace(m4.matrix()).real(), 1.0, 1e-15);
    EXPECT_NEAR(m4.purity(), 0.25, 1e-15);
    EXPECT_EQ(maximally_mixed(1).matrix()(0, 0), cplx(1));
    EXPECT_THROW(maximally_mixed(0), InvalidDimension);
}

TEST(haar, unitary_residual_property) {
    RngStream r(11, 0);
    for (std::size_t d : {1, 2, 3, 5, 8, 16, 33, 64}) {
        for (int k = 0; k < 5; k++) {
            auto u = sample_haar_unitary(d, r);
            EXPECT_LE(unitarity_residual(u.matrix()), 1e-10 * static_cast<double>(d));
        }
    }
    auto one = sample_haar_unitary(1, r);
    EXPECT_NEAR(std::abs(one.matrix()(0, 0)), 1.0, 1e-10);
    EXPECT_THROW(sample_haar_unitary(0, r), InvalidDimension);
    EXPECT_THROW(sample_haar_state(0, r), InvalidDimension);
}

TEST(haar, first_moment_of_entry) {
    RngStream r(12, 0);
    const std::size_t d = 8;
    const int n = 10000;
    double sum = 0, sumsq = 0;
    for (int k = 0; k < n; k++) {
        double p = std::norm(sample_haar_unitary(d, r).matrix()(0, 0));
        sum += p;
        sumsq += p * p;
    }
    double mean = sum / n;
    double se = std::sqrt((sumsq / n - mean * mean) / n);
    EXPECT_NEAR(mean, 1.0 / d, 4 * se);
}

TEST(haar, second_moment_of_column_entry) {
    RngStream r(13, 0);
    for (std::size_t d : {2, 4, 8}) {
        const int n = 100000;
        double sum = 0, sumsq = 0;
        for (int k = 0; k < n; k++) {
            auto u = sample_haar_unitary(d, r);
            double p2 = std::pow(std::norm(u.matrix()(1 % d, 0)), 2);
            sum += p2;
            sumsq += p2 * p2;
        }
        double mean = sum / n;
        double se = std::sqrt((sumsq / n - mean * mean) / n);
        double dd = static_cast<double>(d);
        EXPECT_NEAR(mean, 2 / (dd * (dd + 1)), 5 * se) << "d=" << d;
    }
}

TEST(haar, phase_fix_makes_diagonal_law_uniform) {
    // Without the phase fix, Q from Householder QR has a biased diagonal
    // phase; Haar U has E[U_00] = 0.
    RngStream r(14, 0);
    const int n = 20000;
    cplx sum = 0;
    for (int k = 0; k < n; k++) {
        sum += sample_haar_unitary(3, r).matrix()(0, 0);
    }
    // |U_00|^2 has mean 1/3, so each component of the mean has variance <= 1/(3n).
    EXPECT_LE(std::abs(sum / static_cast<double>(n)), 5 * std::sqrt(1.0 / 3 / n));
}

TEST(haar, state_moments) {
    RngStream r(15, 0);
    auto one = sample_haar_state(1, r);
    EXPECT_NEAR(std::abs(one[0]), 1.0, 1e-12);
    const std::size_t d = 4;
    const int n = 100000;
    double sum = 0, sumsq = 0;
    for (int k = 0; k < n; k++) {
        auto psi = sample_haar_state(d, r);
        double norm = 0;
        for (auto a : psi.amplitudes()) {
            norm += std::norm(a);
        }
        ASSERT_NEAR(norm, 1.0, 1e-10);
        double p2 = std::pow(std::norm(psi[0]), 2);
        sum += p2;
        sumsq += p2 * p2;
    }
    double mean = sum / n;
    double se = std::sqrt((sumsq / n - mean * mean) / n);
    EXPECT_NEAR(mean, 0.1, 4 * se);
}

TEST(haar, reproducible) {
    RngStream a(77, 3), b(77, 3);
    EXPECT_EQ(sample_haar_unitary(6, a).matrix(), sample_haar_unitary(6, b).matrix());
}

TEST(parallel, order_and_thread_independence) {
    auto f = [](std::size_t i) {
        RngStream r(99, i);
        return r.next_u64();
    };
    auto serial = parallel_map(500, 1, f);
    auto threaded = parallel_map(500, 4, f);
    EXPECT_EQ(serial, threaded);
    EXPECT_EQ(serial[10], RngStream(99, 10).next_u64());
}

TEST(parallel, rethrows) {
    auto f = [](std::size_t i) -> int {
        if (i == 37) {
            throw InvalidParameter("boom");
        }
        return static_cast<int>(i);
    };
    EXPECT_THROW(parallel_map(100, 3, f), InvalidParameter);
    EXPECT_THROW(parallel_map(100, 1, f), InvalidParameter);
    EXPECT_TRUE(parallel_map(0, 4, f).empty());
}
