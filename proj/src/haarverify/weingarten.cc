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

#include "mlearn/haarverify/weingarten.h"

#include <cmath>
#include <string>

#include "mlearn/errors.h"

namespace mlearn {

WeingartenTable weingarten_table(std::size_t t, std::size_t d) {
    if (t == 0 || t > kMaxWeingartenT) {
        throw ResourceError("weingarten_table: T must lie in [1, 5], got " + std::to_string(t));
    }
    if (d < t) {
        throw DomainError("weingarten_table: the Gram matrix is singular or ill-conditioned for d < T (d=" +
                          std::to_string(d) + ", T=" + std::to_string(t) + ")");
    }
    WeingartenTable table{t, d, all_permutations(t), {}, {}, 0};
    auto n = static_cast<Eigen::Index>(table.perms.size());
    std::vector<Permutation> inverses;
    inverses.reserve(table.perms.size());
    for (const auto &p : table.perms) {
        inverses.push_back(inverse(p));
    }
    table.gram.resize(n, n);
    auto dd = static_cast<double>(d);
    for (Eigen::Index a = 0; a < n; a++) {
        for (Eigen::Index b = 0; b < n; b++) {
            auto c = cycle_count(compose(inverses[static_cast<std::size_t>(a)], table.perms[static_cast<std::size_t>(b)]));
            table.gram(a, b) = std::pow(dd, static_cast<double>(c));
        }
    }
    table.wg = table.gram.fullPivLu().inverse();
    Eigen::MatrixXd residual = table.gram * table.wg - Eigen::MatrixXd::Identity(n, n);
    table.inverse_residual = residual.cwiseAbs().maxCoeff();
    if (!(table.inverse_residual <= kWeingartenInverseTolerance)) {
        throw InvariantViolation("weingarten_table: |G wg - I| = " + std::to_string(table.inverse_residual) +
                                 " exceeds 1e-8");
    }
    return table;
}

WeingartenGap wg_identity_gap(std::size_t t, std::size_t d) {
    if (t == 0 || t > kMaxWeingartenT) {
        throw ResourceError("wg_identity_gap: T must lie in [1, 5], got " + std::to_string(t));
    }
    if (t * t > d) {
        throw DomainError("wg_identity_gap: requires T^2 <= d (d=" + std::to_string(d) + ", T=" + std::to_string(t) +
                          ")");
    }
    auto table = weingarten_table(t, d);
    auto n = table.wg.rows();
    Eigen::MatrixXd dev = std::pow(static_cast<double>(d), static_cast<double>(t)) * table.wg -
                          Eigen::MatrixXd::Identity(n, n);
    WeingartenGap gap;
    gap.entrywise = dev.cwiseAbs().maxCoeff();
    // dev is symmetric, so its singular values are the absolute eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dev, Eigen::EigenvaluesOnly);
    gap.spectral = eig.eigenvalues().cwiseAbs().maxCoeff();
    gap.row_sum = dev.cwiseAbs().rowwise().sum().maxCoeff();
    gap.bound = static_cast<double>(t * t) / static_cast<double>(d);
    return gap;
}

CycleSum cycle_sum_identity(std::size_t t, std::size_t d) {
    if (t == 0 || t > 8) {
        throw ResourceError("cycle_sum_identity: T must lie in [1, 8], got " + std::to_string(t));
    }
    if (d == 0) {
        throw InvalidDimension("cycle_sum_identity: d must be at least 1");
    }
    auto dd = static_cast<double>(d);
    // Tally cycle counts first so the sum runs over at most T terms.
    std::vector<double> by_cycles(t + 1, 0);
    for (const auto &p : all_permutations(t)) {
        by_cycles[cycle_count(p)] += 1;
    }
    CycleSum out{0, 1};
    for (std::size_t c = 1; c <= t; c++) {
        out.lhs += by_cycles[c] * std::pow(dd, static_cast<double>(c) - static_cast<double>(t));
    }
    for (std::size_t k = 1; k < t; k++) {
        out.rhs *= 1 + static_cast<double>(k) / dd;
    }
    return out;
}

}  // namespace mlearn
