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

#ifndef MLEARN_HAARVERIFY_WEINGARTEN_H
#define MLEARN_HAARVERIFY_WEINGARTEN_H

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "mlearn/haarverify/permutation.h"

namespace mlearn {

inline constexpr std::size_t kMaxWeingartenT = 5;
inline constexpr double kWeingartenInverseTolerance = 1e-8;

/// Gram matrix of the permutation operators on (C^d)^{tensor T} and its
/// inverse, indexed by all_permutations(T).
struct WeingartenTable {
    std::size_t t;
    std::size_t d;
    std::vector<Permutation> perms;
    /// gram(a, b) = d^{c(a^-1 b)}.
    Eigen::MatrixXd gram;
    Eigen::MatrixXd wg;
    /// max |gram * wg - I|.
    double inverse_residual;
};

/// Throws ResourceError for T = 0 or T > 5, DomainError for d < T, and
/// InvariantViolation if the inverse misses the 1e-8 residual.
WeingartenTable weingarten_table(std::size_t t, std::size_t d);

/// Deviation of d^T wg from the identity, under several matrix norms.
struct WeingartenGap {
    /// Entrywise max |.|; the asserted quantity.
    double entrywise;
    /// Largest singular value.
    double spectral;
    /// Max absolute row sum.
    double row_sum;
    /// T^2 / d.
    double bound;

    bool within_bound() const {
        return entrywise <= bound;
    }
};

/// Requires T^2 <= d and 1 <= T <= 5 (DomainError / ResourceError otherwise).
/// The bound itself is checked by the caller through within_bound().
WeingartenGap wg_identity_gap(std::size_t t, std::size_t d);

struct CycleSum {
    /// Sum over S_T of d^{c(p) - T}, by enumeration.
    double lhs;
    /// prod_{k<T} (1 + k/d).
    double rhs;
};

/// Requires 1 <= T <= 8 (ResourceError) and d >= 1.
CycleSum cycle_sum_identity(std::size_t t, std::size_t d);

}  // namespace mlearn

#endif
