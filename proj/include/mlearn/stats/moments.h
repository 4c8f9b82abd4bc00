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

#ifndef MLEARN_STATS_MOMENTS_H
#define MLEARN_STATS_MOMENTS_H

#include <cstddef>
#include <span>

namespace mlearn {

/// Power sums s2 = sum_x p(x)^2 and s3 = sum_x p(x)^3 of an outcome law.
struct MomentPair {
    double s2;
    double s3;
};

/// Mean and variance of the collision counter C = sum_{a<b} 1[x_a = x_b].
struct CollisionMoments {
    double expectation;
    double variance;
};

/// (1/d, 1/d^2).
MomentPair uniform_moments(std::size_t d);

/// Haar averages of the power sums of |<x|U|0>|^2: (2/(d+1), 6/((d+1)(d+2))).
MomentPair haar_mean_moments(std::size_t d);

/// Power sums of an explicit distribution.
MomentPair power_sums(std::span<const double> p);

/// E[C] = C(N,2) s2,  Var[C] = C(N,2)(s2 - s2^2) + 6 C(N,3)(s3 - s2^2).
/// Throws InvalidParameter for N < 2.
CollisionMoments collision_moments(std::size_t n, MomentPair m);

/// Chebyshev lower bound on the per-hypothesis success of the midpoint
/// collision test: 1 - max(Var0, Var1) / ((E1 - E0)/2)^2 clipped to [0, 1].
/// Var0 is the exact uniform variance; Var1 is the upper bound
/// C(N,2) 2/d + C(N,3) 36/d^2 for the Haar case. Returns 0 when the gap is not
/// positive. Requires N >= 2 and d >= 2.
double chebyshev_success(std::size_t n, std::size_t d);

/// C(n, k) as a double, for k <= 3.
double binomial(std::size_t n, std::size_t k);

}  // namespace mlearn

#endif
