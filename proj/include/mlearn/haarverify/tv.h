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

#ifndef MLEARN_HAARVERIFY_TV_H
#define MLEARN_HAARVERIFY_TV_H

#include <cstddef>
#include <span>
#include <vector>

namespace mlearn {

inline constexpr std::size_t kMaxTvQueries = 4;
inline constexpr std::size_t kMaxTvDim = 64;

/// Integer partitions of `total` into at most `max_parts` parts, each listed
/// in non-increasing order.
std::vector<std::vector<std::size_t>> integer_partitions(std::size_t total, std::size_t max_parts);

/// E_U prod_x |<x|U|0>|^{2 m_x} for outcome multiplicities m summing to T:
/// (prod m_x!) (d-1)! / (d+T-1)!.
double haar_monomial_moment(std::span<const std::size_t> multiplicities, std::size_t d);

/// Number of tuples in [d]^T whose multiplicity pattern is `shape`.
double tuples_with_shape(std::span<const std::size_t> shape, std::size_t d);

struct TvResult {
    double tv;
    /// 3 T^2 / (2 d).
    double bound;

    bool within_bound() const {
        return tv <= bound;
    }
};

/// Exact total variation between the uniform law on [d]^T and the
/// Haar-averaged law of T i.i.d. queries of one fixed input to a Haar
/// projective measurement. Requires 1 <= T <= 4 and 1 <= d <= 64
/// (ResourceError / InvalidDimension).
TvResult tv_iid_protocol(std::size_t d, std::size_t t);

}  // namespace mlearn

#endif
