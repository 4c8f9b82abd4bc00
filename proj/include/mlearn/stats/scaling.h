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

#ifndef MLEARN_STATS_SCALING_H
#define MLEARN_STATS_SCALING_H

#include <cstddef>
#include <span>

namespace mlearn {

struct ScalingPoint {
    std::size_t d;
    /// Minimal query count reaching the target success; at least 2.
    std::size_t n_min;
};

/// Least-squares line log(n_min) = slope log(d) + intercept.
struct ScalingFit {
    double slope;
    double intercept;
    /// Root-mean-square residual in log space.
    double residual;
};

/// Throws InvalidParameter for fewer than 3 points, repeated d, or n_min < 2.
ScalingFit scaling_exponent(std::span<const ScalingPoint> points);

}  // namespace mlearn

#endif
