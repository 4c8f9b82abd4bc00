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

#include "mlearn/stats/moments.h"

#include <algorithm>
#include <string>

#include "mlearn/errors.h"

namespace mlearn {

namespace {

void require_dim(std::size_t d, const char *what) {
    if (d == 0) {
        throw InvalidDimension(std::string(what) + ": d must be at least 1");
    }
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
    auto x = static_cast<double>(n);
    switch (k) {
        case 0:
            return 1;
        case 1:
            return x;
        case 2:
            return n < 2 ? 0 : x * (x - 1) / 2;
        case 3:
            return n < 3 ? 0 : x * (x - 1) * (x - 2) / 6;
        default:
            throw InvalidParameter("binomial: only k <= 3 is supported");
    }
}

MomentPair uniform_moments(std::size_t d) {
    require_dim(d, "uniform_moments");
    auto dd = static_cast<double>(d);
    return {1.0 / dd, 1.0 / (dd * dd)};
}

MomentPair haar_mean_moments(std::size_t d) {
    require_dim(d, "haar_mean_moments");
    auto dd = static_cast<double>(d);
    return {2.0 / (dd + 1), 6.0 / ((dd + 1) * (dd + 2))};
}

MomentPair power_sums(std::span<const double> p) {
    MomentPair m{0, 0};
    for (double x : p) {
        m.s2 += x * x;
        m.s3 += x * x * x;
    }
    return m;
}

CollisionMoments collision_moments(std::size_t n, MomentPair m) {
    if (n < 2) {
        throw InvalidParameter("collision_moments: N must be at least 2");
    }
    double pairs = binomial(n, 2);
    double triples = binomial(n, 3);
    double var = pairs * (m.s2 - m.s2 * m.s2) + 6 * triples * (m.s3 - m.s2 * m.s2);
    return {pairs * m.s2, std::max(0.0, var)};
}

double chebyshev_success(std::size_t n, std::size_t d) {
    if (n < 2) {
        throw InvalidParameter("chebyshev_success: N must be at least 2");
    }
    if (d < 2) {
        throw DegenerateDimension("chebyshev_success: d must be at least 2");
    }
    auto dd = static_cast<double>(d);
    double pairs = binomial(n, 2);
    double triples = binomial(n, 3);
    auto uniform = collision_moments(n, uniform_moments(d));
    double e1 = pairs * haar_mean_moments(d).s2;
    double var1_upper = pairs * 2 / dd + triples * 36 / (dd * dd);
    double half_gap = (e1 - uniform.expectation) / 2;
    if (!(half_gap > 0)) {
        return 0;
    }
    double bound = 1 - std::max(uniform.variance, var1_upper) / (half_gap * half_gap);
    return std::clamp(bound, 0.0, 1.0);
}

}  // namespace mlearn
