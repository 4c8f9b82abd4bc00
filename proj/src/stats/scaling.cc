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

#include "mlearn/stats/scaling.h"

#include <cmath>
#include <set>

#include "mlearn/errors.h"

namespace mlearn {

ScalingFit scaling_exponent(std::span<const ScalingPoint> points) {
    if (points.size() < 3) {
        throw InvalidParameter("scaling_exponent: need at least 3 points");
    }
    std::set<std::size_t> seen;
    for (const auto &p : points) {
        if (p.d < 1 || !seen.insert(p.d).second) {
            throw InvalidParameter("scaling_exponent: dimensions must be distinct and positive");
        }
        if (p.n_min < 2) {
            throw InvalidParameter("scaling_exponent: n_min must be at least 2");
        }
    }
    auto n = static_cast<double>(points.size());
    double mx = 0, my = 0;
    for (const auto &p : points) {
        mx += std::log(static_cast<double>(p.d));
        my += std::log(static_cast<double>(p.n_min));
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto &p : points) {
        double x = std::log(static_cast<double>(p.d)) - mx;
        double y = std::log(static_cast<double>(p.n_min)) - my;
        sxx += x * x;
        sxy += x * y;
    }
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (const auto &p : points) {
        double r = std::log(static_cast<double>(p.n_min)) - (fit.slope * std::log(static_cast<double>(p.d)) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace mlearn
