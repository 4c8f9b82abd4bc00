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

#include "mlearn/haarverify/tv.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mlearn/errors.h"

namespace mlearn {

namespace {

double factorial(std::size_t n) {
    double f = 1;
    for (std::size_t k = 2; k <= n; k++) {
        f *= static_cast<double>(k);
    }
    return f;
}

void extend_partitions(std::size_t remaining, std::size_t largest, std::size_t max_parts,
                       std::vector<std::size_t> &prefix, std::vector<std::vector<std::size_t>> &out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    if (prefix.size() == max_parts) {
        return;
    }
    for (std::size_t part = std::min(largest, remaining); part >= 1; part--) {
        prefix.push_back(part);
        extend_partitions(remaining - part, part, max_parts, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> integer_partitions(std::size_t total, std::size_t max_parts) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> prefix;
    extend_partitions(total, total, max_parts, prefix, out);
    return out;
}

double haar_monomial_moment(std::span<const std::size_t> multiplicities, std::size_t d) {
    if (d == 0) {
        throw InvalidDimension("haar_monomial_moment: d must be at least 1");
    }
    std::size_t t = 0;
    double numer = 1;
    for (std::size_t m : multiplicities) {
        t += m;
        numer *= factorial(m);
    }
    // (d-1)! / (d+T-1)! = 1 / (d (d+1) ... (d+T-1)).
    double rising = 1;
    for (std::size_t k = 0; k < t; k++) {
        rising *= static_cast<double>(d + k);
    }
    return numer / rising;
}

double tuples_with_shape(std::span<const std::size_t> shape, std::size_t d) {
    std::size_t parts = shape.size();
    if (parts > d) {
        return 0;
    }
    std::size_t t = 0;
    double arrangements = 1;
    std::map<std::size_t, std::size_t> repeats;
    for (std::size_t m : shape) {
        t += m;
        arrangements *= factorial(m);
        repeats[m]++;
    }
    // Ordered choice of distinct outcomes, modulo swapping equal-size parts.
    double outcomes = 1;
    for (std::size_t k = 0; k < parts; k++) {
        outcomes *= static_cast<double>(d - k);
    }
    for (const auto &[size, count] : repeats) {
        outcomes /= factorial(count);
    }
    return outcomes * factorial(t) / arrangements;
}

TvResult tv_iid_protocol(std::size_t d, std::size_t t) {
    if (t == 0 || t > kMaxTvQueries) {
        throw ResourceError("tv_iid_protocol: T must lie in [1, 4], got " + std::to_string(t));
    }
    if (d == 0) {
        throw InvalidDimension("tv_iid_protocol: d must be at least 1");
    }
    if (d > kMaxTvDim) {
        throw ResourceError("tv_iid_protocol: d must be at most 64, got " + std::to_string(d));
    }
    double uniform = std::pow(static_cast<double>(d), -static_cast<double>(t));
    double sum = 0;
    for (const auto &shape : integer_partitions(t, d)) {
        double haar = haar_monomial_moment(shape, d);
        sum += tuples_with_shape(shape, d) * std::abs(haar - uniform);
    }
    return {sum / 2, 3.0 * static_cast<double>(t * t) / (2.0 * static_cast<double>(d))};
}

}  // namespace mlearn
