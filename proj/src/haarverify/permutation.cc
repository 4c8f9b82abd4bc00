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

#include "mlearn/haarverify/permutation.h"

#include <algorithm>
#include <numeric>

#include "mlearn/errors.h"

namespace mlearn {

bool is_valid_permutation(const std::vector<std::size_t> &image) {
    std::vector<bool> seen(image.size(), false);
    for (std::size_t v : image) {
        if (v >= image.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    if (!is_valid_permutation(image_)) {
        throw InvariantViolation("Permutation: image table is not a bijection");
    }
}

Permutation Permutation::identity(std::size_t size) {
    std::vector<std::size_t> image(size);
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation compose(const Permutation &a, const Permutation &b) {
    if (a.size() != b.size()) {
        throw ShapeError("compose: permutation sizes differ");
    }
    std::vector<std::size_t> image(a.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        image[i] = a(b(i));
    }
    return Permutation(std::move(image));
}

Permutation inverse(const Permutation &p) {
    std::vector<std::size_t> image(p.size());
    for (std::size_t i = 0; i < p.size(); i++) {
        image[p(i)] = i;
    }
    return Permutation(std::move(image));
}

std::size_t cycle_count(const Permutation &p) {
    std::vector<bool> visited(p.size(), false);
    std::size_t cycles = 0;
    for (std::size_t start = 0; start < p.size(); start++) {
        if (visited[start]) {
            continue;
        }
        cycles++;
        for (std::size_t i = start; !visited[i]; i = p(i)) {
            visited[i] = true;
        }
    }
    return cycles;
}

std::vector<Permutation> all_permutations(std::size_t size) {
    std::vector<std::size_t> image(size);
    std::iota(image.begin(), image.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

ComplexMatrix permutation_operator(const Permutation &p, std::size_t d) {
    if (d == 0) {
        throw InvalidDimension("permutation_operator: d must be at least 1");
    }
    std::size_t t = p.size();
    std::size_t dim = 1;
    for (std::size_t k = 0; k < t; k++) {
        dim *= d;
    }
    // Factor 0 is the most significant digit, matching tensor().
    std::vector<std::size_t> place(t);
    for (std::size_t k = 0; k < t; k++) {
        std::size_t v = 1;
        for (std::size_t j = k + 1; j < t; j++) {
            v *= d;
        }
        place[k] = v;
    }
    ComplexMatrix::Dense m = ComplexMatrix::Dense::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<std::size_t> digits(t, 0);
    for (std::size_t col = 0; col < dim; col++) {
        std::size_t rest = col;
        for (std::size_t k = 0; k < t; k++) {
            digits[k] = rest / place[k];
            rest %= place[k];
        }
        std::size_t row = 0;
        for (std::size_t k = 0; k < t; k++) {
            row += digits[k] * place[p(k)];
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    }
    return ComplexMatrix(std::move(m));
}

}  // namespace mlearn
