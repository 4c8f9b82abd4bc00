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

#ifndef MLEARN_HAARVERIFY_PERMUTATION_H
#define MLEARN_HAARVERIFY_PERMUTATION_H

#include <cstddef>
#include <vector>

#include "mlearn/qcore/matrix.h"

namespace mlearn {

/// Permutation of {0, ..., T-1} in one-line notation: i maps to image[i].
class Permutation {
   public:
    /// Throws InvariantViolation unless `image` is a bijection.
    explicit Permutation(std::vector<std::size_t> image);
    static Permutation identity(std::size_t size);

    std::size_t size() const {
        return image_.size();
    }
    std::size_t operator()(std::size_t i) const {
        return image_[i];
    }
    const std::vector<std::size_t> &image() const {
        return image_;
    }
    bool operator==(const Permutation &) const = default;

   private:
    std::vector<std::size_t> image_;
};

bool is_valid_permutation(const std::vector<std::size_t> &image);

/// (a * b)(i) = a(b(i)). Throws ShapeError on size mismatch.
Permutation compose(const Permutation &a, const Permutation &b);
Permutation inverse(const Permutation &p);
/// Number of cycles, counting fixed points.
std::size_t cycle_count(const Permutation &p);

/// All T! permutations in lexicographic order of their image tables.
std::vector<Permutation> all_permutations(std::size_t size);

/// Operator on (C^d)^{tensor T} sending |i_0 ... i_{T-1}> to the basis state
/// whose factor p(k) holds i_k. Satisfies P_a P_b = P_{a*b}.
ComplexMatrix permutation_operator(const Permutation &p, std::size_t d);

}  // namespace mlearn

#endif
