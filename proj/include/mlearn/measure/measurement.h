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

#ifndef MLEARN_MEASURE_MEASUREMENT_H
#define MLEARN_MEASURE_MEASUREMENT_H

#include <cstddef>
#include <vector>

#include "mlearn/qcore/matrix.h"
#include "mlearn/qcore/states.h"

namespace mlearn {

/// Tolerance for completeness, Hermiticity, PSD and normality checks.
inline constexpr double kMeasurementTolerance = 1e-9;

/// Effect operators {M_i}: PSD, summing to the identity.
///
/// Construction checks shapes, finiteness and completeness. Hermiticity and
/// positivity are checked by `validate`, which costs one eigendecomposition
/// per effect.
class Povm {
   public:
    explicit Povm(std::vector<ComplexMatrix> effects);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t outcome_count() const {
        return effects_.size();
    }
    const std::vector<ComplexMatrix> &effects() const {
        return effects_;
    }
    const ComplexMatrix &effect(std::size_t i) const {
        return effects_[i];
    }

    /// Throws InvariantViolation naming the first non-Hermitian or non-PSD effect.
    void validate() const;

   private:
    std::size_t dim_;
    std::vector<ComplexMatrix> effects_;
};

/// Kraus operators {K_i} with sum_i K_i^dagger K_i = I.
class Instrument {
   public:
    explicit Instrument(std::vector<ComplexMatrix> kraus);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t outcome_count() const {
        return kraus_.size();
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }
    const ComplexMatrix &kraus(std::size_t i) const {
        return kraus_[i];
    }
    /// True iff every [K_i, K_i^dagger] vanishes within 1e-9 entrywise.
    bool is_normal() const {
        return normal_;
    }

   private:
    std::size_t dim_;
    std::vector<ComplexMatrix> kraus_;
    bool normal_;
};

/// max |[K, K^dagger]| entrywise.
double commutator_residual(const ComplexMatrix &k);

/// Effects M_i = K_i^dagger K_i, in the same order.
Povm povm_of(const Instrument &inst);

/// (1/d) sum_i Tr(M_i^2), computed as squared Frobenius norms.
double sharpness(const Povm &povm);

/// Kraus operators Pi_i = U|i><i|U^dagger.
Instrument projective_instrument(const UnitaryMatrix &u);

/// {I/sqrt(d)} repeated d times: uniform outcome, input left unchanged.
Instrument classical_uniform_instrument(std::size_t d);

}  // namespace mlearn

#endif
