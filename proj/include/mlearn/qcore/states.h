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

#ifndef MLEARN_QCORE_STATES_H
#define MLEARN_QCORE_STATES_H

#include <cstddef>
#include <span>
#include <vector>

#include "mlearn/qcore/matrix.h"

namespace mlearn {

/// Base tolerance for unitarity and trace checks; scaled by the dimension.
inline constexpr double kUnitaryTolerance = 1e-10;

/// A d x d unitary. Construction checks max |U^dagger U - I| <= 1e-10 * d.
class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(ComplexMatrix m);

    std::size_t dim() const {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    /// Column k, i.e. U|k>.
    std::vector<cplx> column(std::size_t k) const;
    /// U^dagger |k>, the conjugated k-th row.
    std::vector<cplx> adjoint_column(std::size_t k) const;

   private:
    ComplexMatrix m_;
};

/// max |U^dagger U - I| entrywise.
double unitarity_residual(const ComplexMatrix &u);

/// Unit vector in C^d.
class PureState {
   public:
    explicit PureState(std::vector<cplx> amplitudes);
    /// |k> in dimension d.
    static PureState basis(std::size_t d, std::size_t k);

    std::size_t dim() const {
        return amps_.size();
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    cplx operator[](std::size_t k) const {
        return amps_[k];
    }

   private:
    std::vector<cplx> amps_;
};

/// Hermitian, unit-trace d x d matrix. Positivity is checked only on request
/// through `validate_psd`, since eigendecompositions dominate the cost.
class DensityState {
   public:
    explicit DensityState(ComplexMatrix m);
    static DensityState from_pure(const PureState &psi);

    std::size_t dim() const {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    double purity() const;
    double min_eigenvalue() const;
    /// Throws InvariantViolation if the minimum eigenvalue is below -1e-9.
    void validate_psd() const;

   private:
    ComplexMatrix m_;
};

/// I/d. Throws InvalidDimension for d = 0.
DensityState maximally_mixed(std::size_t d);

}  // namespace mlearn

#endif
