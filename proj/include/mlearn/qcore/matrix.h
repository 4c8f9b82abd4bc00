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

#ifndef MLEARN_QCORE_MATRIX_H
#define MLEARN_QCORE_MATRIX_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mlearn {

using cplx = std::complex<double>;

/// Dense complex matrix with finite entries.
///
/// Storage is delegated to Eigen; the public surface speaks in row-major
/// entries so callers never depend on Eigen's column-major layout.
class ComplexMatrix {
   public:
    using Dense = Eigen::MatrixXcd;

    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Throws ShapeError if the entry count is not rows * cols, InvariantViolation on NaN/Inf.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const cplx> row_major);
    /// Throws InvariantViolation on NaN/Inf.
    explicit ComplexMatrix(Dense m);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    /// |v><w|.
    static ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w);

    std::size_t rows() const {
        return static_cast<std::size_t>(m_.rows());
    }
    std::size_t cols() const {
        return static_cast<std::size_t>(m_.cols());
    }
    bool is_square() const {
        return m_.rows() == m_.cols();
    }

    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    const Dense &dense() const {
        return m_;
    }
    std::vector<cplx> entries() const;

    bool operator==(const ComplexMatrix &other) const;

   private:
    Dense m_;
};

ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix subtract(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix scale(const ComplexMatrix &a, cplx factor);
ComplexMatrix adjoint(const ComplexMatrix &a);
cplx trace(const ComplexMatrix &a);
/// Kronecker product a ⊗ b.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
/// Entrywise maximum absolute value.
double max_abs(const ComplexMatrix &a);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |A - I| entrywise.
double identity_residual(const ComplexMatrix &a);
/// Sum of |entries|^2.
double frobenius_norm_sq(const ComplexMatrix &a);
/// Tr(a b) without forming the product.
cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);
/// Hermitian within `tol` entrywise.
bool is_hermitian(const ComplexMatrix &a, double tol);

/// Solves a x = b. Throws SingularMatrix when a is singular or the residual
/// exceeds 1e-9 times the dimension.
ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix inverse(const ComplexMatrix &a);

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return multiply(a, b);
}
inline ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    return subtract(a, b);
}

}  // namespace mlearn

#endif
