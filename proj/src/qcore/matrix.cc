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

#include "mlearn/qcore/matrix.h"

#include <cmath>
#include <string>

#include "mlearn/errors.h"

namespace mlearn {

namespace {

void require_finite(const ComplexMatrix::Dense &m) {
    if (!m.allFinite()) {
        throw InvariantViolation("ComplexMatrix: entries must be finite (no NaN/Inf)");
    }
}

std::string shape_str(const ComplexMatrix &a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
    }
}

void require_square(const ComplexMatrix &a, const char *op) {
    if (!a.is_square()) {
        throw ShapeError(std::string(op) + ": expected a square matrix, got " + shape_str(a));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : m_(Dense::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const cplx> row_major)
    : ComplexMatrix(rows, cols) {
    if (row_major.size() != rows * cols) {
        throw ShapeError(
            "ComplexMatrix: " + std::to_string(row_major.size()) + " entries given for a " + std::to_string(rows) +
            "x" + std::to_string(cols) + " matrix");
    }
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row_major[r * cols + c];
        }
    }
    require_finite(m_);
}

ComplexMatrix::ComplexMatrix(Dense m) : m_(std::move(m)) {
    require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    auto k = static_cast<Eigen::Index>(n);
    return ComplexMatrix(Dense::Identity(k, k));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix result(diag.size(), diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        result.m_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag[k];
    }
    require_finite(result.m_);
    return result;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v, std::span<const cplx> w) {
    Eigen::Map<const Eigen::VectorXcd> vv(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::Map<const Eigen::VectorXcd> ww(w.data(), static_cast<Eigen::Index>(w.size()));
    return ComplexMatrix(Dense(vv * ww.adjoint()));
}

std::vector<cplx> ComplexMatrix::entries() const {
    std::vector<cplx> out;
    out.reserve(rows() * cols());
    for (Eigen::Index r = 0; r < m_.rows(); r++) {
        for (Eigen::Index c = 0; c < m_.cols(); c++) {
            out.push_back(m_(r, c));
        }
    }
    return out;
}

bool ComplexMatrix::operator==(const ComplexMatrix &other) const {
    return rows() == other.rows() && cols() == other.cols() && m_ == other.m_;
}

ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("multiply: inner dimensions differ, " + shape_str(a) + " * " + shape_str(b));
    }
    return ComplexMatrix(ComplexMatrix::Dense(a.dense() * b.dense()));
}

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "add");
    return ComplexMatrix(ComplexMatrix::Dense(a.dense() + b.dense()));
}

ComplexMatrix subtract(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "subtract");
    return ComplexMatrix(ComplexMatrix::Dense(a.dense() - b.dense()));
}

ComplexMatrix scale(const ComplexMatrix &a, cplx factor) {
    return ComplexMatrix(ComplexMatrix::Dense(a.dense() * factor));
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    return ComplexMatrix(ComplexMatrix::Dense(a.dense().adjoint()));
}

cplx trace(const ComplexMatrix &a) {
    require_square(a, "trace");
    return a.dense().trace();
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const auto &x = a.dense();
    const auto &y = b.dense();
    ComplexMatrix::Dense out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); i++) {
        for (Eigen::Index j = 0; j < x.cols(); j++) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return ComplexMatrix(std::move(out));
}

double max_abs(const ComplexMatrix &a) {
    if (a.rows() == 0 || a.cols() == 0) {
        return 0.0;
    }
    return a.dense().cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    if (a.rows() == 0 || a.cols() == 0) {
        return 0.0;
    }
    return (a.dense() - b.dense()).cwiseAbs().maxCoeff();
}

double identity_residual(const ComplexMatrix &a) {
    require_square(a, "identity_residual");
    if (a.rows() == 0) {
        return 0.0;
    }
    auto n = a.dense().rows();
    return (a.dense() - ComplexMatrix::Dense::Identity(n, n)).cwiseAbs().maxCoeff();
}

double frobenius_norm_sq(const ComplexMatrix &a) {
    return a.dense().squaredNorm();
}

cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw ShapeError("trace_of_product: " + shape_str(a) + " and " + shape_str(b) + " are not conformable");
    }
    // Tr(AB) = sum_ij A_ij B_ji
    return a.dense().cwiseProduct(b.dense().transpose()).sum();
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
    if (!a.is_square()) {
        return false;
    }
    if (a.rows() == 0) {
        return true;
    }
    return (a.dense() - a.dense().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_square(a, "solve");
    if (a.rows() != b.rows()) {
        throw ShapeError("solve: right-hand side " + shape_str(b) + " does not match " + shape_str(a));
    }
    Eigen::FullPivLU<ComplexMatrix::Dense> lu(a.dense());
    if (!lu.isInvertible()) {
        throw SingularMatrix("solve: matrix is singular (rank " + std::to_string(lu.rank()) + " of " +
                             std::to_string(a.rows()) + ")");
    }
    ComplexMatrix::Dense x = lu.solve(b.dense());
    double residual = a.rows() == 0 ? 0.0 : (a.dense() * x - b.dense()).cwiseAbs().maxCoeff();
    double scale_b = std::max(1.0, b.rows() == 0 ? 0.0 : b.dense().cwiseAbs().maxCoeff());
    if (!(residual <= 1e-9 * static_cast<double>(a.rows()) * scale_b)) {
        throw SingularMatrix("solve: residual " + std::to_string(residual) + " too large, matrix is ill-conditioned");
    }
    return ComplexMatrix(std::move(x));
}

ComplexMatrix inverse(const ComplexMatrix &a) {
    require_square(a, "inverse");
    return solve(a, ComplexMatrix::identity(a.rows()));
}

}  // namespace mlearn
