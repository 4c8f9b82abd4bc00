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

#include "mlearn/qcore/states.h"

#include <cmath>
#include <string>

#include "mlearn/errors.h"

namespace mlearn {

double unitarity_residual(const ComplexMatrix &u) {
    return identity_residual(multiply(adjoint(u), u));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw InvalidDimension("UnitaryMatrix: expected a non-empty square matrix");
    }
    double residual = unitarity_residual(m_);
    if (!(residual <= kUnitaryTolerance * static_cast<double>(dim()))) {
        throw InvariantViolation("UnitaryMatrix: |U^dagger U - I| = " + std::to_string(residual) +
                                 " exceeds tolerance");
    }
}

std::vector<cplx> UnitaryMatrix::column(std::size_t k) const {
    std::vector<cplx> out(dim());
    for (std::size_t r = 0; r < dim(); r++) {
        out[r] = m_(r, k);
    }
    return out;
}

std::vector<cplx> UnitaryMatrix::adjoint_column(std::size_t k) const {
    std::vector<cplx> out(dim());
    for (std::size_t c = 0; c < dim(); c++) {
        out[c] = std::conj(m_(k, c));
    }
    return out;
}

PureState::PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw InvalidDimension("PureState: dimension must be at least 1");
    }
    double norm_sq = 0;
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvariantViolation("PureState: amplitudes must be finite");
        }
        norm_sq += std::norm(a);
    }
    if (!(std::abs(norm_sq - 1.0) <= kUnitaryTolerance)) {
        throw InvariantViolation("PureState: squared norm " + std::to_string(norm_sq) + " is not 1");
    }
}

PureState PureState::basis(std::size_t d, std::size_t k) {
    if (d == 0) {
        throw InvalidDimension("PureState::basis: d must be at least 1");
    }
    if (k >= d) {
        throw ShapeError("PureState::basis: index " + std::to_string(k) + " out of range for d=" + std::to_string(d));
    }
    std::vector<cplx> amps(d);
    amps[k] = 1.0;
    return PureState(std::move(amps));
}

DensityState::DensityState(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw InvalidDimension("DensityState: expected a non-empty square matrix");
    }
    if (!is_hermitian(m_, kUnitaryTolerance)) {
        throw InvariantViolation("DensityState: matrix is not Hermitian");
    }
    double tr = trace(m_).real();
    if (!(std::abs(tr - 1.0) <= kUnitaryTolerance * static_cast<double>(dim()))) {
        throw InvariantViolation("DensityState: trace " + std::to_string(tr) + " is not 1");
    }
}

DensityState DensityState::from_pure(const PureState &psi) {
    return DensityState(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

double DensityState::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return frobenius_norm_sq(m_);
}

double DensityState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::Dense> solver(m_.dense(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityState::validate_psd() const {
    double lo = min_eigenvalue();
    if (lo < -1e-9) {
        throw InvariantViolation("DensityState: minimum eigenvalue " + std::to_string(lo) + " is negative");
    }
}

DensityState maximally_mixed(std::size_t d) {
    if (d == 0) {
        throw InvalidDimension("maximally_mixed: d must be at least 1");
    }
    std::vector<cplx> diag(d, cplx(1.0 / static_cast<double>(d), 0.0));
    return DensityState(ComplexMatrix::diagonal(diag));
}

}  // namespace mlearn
