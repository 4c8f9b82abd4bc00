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

#include "mlearn/measure/measurement.h"

#include <cmath>
#include <string>

#include "mlearn/errors.h"

namespace mlearn {

namespace {

std::size_t common_square_dim(const std::vector<ComplexMatrix> &ops, const char *what) {
    if (ops.empty()) {
        throw InvariantViolation(std::string(what) + ": at least one operator is required");
    }
    std::size_t d = ops.front().rows();
    if (d == 0) {
        throw InvalidDimension(std::string(what) + ": dimension must be at least 1");
    }
    for (std::size_t i = 0; i < ops.size(); i++) {
        if (ops[i].rows() != d || ops[i].cols() != d) {
            throw ShapeError(std::string(what) + ": operator " + std::to_string(i) + " is " +
                             std::to_string(ops[i].rows()) + "x" + std::to_string(ops[i].cols()) + ", expected " +
                             std::to_string(d) + "x" + std::to_string(d));
        }
    }
    return d;
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> effects) : dim_(common_square_dim(effects, "Povm")), effects_(std::move(effects)) {
    auto n = static_cast<Eigen::Index>(dim_);
    ComplexMatrix::Dense total = ComplexMatrix::Dense::Zero(n, n);
    for (const auto &m : effects_) {
        total += m.dense();
    }
    double residual = (total - ComplexMatrix::Dense::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(residual <= kMeasurementTolerance)) {
        throw InvariantViolation("Povm: |sum_i M_i - I| = " + std::to_string(residual) + " exceeds 1e-9");
    }
}

void Povm::validate() const {
    for (std::size_t i = 0; i < effects_.size(); i++) {
        if (!is_hermitian(effects_[i], kMeasurementTolerance)) {
            throw InvariantViolation("Povm: effect " + std::to_string(i) + " is not Hermitian");
        }
    }
    for (std::size_t i = 0; i < effects_.size(); i++) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix::Dense> solver(effects_[i].dense(), Eigen::EigenvaluesOnly);
        double lo = solver.eigenvalues().minCoeff();
        if (lo < -kMeasurementTolerance) {
            throw InvariantViolation("Povm: effect " + std::to_string(i) + " has negative eigenvalue " +
                                     std::to_string(lo));
        }
    }
}

double commutator_residual(const ComplexMatrix &k) {
    const auto &m = k.dense();
    ComplexMatrix::Dense c = m * m.adjoint() - m.adjoint() * m;
    return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

Instrument::Instrument(std::vector<ComplexMatrix> kraus)
    : dim_(common_square_dim(kraus, "Instrument")), kraus_(std::move(kraus)), normal_(true) {
    auto n = static_cast<Eigen::Index>(dim_);
    ComplexMatrix::Dense total = ComplexMatrix::Dense::Zero(n, n);
    for (const auto &k : kraus_) {
        total += k.dense().adjoint() * k.dense();
    }
    double residual = (total - ComplexMatrix::Dense::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(residual <= kMeasurementTolerance)) {
        throw InvariantViolation("Instrument: |sum_i K_i^dagger K_i - I| = " + std::to_string(residual) +
                                 " exceeds 1e-9");
    }
    for (const auto &k : kraus_) {
        if (commutator_residual(k) > kMeasurementTolerance) {
            normal_ = false;
            break;
        }
    }
}

Povm povm_of(const Instrument &inst) {
    std::vector<ComplexMatrix> effects;
    effects.reserve(inst.outcome_count());
    for (const auto &k : inst.kraus()) {
        effects.emplace_back(ComplexMatrix::Dense(k.dense().adjoint() * k.dense()));
    }
    return Povm(std::move(effects));
}

double sharpness(const Povm &povm) {
    double total = 0;
    for (const auto &m : povm.effects()) {
        total += frobenius_norm_sq(m);
    }
    return total / static_cast<double>(povm.dim());
}

Instrument projective_instrument(const UnitaryMatrix &u) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(u.dim());
    for (std::size_t i = 0; i < u.dim(); i++) {
        auto col = u.column(i);
        kraus.push_back(ComplexMatrix::outer(col, col));
    }
    return Instrument(std::move(kraus));
}

Instrument classical_uniform_instrument(std::size_t d) {
    if (d == 0) {
        throw InvalidDimension("classical_uniform_instrument: d must be at least 1");
    }
    auto k = scale(ComplexMatrix::identity(d), 1.0 / std::sqrt(static_cast<double>(d)));
    return Instrument(std::vector<ComplexMatrix>(d, k));
}

}  // namespace mlearn
