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

#include "mlearn/qcore/haar.h"

#include <cmath>

#include "mlearn/errors.h"

namespace mlearn {

UnitaryMatrix sample_haar_unitary(std::size_t d, RngStream &rng) {
    if (d == 0) {
        throw InvalidDimension("sample_haar_unitary: d must be at least 1");
    }
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix::Dense z(n, n);
    // Fill row by row so the draw order matches the row-major convention.
    for (Eigen::Index r = 0; r < n; r++) {
        for (Eigen::Index c = 0; c < n; c++) {
            z(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix::Dense> qr(z);
    ComplexMatrix::Dense q = qr.householderQ();
    const auto &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; k++) {
        cplx rkk = r(k, k);
        double mag = std::abs(rkk);
        // A zero diagonal entry has probability zero for Gaussian input.
        cplx phase = mag > 0 ? rkk / mag : cplx(1.0, 0.0);
        q.col(k) *= phase;
    }
    return UnitaryMatrix(ComplexMatrix(std::move(q)));
}

PureState sample_haar_state(std::size_t d, RngStream &rng) {
    if (d == 0) {
        throw InvalidDimension("sample_haar_state: d must be at least 1");
    }
    std::vector<cplx> amps(d);
    double norm_sq = 0;
    for (auto &a : amps) {
        a = rng.complex_normal();
        norm_sq += std::norm(a);
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    for (auto &a : amps) {
        a *= inv;
    }
    return PureState(std::move(amps));
}

}  // namespace mlearn
