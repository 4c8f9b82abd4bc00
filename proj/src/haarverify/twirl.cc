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

#include "mlearn/haarverify/twirl.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlearn/errors.h"
#include "mlearn/haarverify/weingarten.h"
#include "mlearn/qcore/haar.h"
#include "mlearn/qcore/parallel.h"

namespace mlearn {

namespace {

constexpr std::size_t kTwirlChunks = 64;

std::size_t tensor_dim(std::size_t t, std::size_t d) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < t; k++) {
        n *= d;
    }
    return n;
}

void require_operator_shape(const ComplexMatrix &a, std::size_t t, std::size_t d, const char *what) {
    std::size_t n = tensor_dim(t, d);
    if (a.rows() != n || a.cols() != n) {
        throw ShapeError(std::string(what) + ": operator must be " + std::to_string(n) + "x" + std::to_string(n) +
                         ", got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

}  // namespace

ComplexMatrix twirl_closed_form(const ComplexMatrix &a, std::size_t t, std::size_t d) {
    require_operator_shape(a, t, d, "twirl_closed_form");
    auto table = weingarten_table(t, d);
    std::size_t n = table.perms.size();
    std::vector<ComplexMatrix> ops;
    ops.reserve(n);
    Eigen::VectorXcd b(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; k++) {
        ops.push_back(permutation_operator(table.perms[k], d));
        b(static_cast<Eigen::Index>(k)) = trace_of_product(a, adjoint(ops.back()));
    }
    Eigen::VectorXcd c = table.wg.cast<cplx>() * b;
    ComplexMatrix::Dense out = ComplexMatrix::Dense::Zero(a.dense().rows(), a.dense().cols());
    for (std::size_t k = 0; k < n; k++) {
        out += c(static_cast<Eigen::Index>(k)) * ops[k].dense();
    }
    return ComplexMatrix(std::move(out));
}

ComplexMatrix twirl_monte_carlo(const ComplexMatrix &a, std::size_t t, std::size_t d, std::size_t samples,
                                const RngStream &rng, std::size_t threads) {
    require_operator_shape(a, t, d, "twirl_monte_carlo");
    if (samples == 0) {
        throw InvalidParameter("twirl_monte_carlo: samples must be at least 1");
    }
    std::size_t chunks = std::min(kTwirlChunks, samples);
    auto partial = parallel_map(chunks, threads, [&](std::size_t chunk) {
        std::size_t begin = samples * chunk / chunks;
        std::size_t end = samples * (chunk + 1) / chunks;
        RngStream chunk_rng = rng.derive(chunk);
        ComplexMatrix::Dense acc = ComplexMatrix::Dense::Zero(a.dense().rows(), a.dense().cols());
        for (std::size_t s = begin; s < end; s++) {
            auto u = sample_haar_unitary(d, chunk_rng);
            ComplexMatrix ut = u.matrix();
            for (std::size_t k = 1; k < t; k++) {
                ut = tensor(ut, u.matrix());
            }
            acc.noalias() += ut.dense() * a.dense() * ut.dense().adjoint();
        }
        return acc;
    });
    ComplexMatrix::Dense total = ComplexMatrix::Dense::Zero(a.dense().rows(), a.dense().cols());
    for (const auto &p : partial) {
        total += p;
    }
    total /= static_cast<double>(samples);
    return ComplexMatrix(std::move(total));
}

TwirlComparison twirl_compare(const ComplexMatrix &a, std::size_t t, std::size_t d, std::size_t samples,
                              const RngStream &rng, std::size_t threads) {
    if (t == 0 || t > 3 || d > 4) {
        throw ResourceError("twirl_compare: requires 1 <= T <= 3 and d <= 4");
    }
    if (samples < 1000) {
        throw InvalidParameter("twirl_compare: samples must be at least 1000");
    }
    require_operator_shape(a, t, d, "twirl_compare");
    auto exact = twirl_closed_form(a, t, d);
    auto estimate = twirl_monte_carlo(a, t, d, samples, rng, threads);
    return {max_abs_diff(estimate, exact), 1.0 / std::sqrt(static_cast<double>(samples)), samples};
}

}  // namespace mlearn
