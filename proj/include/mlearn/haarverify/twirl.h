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

#ifndef MLEARN_HAARVERIFY_TWIRL_H
#define MLEARN_HAARVERIFY_TWIRL_H

#include <cstddef>

#include "mlearn/qcore/matrix.h"
#include "mlearn/qcore/rng.h"

namespace mlearn {

/// E_U U^{tensor T} A U^{dagger tensor T} from the Weingarten formula:
/// sum_pi c_pi P_pi with c = wg * (Tr(A P_tau^dagger))_tau.
/// Requires A of size d^T x d^T (ShapeError) and d >= T.
ComplexMatrix twirl_closed_form(const ComplexMatrix &a, std::size_t t, std::size_t d);

/// Sample mean of U^{tensor T} A U^{dagger tensor T} over Haar U. The
/// samples are split into fixed chunks with streams rng.derive(chunk), so the
/// result does not depend on `threads`.
ComplexMatrix twirl_monte_carlo(const ComplexMatrix &a, std::size_t t, std::size_t d, std::size_t samples,
                                const RngStream &rng, std::size_t threads = 0);

struct TwirlComparison {
    /// max entrywise |Monte Carlo - closed form|.
    double deviation;
    /// 1 / sqrt(samples).
    double noise_scale;
    std::size_t samples;
};

/// Requires 1 <= T <= 3 and d <= 4 (ResourceError), samples >= 1000
/// (InvalidParameter), and A of size d^T (ShapeError).
TwirlComparison twirl_compare(const ComplexMatrix &a, std::size_t t, std::size_t d, std::size_t samples,
                              const RngStream &rng, std::size_t threads = 0);

}  // namespace mlearn

#endif
