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

#ifndef MLEARN_QCORE_HAAR_H
#define MLEARN_QCORE_HAAR_H

#include <cstddef>

#include "mlearn/qcore/rng.h"
#include "mlearn/qcore/states.h"

namespace mlearn {

/// Haar-random d x d unitary.
///
/// A Ginibre matrix (i.i.d. standard complex Gaussians) is QR-factorized and
/// each column of Q is multiplied by the phase of the matching diagonal entry
/// of R. Without the phase correction the result is unitary but not Haar
/// distributed, because Householder QR does not fix the diagonal phases of R.
UnitaryMatrix sample_haar_unitary(std::size_t d, RngStream &rng);

/// Haar-random pure state: d i.i.d. complex Gaussians, normalized. Same law as
/// any fixed column of a Haar unitary; O(d) time and memory.
PureState sample_haar_state(std::size_t d, RngStream &rng);

}  // namespace mlearn

#endif
