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

#ifndef MLEARN_PROTOCOLS_CSWAP_H
#define MLEARN_PROTOCOLS_CSWAP_H

#include <cstddef>
#include <vector>

#include "mlearn/measure/device.h"

namespace mlearn {

/// Largest register dimension for the dense circuit (joint space 2 d^2).
inline constexpr std::size_t kMaxCswapDim = 4;

/// Joint law of (coin, first outcome, second outcome), flattened as
/// index = (coin * d + first) * d + second.
using JointTable = std::vector<double>;

/// Coin routing evaluated on the single register: P(c, i, j) =
/// 1/2 p(i | I/d) p(j | input_c), input_0 = post-state of i, input_1 = I/d.
JointTable coin_routing_table(const Device &device);

/// The literal circuit on control (x) fresh register (x) query register:
/// |+><+| (x) I/d (x) I/d, first query on the query register, controlled-SWAP
/// between the two registers, second query on the query register, control
/// measured in the computational basis.
/// With `measure_control_first` the control is measured before the swap.
JointTable cswap_circuit_table(const Device &device, bool measure_control_first = false);

struct CswapEquivalence {
    /// max |circuit - coin routing| over the exact tables.
    double table_gap = 0;
    /// max |control measured after - before routing|.
    double control_order_gap = 0;
    /// Total variation between `shots` circuit samples and `shots` samples of
    /// the coin-routed protocol running on the device.
    double sampled_tv = 0;
    std::size_t shots = 0;
    bool passed = false;
};

/// Passes when both exact gaps are <= 1e-10 and the sampled TV is <= 0.02.
/// Requires a dense device with post-state access and d <= kMaxCswapDim
/// (ResourceError otherwise).
CswapEquivalence controlled_swap_equivalence_check(const Device &device, std::size_t shots, RngStream &rng);

/// Runs the check on a fresh Haar projective device and on the classical
/// uniform device of dimension d; passes iff both pass.
bool controlled_swap_equivalence_check(std::size_t d, std::size_t shots, RngStream &rng);

}  // namespace mlearn

#endif
