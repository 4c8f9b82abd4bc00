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

#include "mlearn/protocols/cswap.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mlearn/errors.h"
#include "mlearn/protocols/channel.h"
#include "mlearn/protocols/protocols.h"

namespace mlearn {

namespace {

void require_circuit_device(const Device &device) {
    if (device.dim() > kMaxCswapDim) {
        throw ResourceError("controlled-SWAP check: d = " + std::to_string(device.dim()) + " exceeds the dense cap of " +
                            std::to_string(kMaxCswapDim));
    }
    if (device.backend() != Backend::Dense) {
        throw Unsupported("controlled-SWAP check: needs a dense device");
    }
    if (device.access() != Access::WithPostState) {
        throw AccessError("controlled-SWAP check: needs post-state access");
    }
}

std::size_t flat(std::size_t coin, std::size_t i, std::size_t j, std::size_t d) {
    return (coin * d + i) * d + j;
}

// SWAP on C^d (x) C^d.
ComplexMatrix swap_operator(std::size_t d) {
    ComplexMatrix::Dense s = ComplexMatrix::Dense::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t b = 0; b < d; b++) {
            s(static_cast<Eigen::Index>(b * d + a), static_cast<Eigen::Index>(a * d + b)) = 1.0;
        }
    }
    return ComplexMatrix(std::move(s));
}

ComplexMatrix basis_projector(std::size_t n, std::size_t k) {
    std::vector<cplx> diag(n, 0.0);
    diag[k] = 1.0;
    return ComplexMatrix::diagonal(diag);
}

}  // namespace

JointTable coin_routing_table(const Device &device) {
    std::size_t d = device.dim();
    DensityState mixed = maximally_mixed(d);
    auto first = outcome_probabilities(device, mixed);
    JointTable table(2 * d * d, 0.0);
    for (std::size_t i = 0; i < d; i++) {
        if (first[i] <= 0) {
            continue;
        }
        auto routed = outcome_probabilities(device, post_measurement_state(device, mixed, i));
        for (std::size_t j = 0; j < d; j++) {
            table[flat(0, i, j, d)] = 0.5 * first[i] * routed[j];
            table[flat(1, i, j, d)] = 0.5 * first[i] * first[j];
        }
    }
    return table;
}

JointTable cswap_circuit_table(const Device &device, bool measure_control_first) {
    require_circuit_device(device);
    std::size_t d = device.dim();
    Instrument inst = dense_instrument(device);
    if (inst.outcome_count() != d) {
        throw Unsupported("controlled-SWAP check: instrument must have d outcomes");
    }

    ComplexMatrix id2 = ComplexMatrix::identity(2);
    ComplexMatrix idd = ComplexMatrix::identity(d);
    ComplexMatrix plus = scale(ComplexMatrix(2, 2, std::vector<cplx>{1, 1, 1, 1}), 0.5);
    ComplexMatrix mixed = maximally_mixed(d).matrix();
    ComplexMatrix initial = tensor(plus, tensor(mixed, mixed));

    ComplexMatrix p0 = basis_projector(2, 0);
    ComplexMatrix p1 = basis_projector(2, 1);
    ComplexMatrix cswap = tensor(p0, ComplexMatrix::identity(d * d)) + tensor(p1, swap_operator(d));
    ComplexMatrix cswap_dag = adjoint(cswap);
    ComplexMatrix control[2] = {tensor(p0, ComplexMatrix::identity(d * d)), tensor(p1, ComplexMatrix::identity(d * d))};

    std::vector<ComplexMatrix> lifted_kraus;
    std::vector<ComplexMatrix> lifted_effect;
    for (const auto &k : inst.kraus()) {
        lifted_kraus.push_back(tensor(id2, tensor(idd, k)));
        lifted_effect.push_back(tensor(id2, tensor(idd, multiply(adjoint(k), k))));
    }

    JointTable table(2 * d * d, 0.0);
    for (std::size_t i = 0; i < d; i++) {
        // Unnormalized joint state after the first query reports i.
        ComplexMatrix after_first = lifted_kraus[i] * initial * adjoint(lifted_kraus[i]);
        for (std::size_t c = 0; c < 2; c++) {
            ComplexMatrix routed;
            if (measure_control_first) {
                routed = cswap * (control[c] * after_first * control[c]) * cswap_dag;
            } else {
                routed = control[c] * (cswap * after_first * cswap_dag) * control[c];
            }
            for (std::size_t j = 0; j < d; j++) {
                table[flat(c, i, j, d)] = std::max(0.0, trace_of_product(lifted_effect[j], routed).real());
            }
        }
    }
    return table;
}

CswapEquivalence controlled_swap_equivalence_check(const Device &device, std::size_t shots, RngStream &rng) {
    require_circuit_device(device);
    if (shots < 1) {
        throw InvalidParameter("controlled-SWAP check: shots must be at least 1");
    }
    std::size_t d = device.dim();
    JointTable circuit = cswap_circuit_table(device, false);
    JointTable circuit_early = cswap_circuit_table(device, true);
    JointTable routing = coin_routing_table(device);

    CswapEquivalence out;
    out.shots = shots;
    for (std::size_t k = 0; k < circuit.size(); k++) {
        out.table_gap = std::max(out.table_gap, std::abs(circuit[k] - routing[k]));
        out.control_order_gap = std::max(out.control_order_gap, std::abs(circuit[k] - circuit_early[k]));
    }

    // Circuit shots follow the measurement order of the circuit: first query
    // outcome, then the control, then the second query.
    std::vector<double> p_first(d, 0.0);
    for (std::size_t c = 0; c < 2; c++) {
        for (std::size_t i = 0; i < d; i++) {
            for (std::size_t j = 0; j < d; j++) {
                p_first[i] += circuit[flat(c, i, j, d)];
            }
        }
    }
    std::vector<double> cum_first(d);
    std::partial_sum(p_first.begin(), p_first.end(), cum_first.begin());

    RngStream circuit_rng = rng.derive("cswap/circuit", 0);
    RngStream routing_rng = rng.derive("cswap/routing", 0);
    std::vector<double> circuit_counts(circuit.size(), 0.0);
    std::vector<double> routing_counts(circuit.size(), 0.0);
    DeviceChannel channel(device);
    for (std::size_t s = 0; s < shots; s++) {
        std::size_t i = sample_from_cumulative(cum_first, circuit_rng);
        double row0 = 0, row1 = 0;
        for (std::size_t j = 0; j < d; j++) {
            row0 += circuit[flat(0, i, j, d)];
            row1 += circuit[flat(1, i, j, d)];
        }
        std::size_t c = circuit_rng.uniform() * (row0 + row1) < row0 ? 0 : 1;
        std::vector<double> cum_second(d);
        double acc = 0;
        for (std::size_t j = 0; j < d; j++) {
            acc += circuit[flat(c, i, j, d)];
            cum_second[j] = acc;
        }
        std::size_t j = sample_from_cumulative(cum_second, circuit_rng);
        circuit_counts[flat(c, i, j, d)] += 1;

        RobustRep rep = robust_rep(channel, routing_rng);
        routing_counts[flat(rep.coin ? 1 : 0, rep.first, rep.second, d)] += 1;
    }
    double tv = 0;
    for (std::size_t k = 0; k < circuit.size(); k++) {
        tv += std::abs(circuit_counts[k] - routing_counts[k]);
    }
    out.sampled_tv = 0.5 * tv / static_cast<double>(shots);
    out.passed = out.table_gap <= 1e-10 && out.control_order_gap <= 1e-10 && out.sampled_tv <= 0.02;
    return out;
}

bool controlled_swap_equivalence_check(std::size_t d, std::size_t shots, RngStream &rng) {
    if (d > kMaxCswapDim) {
        throw ResourceError("controlled-SWAP check: d = " + std::to_string(d) + " exceeds the dense cap of " +
                            std::to_string(kMaxCswapDim));
    }
    RngStream device_rng = rng.derive("cswap/device", d);
    Device quantum =
        make_device(ProjectiveHaarSpec{d, std::nullopt}, Access::WithPostState, Backend::Dense, device_rng);
    Device classical = make_device(ClassicalUniformSpec{d}, Access::WithPostState, Backend::Dense, device_rng);
    RngStream q_rng = rng.derive("cswap/quantum", d);
    RngStream c_rng = rng.derive("cswap/classical", d);
    bool q = controlled_swap_equivalence_check(quantum, shots, q_rng).passed;
    bool c = controlled_swap_equivalence_check(classical, shots, c_rng).passed;
    return q && c;
}

}  // namespace mlearn
