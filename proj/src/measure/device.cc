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

#include "mlearn/measure/device.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlearn/errors.h"
#include "mlearn/qcore/haar.h"

namespace mlearn {

struct Device::Data {
    DeviceKind kind;
    Access access;
    Backend backend;
    std::size_t d;
    std::optional<UnitaryMatrix> unitary;
    std::optional<Instrument> instrument;
    std::optional<Povm> povm;
    // Fast ProjectiveHaar: weights of |0> and their running sums.
    std::vector<double> weights;
    std::vector<double> cumulative;
};

std::string_view to_string(DeviceKind kind) {
    switch (kind) {
        case DeviceKind::ClassicalUniform:
            return "classical-uniform";
        case DeviceKind::ProjectiveHaar:
            return "projective-haar";
        case DeviceKind::Custom:
            return "custom";
    }
    return "?";
}

std::string_view to_string(Access access) {
    return access == Access::ClassicalOnly ? "classical-only" : "with-post-state";
}

std::string_view to_string(Backend backend) {
    return backend == Backend::Dense ? "dense" : "fast";
}

std::string_view to_string(Hypothesis h) {
    return h == Hypothesis::Classical ? "classical" : "quantum";
}

Device::Device(std::shared_ptr<const Data> data) : data_(std::move(data)) {
}

DeviceKind Device::kind() const {
    return data_->kind;
}
Access Device::access() const {
    return data_->access;
}
Backend Device::backend() const {
    return data_->backend;
}
std::size_t Device::dim() const {
    return data_->d;
}
const UnitaryMatrix *Device::unitary() const {
    return data_->unitary ? &*data_->unitary : nullptr;
}
const Instrument *Device::instrument() const {
    return data_->instrument ? &*data_->instrument : nullptr;
}
std::span<const double> Device::fixed_input_weights() const {
    return data_->weights;
}

namespace {

std::vector<double> running_sum(std::span<const double> w) {
    std::vector<double> c(w.size());
    double acc = 0;
    for (std::size_t i = 0; i < w.size(); i++) {
        acc += w[i];
        c[i] = acc;
    }
    return c;
}

std::vector<double> squared_magnitudes(std::span<const cplx> v) {
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); i++) {
        w[i] = std::norm(v[i]);
    }
    return w;
}

void require_dim(std::size_t d, const char *what) {
    if (d == 0) {
        throw InvalidDimension(std::string(what) + ": d must be at least 1");
    }
}

void require_input_dim(const Device &device, std::size_t input_dim) {
    if (input_dim != device.dim()) {
        throw ShapeError("query: input dimension " + std::to_string(input_dim) + " does not match device dimension " +
                         std::to_string(device.dim()));
    }
}

const UnitaryMatrix &require_unitary(const Device &device) {
    const UnitaryMatrix *u = device.unitary();
    if (u == nullptr) {
        throw Unsupported("query: this fast ProjectiveHaar device never materialized U; use query_fast");
    }
    return *u;
}

// Hermitian part of a post-measurement state, normalized to unit trace.
DensityState normalized_state(ComplexMatrix::Dense m) {
    ComplexMatrix::Dense h = (m + m.adjoint()) * 0.5;
    double tr = h.trace().real();
    h /= tr;
    return DensityState(ComplexMatrix(std::move(h)));
}

}  // namespace

std::size_t sample_from_cumulative(std::span<const double> cumulative, RngStream &rng) {
    double total = cumulative.back();
    double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto k = static_cast<std::size_t>(it - cumulative.begin());
    // u < total, so k < size except for floating ties at the top; zero-weight
    // tail entries share the final cumulative value and are never selected.
    if (k >= cumulative.size()) {
        k = cumulative.size() - 1;
    }
    return k;
}

Device make_device(KindSpec kind, Access access, Backend backend, RngStream &rng) {
    auto data = std::make_shared<Device::Data>();
    data->access = access;
    data->backend = backend;
    if (auto *c = std::get_if<ClassicalUniformSpec>(&kind)) {
        require_dim(c->d, "make_device");
        data->kind = DeviceKind::ClassicalUniform;
        data->d = c->d;
    } else if (auto *p = std::get_if<ProjectiveHaarSpec>(&kind)) {
        require_dim(p->d, "make_device");
        data->kind = DeviceKind::ProjectiveHaar;
        data->d = p->d;
        if (p->unitary && p->unitary->dim() != p->d) {
            throw ShapeError("make_device: injected unitary has dimension " + std::to_string(p->unitary->dim()) +
                             ", expected " + std::to_string(p->d));
        }
        if (backend == Backend::Dense) {
            data->unitary = p->unitary ? std::move(p->unitary) : std::optional(sample_haar_unitary(p->d, rng));
        } else {
            std::vector<cplx> v;
            if (p->unitary) {
                v = p->unitary->adjoint_column(0);
                data->unitary = std::move(p->unitary);
            } else {
                // U^dagger|0> of a Haar U is itself a Haar state.
                auto psi = sample_haar_state(p->d, rng);
                v.assign(psi.amplitudes().begin(), psi.amplitudes().end());
            }
            data->weights = squared_magnitudes(v);
            data->cumulative = running_sum(data->weights);
        }
    } else {
        auto &custom = std::get<CustomSpec>(kind);
        if (backend == Backend::Fast) {
            throw Unsupported("make_device: the fast backend supports only ClassicalUniform and ProjectiveHaar");
        }
        data->kind = DeviceKind::Custom;
        data->d = custom.instrument.dim();
        data->povm = povm_of(custom.instrument);
        data->instrument = std::move(custom.instrument);
    }
    return Device(std::move(data));
}

Device make_hypothesis_device(Hypothesis h, std::size_t d, Access access, Backend backend, RngStream &rng) {
    if (h == Hypothesis::Classical) {
        return make_device(ClassicalUniformSpec{d}, access, backend, rng);
    }
    return make_device(ProjectiveHaarSpec{d, std::nullopt}, access, backend, rng);
}

RandomHypothesis make_random_hypothesis(std::size_t d, Access access, Backend backend, RngStream &rng) {
    Hypothesis h = rng.coin() ? Hypothesis::Quantum : Hypothesis::Classical;
    return {h, make_hypothesis_device(h, d, access, backend, rng)};
}

Instrument dense_instrument(const Device &device) {
    switch (device.kind()) {
        case DeviceKind::ClassicalUniform:
            return classical_uniform_instrument(device.dim());
        case DeviceKind::ProjectiveHaar:
            return projective_instrument(require_unitary(device));
        case DeviceKind::Custom:
            return *device.instrument();
    }
    throw Unsupported("dense_instrument: unknown device kind");
}

std::vector<double> outcome_probabilities(const Device &device, const DensityState &input) {
    require_input_dim(device, input.dim());
    const auto &data = device.data();
    std::size_t d = data.d;
    switch (data.kind) {
        case DeviceKind::ClassicalUniform:
            return std::vector<double>(d, 1.0 / static_cast<double>(d));
        case DeviceKind::ProjectiveHaar: {
            const auto &u = require_unitary(device).matrix().dense();
            // p_i = <u_i| rho |u_i>
            ComplexMatrix::Dense rho_u = input.matrix().dense() * u;
            std::vector<double> p(d);
            for (std::size_t i = 0; i < d; i++) {
                auto k = static_cast<Eigen::Index>(i);
                p[i] = std::max(0.0, u.col(k).dot(rho_u.col(k)).real());
            }
            return p;
        }
        case DeviceKind::Custom: {
            const auto &effects = data.povm->effects();
            std::vector<double> p(effects.size());
            for (std::size_t i = 0; i < effects.size(); i++) {
                p[i] = std::max(0.0, trace_of_product(input.matrix(), effects[i]).real());
            }
            return p;
        }
    }
    return {};
}

std::vector<double> outcome_probabilities(const Device &device, const PureState &input) {
    require_input_dim(device, input.dim());
    if (device.kind() != DeviceKind::ProjectiveHaar) {
        return outcome_probabilities(device, DensityState::from_pure(input));
    }
    const auto &u = require_unitary(device).matrix().dense();
    Eigen::Map<const Eigen::VectorXcd> psi(input.amplitudes().data(), static_cast<Eigen::Index>(input.dim()));
    Eigen::VectorXcd amps = u.adjoint() * psi;
    std::vector<double> p(input.dim());
    for (std::size_t i = 0; i < p.size(); i++) {
        p[i] = std::norm(amps(static_cast<Eigen::Index>(i)));
    }
    return p;
}

namespace {

std::size_t sample_probabilities(std::span<const double> p, RngStream &rng) {
    auto cumulative = running_sum(p);
    return sample_from_cumulative(cumulative, rng);
}

}  // namespace

DensityState post_measurement_state(const Device &device, const DensityState &input, std::size_t outcome) {
    require_input_dim(device, input.dim());
    const auto &data = device.data();
    if (outcome >= (data.kind == DeviceKind::Custom ? data.instrument->outcome_count() : data.d)) {
        throw ShapeError("post_measurement_state: outcome " + std::to_string(outcome) + " out of range");
    }
    switch (data.kind) {
        case DeviceKind::ClassicalUniform:
            return input;
        case DeviceKind::ProjectiveHaar: {
            auto col = require_unitary(device).column(outcome);
            return DensityState(ComplexMatrix::outer(col, col));
        }
        case DeviceKind::Custom: {
            const auto &k = data.instrument->kraus(outcome).dense();
            ComplexMatrix::Dense m = k * input.matrix().dense() * k.adjoint();
            if (!(m.trace().real() > 0)) {
                throw InvalidParameter("post_measurement_state: outcome " + std::to_string(outcome) +
                                       " has probability zero");
            }
            return normalized_state(std::move(m));
        }
    }
    throw Unsupported("post_measurement_state: unknown device kind");
}

MeasurementOutcome query(const Device &device, const DensityState &input, RngStream &rng) {
    require_input_dim(device, input.dim());
    std::size_t index;
    if (device.kind() == DeviceKind::ClassicalUniform) {
        index = rng.uniform_index(device.dim());
    } else {
        index = sample_probabilities(outcome_probabilities(device, input), rng);
    }
    std::optional<DensityState> post;
    if (device.access() == Access::WithPostState) {
        post = post_measurement_state(device, input, index);
    }
    return {index, std::move(post)};
}

MeasurementOutcome query(const Device &device, const PureState &input, RngStream &rng) {
    require_input_dim(device, input.dim());
    if (device.kind() == DeviceKind::ClassicalUniform) {
        // The outcome law ignores the input, so the d x d state is only built when released.
        std::size_t index = rng.uniform_index(device.dim());
        std::optional<DensityState> post;
        if (device.access() == Access::WithPostState) {
            post = DensityState::from_pure(input);
        }
        return {index, std::move(post)};
    }
    if (device.kind() != DeviceKind::ProjectiveHaar) {
        return query(device, DensityState::from_pure(input), rng);
    }
    auto p = outcome_probabilities(device, input);
    std::size_t index = sample_probabilities(p, rng);
    std::optional<DensityState> post;
    if (device.access() == Access::WithPostState) {
        auto col = device.unitary()->column(index);
        post = DensityState(ComplexMatrix::outer(col, col));
    }
    return {index, std::move(post)};
}

namespace {

void require_fast(const Device &device) {
    if (device.backend() != Backend::Fast) {
        throw Unsupported("query_fast: device uses the dense backend");
    }
}

[[noreturn]] void unsupported_fast_input(std::string_view detail) {
    throw Unsupported("query_fast: " + std::string(detail));
}

void check_outcome(const Device &device, std::size_t outcome) {
    if (outcome >= device.dim()) {
        throw ShapeError("query_fast: outcome " + std::to_string(outcome) + " out of range for d=" +
                         std::to_string(device.dim()));
    }
}

}  // namespace

std::size_t query_fast(const Device &device, const FastInput &input, RngStream &rng) {
    require_fast(device);
    const auto &data = device.data();
    if (data.kind == DeviceKind::ClassicalUniform) {
        if (auto *prev = std::get_if<PostStateOf>(&input)) {
            check_outcome(device, prev->outcome);
        }
        return rng.uniform_index(data.d);
    }
    // ProjectiveHaar (Custom devices cannot be fast).
    if (auto *fixed = std::get_if<FixedPure>(&input)) {
        if (fixed->basis_index == 0) {
            return sample_from_cumulative(data.cumulative, rng);
        }
        if (!data.unitary) {
            unsupported_fast_input("FixedPure with basis index != 0 needs a materialized U");
        }
        check_outcome(device, fixed->basis_index);
        return sample_probabilities(squared_magnitudes(data.unitary->adjoint_column(fixed->basis_index)), rng);
    }
    if (std::holds_alternative<MaximallyMixed>(input)) {
        return rng.uniform_index(data.d);
    }
    const auto &prev = std::get<PostStateOf>(input);
    check_outcome(device, prev.outcome);
    return prev.outcome;
}

std::vector<double> outcome_probabilities_fast(const Device &device, const FastInput &input) {
    require_fast(device);
    const auto &data = device.data();
    std::size_t d = data.d;
    std::vector<double> uniform(d, 1.0 / static_cast<double>(d));
    if (data.kind == DeviceKind::ClassicalUniform || std::holds_alternative<MaximallyMixed>(input)) {
        return uniform;
    }
    if (auto *fixed = std::get_if<FixedPure>(&input)) {
        if (fixed->basis_index == 0) {
            return data.weights;
        }
        if (!data.unitary) {
            unsupported_fast_input("FixedPure with basis index != 0 needs a materialized U");
        }
        check_outcome(device, fixed->basis_index);
        return squared_magnitudes(data.unitary->adjoint_column(fixed->basis_index));
    }
    const auto &prev = std::get<PostStateOf>(input);
    check_outcome(device, prev.outcome);
    std::vector<double> p(d, 0.0);
    p[prev.outcome] = 1.0;
    return p;
}

}  // namespace mlearn
