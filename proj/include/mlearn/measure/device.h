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

#ifndef MLEARN_MEASURE_DEVICE_H
#define MLEARN_MEASURE_DEVICE_H

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mlearn/measure/measurement.h"
#include "mlearn/qcore/rng.h"
#include "mlearn/qcore/states.h"

namespace mlearn {

enum class DeviceKind { ClassicalUniform, ProjectiveHaar, Custom };
enum class Access { ClassicalOnly, WithPostState };
enum class Backend { Dense, Fast };

/// The two scenarios a tester must tell apart: a uniform random number
/// generator that ignores its input, or a projective measurement in a Haar
/// random basis.
enum class Hypothesis { Classical, Quantum };

std::string_view to_string(DeviceKind kind);
std::string_view to_string(Access access);
std::string_view to_string(Backend backend);
std::string_view to_string(Hypothesis h);

struct ClassicalUniformSpec {
    std::size_t d;
};
/// A projective measurement in the basis {U|i>}. When `unitary` is empty a
/// fresh Haar basis is drawn by make_device.
struct ProjectiveHaarSpec {
    std::size_t d;
    std::optional<UnitaryMatrix> unitary;
};
struct CustomSpec {
    Instrument instrument;
};
using KindSpec = std::variant<ClassicalUniformSpec, ProjectiveHaarSpec, CustomSpec>;

/// Outcome label plus the post-measurement state when the access mode grants it.
struct MeasurementOutcome {
    std::size_t index;
    std::optional<DensityState> post_state;
};

/// Input descriptors understood by the fast backend.
struct FixedPure {
    std::size_t basis_index = 0;
};
struct MaximallyMixed {};
struct PostStateOf {
    std::size_t outcome;
};
using FastInput = std::variant<FixedPure, MaximallyMixed, PostStateOf>;

/// An immutable, queryable black box. Every query acts with the same fixed
/// measurement, so copies of a Device model identical independent copies of
/// one physical device. Cheap to copy and safe to share between threads.
class Device {
   public:
    DeviceKind kind() const;
    Access access() const;
    Backend backend() const;
    std::size_t dim() const;

    /// Basis unitary of a ProjectiveHaar device, if it was materialized.
    /// Fast devices built from fresh randomness only hold U^dagger|0>.
    const UnitaryMatrix *unitary() const;
    /// Instrument of a Custom device.
    const Instrument *instrument() const;

    /// Born weights of |0> on a fast ProjectiveHaar device: |<x|v>|^2 with
    /// v = U^dagger|0>. Empty for other devices.
    std::span<const double> fixed_input_weights() const;

    /// Opaque implementation state, defined in device.cc.
    struct Data;
    explicit Device(std::shared_ptr<const Data> data);
    const Data &data() const {
        return *data_;
    }

   private:
    std::shared_ptr<const Data> data_;
};

/// Throws Unsupported for Fast + Custom and InvalidDimension for d = 0.
Device make_device(KindSpec kind, Access access, Backend backend, RngStream &rng);

struct RandomHypothesis {
    Hypothesis truth;
    Device device;
};

/// Draws a fair coin for the hypothesis, then builds the matching device
/// (ClassicalUniform or a fresh ProjectiveHaar).
RandomHypothesis make_random_hypothesis(std::size_t d, Access access, Backend backend, RngStream &rng);
/// Device for a fixed hypothesis.
Device make_hypothesis_device(Hypothesis h, std::size_t d, Access access, Backend backend, RngStream &rng);

/// Dense query semantics: Born-rule outcome, post-state K_i rho K_i^dagger / p_i.
/// ClassicalUniform leaves the input unchanged. Throws ShapeError on a dimension
/// mismatch and Unsupported for a fast ProjectiveHaar device without a stored U.
MeasurementOutcome query(const Device &device, const DensityState &input, RngStream &rng);
/// Same as the density-matrix overload for rho = |psi><psi|, in O(d^2) for projective devices.
MeasurementOutcome query(const Device &device, const PureState &input, RngStream &rng);

/// State left behind by outcome `outcome` on `input`: the input itself for
/// ClassicalUniform, U|i><i|U^dagger for ProjectiveHaar, K_i rho K_i^dagger / p_i
/// for Custom. Throws InvalidParameter when the outcome has probability zero.
DensityState post_measurement_state(const Device &device, const DensityState &input, std::size_t outcome);

/// Exact per-outcome probabilities of a dense query.
std::vector<double> outcome_probabilities(const Device &device, const DensityState &input);
std::vector<double> outcome_probabilities(const Device &device, const PureState &input);

/// Fast-path query on a Fast-backend device; returns only the outcome index.
/// Throws Unsupported for combinations without a fast implementation.
std::size_t query_fast(const Device &device, const FastInput &input, RngStream &rng);

/// Exact per-outcome probabilities of the fast path.
std::vector<double> outcome_probabilities_fast(const Device &device, const FastInput &input);

/// Kraus representation of a dense device: {I/sqrt(d)} for ClassicalUniform,
/// rank-1 projectors for ProjectiveHaar, the stored instrument for Custom.
/// Throws Unsupported when a ProjectiveHaar device has no stored U.
Instrument dense_instrument(const Device &device);

/// Samples an index from nonnegative weights through a cumulative table.
std::size_t sample_from_cumulative(std::span<const double> cumulative, RngStream &rng);

}  // namespace mlearn

#endif
