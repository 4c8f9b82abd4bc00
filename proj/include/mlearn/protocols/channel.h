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

#ifndef MLEARN_PROTOCOLS_CHANNEL_H
#define MLEARN_PROTOCOLS_CHANNEL_H

#include <cstddef>
#include <optional>
#include <vector>

#include "mlearn/measure/device.h"

namespace mlearn {

/// Result of a query whose post-measurement state may be fed into a later query.
struct Observation {
    std::size_t index;
    /// Materialized post-state (dense backend with post-state access only).
    std::optional<DensityState> post_state;
};

/// The inputs a protocol ever sends to the black box: the fixed state |0>, a
/// fresh maximally mixed state, or the post-state of an earlier query.
///
/// Protocols talk to this interface rather than to Device so that stateful
/// adversarial devices can be injected. Implementations are used by a single
/// protocol invocation at a time.
class QueryChannel {
   public:
    virtual ~QueryChannel() = default;

    virtual std::size_t dim() const = 0;
    virtual Access access() const = 0;

    virtual std::size_t query_fixed_zero(RngStream &rng) = 0;
    virtual Observation query_mixed(RngStream &rng) = 0;
    /// Throws AccessError when the channel does not grant post-state access.
    virtual std::size_t query_post_state(const Observation &previous, RngStream &rng) = 0;
};

/// Adapts a (stateless) Device; dense devices go through `query`, fast ones
/// through `query_fast`.
class DeviceChannel final : public QueryChannel {
   public:
    explicit DeviceChannel(const Device &device);

    std::size_t dim() const override;
    Access access() const override;
    std::size_t query_fixed_zero(RngStream &rng) override;
    Observation query_mixed(RngStream &rng) override;
    std::size_t query_post_state(const Observation &previous, RngStream &rng) override;

    const Device &device() const {
        return device_;
    }

   private:
    const Device &device_;
    std::optional<DensityState> mixed_;
    /// Outcome law of |0>, computed on the first dense fixed-input query.
    std::vector<double> zero_cumulative_;
};

/// Adversarial double with memory: every query returns the previous output
/// (the very first query is uniform). It fools plain measuring-twice into
/// reporting sharpness 1 but also collides when the second input is fresh.
class RepeatingAdversary final : public QueryChannel {
   public:
    explicit RepeatingAdversary(std::size_t d);

    std::size_t dim() const override {
        return d_;
    }
    Access access() const override {
        return Access::WithPostState;
    }
    std::size_t query_fixed_zero(RngStream &rng) override;
    Observation query_mixed(RngStream &rng) override;
    std::size_t query_post_state(const Observation &previous, RngStream &rng) override;

   private:
    std::size_t next(RngStream &rng);

    std::size_t d_;
    std::optional<std::size_t> last_;
};

}  // namespace mlearn

#endif
