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

#include "mlearn/protocols/channel.h"

#include <numeric>

#include "mlearn/errors.h"

namespace mlearn {

DeviceChannel::DeviceChannel(const Device &device) : device_(device) {
}

std::size_t DeviceChannel::dim() const {
    return device_.dim();
}

Access DeviceChannel::access() const {
    return device_.access();
}

std::size_t DeviceChannel::query_fixed_zero(RngStream &rng) {
    if (device_.backend() == Backend::Fast) {
        return query_fast(device_, FixedPure{0}, rng);
    }
    if (zero_cumulative_.empty()) {
        auto p = outcome_probabilities(device_, PureState::basis(device_.dim(), 0));
        zero_cumulative_.resize(p.size());
        std::partial_sum(p.begin(), p.end(), zero_cumulative_.begin());
    }
    return sample_from_cumulative(zero_cumulative_, rng);
}

Observation DeviceChannel::query_mixed(RngStream &rng) {
    if (device_.backend() == Backend::Fast) {
        return {query_fast(device_, MaximallyMixed{}, rng), std::nullopt};
    }
    if (!mixed_) {
        mixed_ = maximally_mixed(device_.dim());
    }
    auto out = query(device_, *mixed_, rng);
    return {out.index, std::move(out.post_state)};
}

std::size_t DeviceChannel::query_post_state(const Observation &previous, RngStream &rng) {
    if (device_.access() != Access::WithPostState) {
        throw AccessError("query_post_state: device does not release post-measurement states");
    }
    if (device_.backend() == Backend::Fast) {
        return query_fast(device_, PostStateOf{previous.index}, rng);
    }
    if (!previous.post_state) {
        throw AccessError("query_post_state: observation carries no post-measurement state");
    }
    return query(device_, *previous.post_state, rng).index;
}

RepeatingAdversary::RepeatingAdversary(std::size_t d) : d_(d) {
    if (d == 0) {
        throw InvalidDimension("RepeatingAdversary: d must be at least 1");
    }
}

std::size_t RepeatingAdversary::next(RngStream &rng) {
    if (!last_) {
        last_ = rng.uniform_index(d_);
    }
    return *last_;
}

std::size_t RepeatingAdversary::query_fixed_zero(RngStream &rng) {
    return next(rng);
}

Observation RepeatingAdversary::query_mixed(RngStream &rng) {
    return {next(rng), std::nullopt};
}

std::size_t RepeatingAdversary::query_post_state(const Observation &, RngStream &rng) {
    return next(rng);
}

}  // namespace mlearn
