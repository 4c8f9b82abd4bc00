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

#ifndef MLEARN_QCORE_RNG_H
#define MLEARN_QCORE_RNG_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace mlearn {

/// SplitMix64 finalizer. Used for all seed and stream-index mixing.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a hash of a name combined with an integer key through mix64.
/// Stable across runs, platforms and builds.
std::uint64_t stable_hash(std::string_view name, std::uint64_t key);

/// A deterministic random stream identified by (master seed, stream index).
///
/// Two streams with the same identity produce the same sequence regardless of
/// when or on which thread they are consumed. Streams are move-only; work that
/// runs concurrently derives its own stream with `derive` instead of sharing.
class RngStream {
   public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    RngStream(const RngStream &) = delete;
    RngStream &operator=(const RngStream &) = delete;
    RngStream(RngStream &&) noexcept = default;
    RngStream &operator=(RngStream &&) noexcept = default;

    std::uint64_t master_seed() const {
        return master_seed_;
    }
    std::uint64_t stream_index() const {
        return stream_index_;
    }

    /// Child stream whose index depends only on this stream's identity and `key`,
    /// never on how much of this stream has been consumed.
    RngStream derive(std::uint64_t key) const;
    RngStream derive(std::string_view name, std::uint64_t key) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on {0, ..., n - 1}. Requires n >= 1.
    std::size_t uniform_index(std::size_t n);
    bool coin();
    double normal();
    /// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
    std::complex<double> complex_normal();

   private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mlearn

#endif
