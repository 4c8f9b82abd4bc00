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

#include "mlearn/qcore/rng.h"

#include <cmath>

namespace mlearn {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t stable_hash(std::string_view name, std::uint64_t key) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return mix64(h ^ mix64(key));
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t master, std::uint64_t index) {
    std::uint64_t a = mix64(master);
    std::uint64_t b = mix64(index ^ 0xD6E8FEB86659FD93ULL);
    std::seed_seq seq{
        static_cast<std::uint32_t>(a),
        static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b),
        static_cast<std::uint32_t>(b >> 32),
    };
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index), engine_(seeded_engine(master_seed, stream_index)) {
}

RngStream RngStream::derive(std::uint64_t key) const {
    return RngStream(master_seed_, mix64(stream_index_ ^ mix64(key + 0x632BE59BD9B4E019ULL)));
}

RngStream RngStream::derive(std::string_view name, std::uint64_t key) const {
    return derive(stable_hash(name, key));
}

std::uint64_t RngStream::next_u64() {
    return engine_();
}

double RngStream::uniform() {
    // 53 high bits -> [0, 1) with full double resolution.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
}

bool RngStream::coin() {
    return (engine_() >> 63) != 0;
}

double RngStream::normal() {
    return normal_(engine_);
}

std::complex<double> RngStream::complex_normal() {
    constexpr double kScale = 0.70710678118654752440;
    double re = normal();
    double im = normal();
    return {re * kScale, im * kScale};
}

}  // namespace mlearn
