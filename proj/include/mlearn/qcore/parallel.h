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

#ifndef MLEARN_QCORE_PARALLEL_H
#define MLEARN_QCORE_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace mlearn {

/// Worker count used when a caller passes threads = 0.
inline std::size_t default_thread_count() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Evaluates fn(0), ..., fn(n - 1) on a pool of `threads` workers (0 = all
/// cores) and returns the results in index order. The first exception thrown
/// by any task is rethrown after all workers have joined.
///
/// Output is independent of the schedule as long as fn(i) depends only on i.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t threads, Fn &&fn) -> std::vector<std::invoke_result_t<Fn &, std::size_t>> {
    using R = std::invoke_result_t<Fn &, std::size_t>;
    // std::vector<bool> packs bits, so concurrent writes to neighbours would race.
    static_assert(!std::is_same_v<R, bool>, "parallel_map: return a wider type than bool");
    std::vector<R> out(n);
    if (threads == 0) {
        threads = default_thread_count();
    }
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; i++) {
            out[i] = fn(i);
        }
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

}  // namespace mlearn

#endif
