// SPDX-License-Identifier: Apache-2.0
//
// jcrsim - joint chirp-radar/communication simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef JCRSIM_PARALLEL_HPP
#define JCRSIM_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace jcrsim {

// Runs fn(i) for i in [0, count) across num_threads workers using a static
// block partition.  Results must be written to preallocated, disjoint slots
// so the outcome is identical to the serial order.  The first exception
// thrown by any worker is rethrown on the caller thread.
template <typename Fn> void parallel_for(std::size_t count, int num_threads, Fn &&fn)
{
    if (num_threads < 1)
        throw std::invalid_argument("parallel_for: num_threads must be >= 1");

    if (num_threads == 1 || count <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(num_threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;

    for (std::size_t w = 0; w < workers; ++w)
    {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        pool.emplace_back([&, lo, hi]() {
            try
            {
                for (std::size_t i = lo; i < hi; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace jcrsim

#endif
