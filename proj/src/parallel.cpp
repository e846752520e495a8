// SPDX-License-Identifier: Apache-2.0
//
// sibeam - beamformed self-interference modeling and analysis for
// multi-panel mmWave full-duplex systems
// Copyright (C) 2026 sibeam contributors
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

#include "sibeam/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sibeam
{

unsigned default_thread_count()
{
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)> &fn)
{
    if (n == 0)
        return;
    if (threads == 0)
        threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    if (threads <= 1)
    {
        fn(0, n);
        return;
    }

    std::vector<std::thread> workers;
    workers.reserve(threads);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; t++)
    {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        workers.emplace_back([&, begin, end]() {
            try
            {
                fn(begin, end);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto &w : workers)
        w.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace sibeam
