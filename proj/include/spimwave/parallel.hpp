// SPDX-License-Identifier: Apache-2.0
//
// spimwave: spectral-efficiency analysis for spatial path index modulation
// Copyright (C) 2026 The spimwave authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spimwave
{
    namespace detail
    {
        inline thread_local bool in_parallel_region = false;
    }

    // Runs body(i) for i in [0, n). Work is claimed dynamically, so callers must
    // write results into per-index slots. Nested calls run serially.
    template <typename Body>
    void parallel_for(std::size_t n, Body &&body)
    {
        const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t workers = std::min(hw, n);
        if (workers <= 1 || detail::in_parallel_region)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto run = [&]
        {
            detail::in_parallel_region = true;
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
            detail::in_parallel_region = false;
        };

        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(run);
        run();
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);
    }
}
