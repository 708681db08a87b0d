// SPDX-License-Identifier: Apache-2.0
//
// rmb: free-space radio map model, interpolators and reconstruction-error bounds
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

#ifndef RMB_PARALLEL_HPP
#define RMB_PARALLEL_HPP

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace rmb::parallel
{
    // Number of worker threads. RMB_THREADS, when set to a positive integer,
    // caps the OpenMP default.
    inline int thread_count()
    {
        int n = omp_get_max_threads();
        if (const char *env = std::getenv("RMB_THREADS"))
        {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap >= 1 && cap < n)
                n = static_cast<int>(cap);
        }
        return n;
    }

    // Reductions are accumulated over a fixed number of index chunks and the
    // partials are combined in chunk order. The result is bit-identical from
    // run to run for any thread count, which the CSV reproducibility contract
    // relies on.
    constexpr int default_chunks = 512;

    template <typename F>
    double chunked_sum_serial(std::int64_t n, F &&term, int chunks = default_chunks)
    {
        if (n <= 0)
            return 0.0;
        chunks = static_cast<int>(std::min<std::int64_t>(chunks, n));
        double total = 0.0;
        for (int c = 0; c < chunks; ++c)
        {
            const std::int64_t lo = n * c / chunks;
            const std::int64_t hi = n * (c + 1) / chunks;
            double part = 0.0;
            for (std::int64_t i = lo; i < hi; ++i)
                part += term(i);
            total += part;
        }
        return total;
    }

    template <typename F>
    double chunked_sum(std::int64_t n, F &&term, int chunks = default_chunks)
    {
        if (n <= 0)
            return 0.0;
        chunks = static_cast<int>(std::min<std::int64_t>(chunks, n));
        std::vector<double> part(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int c = 0; c < chunks; ++c)
        {
            const std::int64_t lo = n * c / chunks;
            const std::int64_t hi = n * (c + 1) / chunks;
            double s = 0.0;
            for (std::int64_t i = lo; i < hi; ++i)
                s += term(i);
            part[static_cast<std::size_t>(c)] = s;
        }
        double total = 0.0;
        for (double p : part)
            total += p;
        return total;
    }

    // Maximum of term(i) over i in [0, n). Max is order-independent, so a
    // plain parallel scan with a serial combine suffices.
    template <typename F>
    double chunked_max(std::int64_t n, F &&term, int chunks = default_chunks)
    {
        if (n <= 0)
            return 0.0;
        chunks = static_cast<int>(std::min<std::int64_t>(chunks, n));
        std::vector<double> part(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int c = 0; c < chunks; ++c)
        {
            const std::int64_t lo = n * c / chunks;
            const std::int64_t hi = n * (c + 1) / chunks;
            double m = term(lo);
            for (std::int64_t i = lo + 1; i < hi; ++i)
                m = std::max(m, term(i));
            part[static_cast<std::size_t>(c)] = m;
        }
        double total = part[0];
        for (double p : part)
            total = std::max(total, p);
        return total;
    }

    template <typename F>
    double chunked_max_serial(std::int64_t n, F &&term)
    {
        double m = term(0);
        for (std::int64_t i = 1; i < n; ++i)
            m = std::max(m, term(i));
        return m;
    }

} // namespace rmb::parallel

#endif
