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

#ifndef RMB_QUADRATURE_HPP
#define RMB_QUADRATURE_HPP

#include <cstdint>
#include <stdexcept>

#include "rmb/parallel.hpp"

namespace rmb::quad
{
    // Composite Simpson weight for node i of n (n odd): 1,4,2,4,...,2,4,1.
    inline double simpson_weight(std::int64_t i, std::int64_t n)
    {
        if (i == 0 || i == n - 1)
            return 1.0;
        return (i % 2 == 1) ? 4.0 : 2.0;
    }

    inline void check_simpson_n(std::int64_t n)
    {
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("simpson: node count must be odd and >= 3");
    }

    // Integral of f over [a, b] with n Simpson nodes.
    template <typename F>
    double simpson(F &&f, double a, double b, std::int64_t n)
    {
        check_simpson_n(n);
        const double h = (b - a) / static_cast<double>(n - 1);
        const double s = parallel::chunked_sum(n, [&](std::int64_t i) {
            return simpson_weight(i, n) * f(a + static_cast<double>(i) * h);
        });
        return s * h / 3.0;
    }

    template <typename F>
    double simpson_serial(F &&f, double a, double b, std::int64_t n)
    {
        check_simpson_n(n);
        const double h = (b - a) / static_cast<double>(n - 1);
        const double s = parallel::chunked_sum_serial(n, [&](std::int64_t i) {
            return simpson_weight(i, n) * f(a + static_cast<double>(i) * h);
        });
        return s * h / 3.0;
    }

} // namespace rmb::quad

#endif
