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

#include "rmb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <vector>

#include "rmb/parallel.hpp"
#include "rmb/spectral.hpp"

namespace rmb
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        struct Accum
        {
            double abs_sum = 0.0;
            double sq_sum = 0.0;
            double max_abs = 0.0;
        };

        template <bool Parallel>
        ErrorReport metrics_impl(const std::function<double(double)> &truth,
                                 const std::function<double(double)> &estimate,
                                 const Interval &region, int grid_points)
        {
            if (grid_points < 2)
                throw std::invalid_argument("error_metrics: need at least two grid points");
            if (!(region.lo < region.hi))
                throw std::invalid_argument("error_metrics: empty region");
            const double h = (region.hi - region.lo) / static_cast<double>(grid_points);

            const int chunks =
                std::min(parallel::default_chunks, std::max(1, grid_points / 16));
            std::vector<Accum> part(static_cast<std::size_t>(chunks));
            std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count()) if (Parallel)
            for (int c = 0; c < chunks; ++c)
            {
                try
                {
                    const int lo =
                        static_cast<int>(static_cast<long long>(grid_points) * c / chunks);
                    const int hi =
                        static_cast<int>(static_cast<long long>(grid_points) * (c + 1) / chunks);
                    Accum a;
                    for (int i = lo; i < hi; ++i)
                    {
                        const double x = region.lo + static_cast<double>(i) * h;
                        const double e = std::abs(truth(x) - estimate(x));
                        a.abs_sum += e;
                        a.sq_sum += e * e;
                        a.max_abs = std::max(a.max_abs, e);
                    }
                    part[static_cast<std::size_t>(c)] = a;
                }
                catch (...)
                {
#pragma omp critical
                    if (!failure)
                        failure = std::current_exception();
                }
            }
            if (failure)
                std::rethrow_exception(failure);
            Accum total;
            for (const Accum &a : part)
            {
                total.abs_sum += a.abs_sum;
                total.sq_sum += a.sq_sum;
                total.max_abs = std::max(total.max_abs, a.max_abs);
            }
            ErrorReport r;
            r.l1 = total.abs_sum * h;
            r.l2 = std::sqrt(total.sq_sum * h);
            r.linf = total.max_abs;
            r.grid_points = grid_points;
            return r;
        }

        double sum_sq(const std::vector<double> &deltas)
        {
            double s = 0.0;
            for (double d : deltas)
                s += d * d;
            return s;
        }

        double sum_cube(const std::vector<double> &deltas)
        {
            double s = 0.0;
            for (double d : deltas)
                s += d * d * d;
            return s;
        }

        void check_deltas(const std::vector<double> &deltas, const char *what)
        {
            if (deltas.empty())
                throw std::invalid_argument(std::string(what) + ": no sample gaps");
            for (double d : deltas)
                if (!(d > 0.0))
                    throw std::invalid_argument(std::string(what) + ": gaps must be positive");
        }
    } // namespace

    ErrorReport error_metrics(const std::function<double(double)> &truth,
                              const std::function<double(double)> &estimate,
                              const Interval &region, int grid_points)
    {
        return metrics_impl<true>(truth, estimate, region, grid_points);
    }

    ErrorReport error_metrics(const FreeSpaceMap &map,
                              const std::function<double(double)> &estimate,
                              const Interval &region, int grid_points)
    {
        return metrics_impl<true>([&](double x) { return eval_1d(map, x); }, estimate, region,
                                  grid_points);
    }

    ErrorReport error_metrics_serial(const std::function<double(double)> &truth,
                                     const std::function<double(double)> &estimate,
                                     const Interval &region, int grid_points)
    {
        return metrics_impl<false>(truth, estimate, region, grid_points);
    }

    BoundReport bound_zeroth(const FreeSpaceMap &map, const std::vector<double> &deltas)
    {
        check_deltas(deltas, "bound_zeroth");
        BoundReport b;
        b.method = BoundMethod::zeroth;
        b.prox = proximity_coefficient(map);
        const double s2 = sum_sq(deltas);
        const double s3 = sum_cube(deltas);
        const double dmax = *std::max_element(deltas.begin(), deltas.end());
        if (map.gamma() == 2.0)
        {
            const double c = b.prox;
            b.l1_bound = 3.0 * std::sqrt(3.0) / 32.0 * c * s2;
            b.l2_bound = 3.0 / 16.0 * c * std::sqrt(s3);
            b.linf_bound = 3.0 * std::sqrt(3.0) / 16.0 * c * dmax;
        }
        else
        {
            const double m = derivative_bound(map);
            b.l1_bound = m / 4.0 * s2;
            b.l2_bound = m / std::sqrt(12.0) * std::sqrt(s3);
            b.linf_bound = m / 2.0 * dmax;
        }
        return b;
    }

    BoundReport bound_first(const FreeSpaceMap &map, const std::vector<double> &deltas)
    {
        check_deltas(deltas, "bound_first");
        BoundReport b;
        b.method = BoundMethod::first;
        b.prox = proximity_coefficient(map);
        const double s2 = sum_sq(deltas);
        const double s3 = sum_cube(deltas);
        const double dmax = *std::max_element(deltas.begin(), deltas.end());
        if (map.gamma() == 2.0)
        {
            const double c = b.prox;
            b.l1_bound = 27.0 * std::sqrt(3.0) / 256.0 * c * s2;
            b.l2_bound = std::sqrt((144.0 * std::sqrt(2.0) - 117.0) / 2048.0) * c * std::sqrt(s3);
            b.linf_bound = 3.0 * std::sqrt(3.0) / 16.0 * c * dmax;
        }
        else
        {
            const double m = derivative_bound(map);
            b.l1_bound = 9.0 * m / 32.0 * s2;
            b.l2_bound = std::sqrt((16.0 * std::sqrt(2.0) - 13.0) / 96.0) * m * std::sqrt(s3);
            b.linf_bound = m / 2.0 * dmax;
        }
        return b;
    }

    double bound_sinc_avg(const FreeSpaceMap &map, double spacing)
    {
        if (!(spacing > 0.0))
            throw std::invalid_argument("bound_sinc_avg: spacing must be positive");
        if (map.gamma() != 2.0)
            throw std::domain_error("bound_sinc_avg: only supported for path-loss exponent 2");
        const double dmin = map.min_offline_distance();
        if (!(dmin > 0.0))
            throw std::domain_error("bound_sinc_avg: source on the mapped line");
        double a2 = 0.0;
        for (const Source &s : map.sources())
            a2 += s.alpha * s.alpha;
        const double dmin3 = dmin * dmin * dmin;
        return pi * static_cast<double>(map.source_count()) * a2 / dmin3 *
               std::exp(-2.0 * pi * dmin / spacing);
    }

    double sinc_avg_error_exact(const FreeSpaceMap &map, double spacing)
    {
        if (!(spacing > 0.0))
            throw std::invalid_argument("sinc_avg_error_exact: spacing must be positive");
        return 2.0 / pi * ft_energy_above(map, pi / spacing);
    }

    double relative_error_bound(const FreeSpaceMap &map, const std::vector<double> &deltas)
    {
        check_deltas(deltas, "relative_error_bound");
        double num = 0.0, den = 0.0;
        for (const Source &s : map.sources())
        {
            if (!(s.d2 > 0.0))
                throw std::domain_error("relative_error_bound: source on the mapped region");
            const double d3 = std::pow(std::sqrt(s.d2), 3.0);
            num += s.alpha / d3;
            den += s.alpha * s.alpha / d3;
        }
        return 9.0 / (128.0 * pi) * num * num / den * sum_cube(deltas);
    }

    const char *bound_method_name(BoundMethod method)
    {
        switch (method)
        {
        case BoundMethod::zeroth:
            return "zeroth";
        case BoundMethod::first:
            return "first";
        case BoundMethod::sinc_avg:
            return "sinc_avg";
        }
        return "?";
    }

    std::string csv_row(double d, const ErrorReport &errors, const BoundReport &bounds)
    {
        char buf[320];
        std::snprintf(buf, sizeof(buf),
                      "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                      bound_method_name(bounds.method), d, errors.l1, bounds.l1_bound,
                      errors.l2, bounds.l2_bound, errors.linf, bounds.linf_bound);
        return buf;
    }

} // namespace rmb
