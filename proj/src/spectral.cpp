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

#include "rmb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rmb/parallel.hpp"
#include "rmb/quadrature.hpp"

namespace rmb
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void require_1d_friis(const FreeSpaceMap &map, const char *what)
        {
            if (map.dim() != 1)
                throw std::domain_error(std::string(what) + ": map is not one-dimensional");
            if (map.gamma() != 2.0)
                throw std::domain_error(std::string(what) +
                                        ": only supported for path-loss exponent 2");
        }

        double sum_alpha(const FreeSpaceMap &map)
        {
            double s = 0.0;
            for (const Source &src : map.sources())
                s += src.alpha;
            return s;
        }

        double sum_alpha_sq(const FreeSpaceMap &map)
        {
            double s = 0.0;
            for (const Source &src : map.sources())
                s += src.alpha * src.alpha;
            return s;
        }
    } // namespace

    SpectrumBounds spectrum_bounds(const FreeSpaceMap &map)
    {
        require_1d_friis(map, "spectrum_bounds");
        SpectrumBounds b;
        b.dmin_map = map.min_offline_distance();
        b.dmax_map = map.max_offline_distance();
        if (!(b.dmin_map > 0.0))
            throw std::domain_error("spectrum_bounds: a source lies on the mapped line");
        const double dmin3 = b.dmin_map * b.dmin_map * b.dmin_map;
        b.mag_envelope_coeff = pi * sum_alpha(map) / b.dmin_map;
        b.hp_energy_coeff =
            pi * pi * static_cast<double>(map.source_count()) * sum_alpha_sq(map) / (2.0 * dmin3);
        b.total_energy_lb = total_energy_lower_bound(map);
        return b;
    }

    std::complex<double> ft_closed_form(const FreeSpaceMap &map, double kappa)
    {
        require_1d_friis(map, "ft_closed_form");
        const double ak = std::abs(kappa);
        std::complex<double> acc(0.0, 0.0);
        for (const Source &s : map.sources())
        {
            const double d = std::sqrt(s.d2);
            if (!(d > 0.0))
                throw std::domain_error("ft_closed_form: source on the mapped line");
            const double mag = pi * s.alpha / d * std::exp(-d * ak);
            acc += std::complex<double>(mag * std::cos(kappa * s.x), -mag * std::sin(kappa * s.x));
        }
        return acc;
    }

    namespace
    {
        template <typename SumFn>
        std::complex<double> ft_numeric_impl(const FreeSpaceMap &map, double kappa,
                                             double half_width, std::int64_t n, SumFn &&sum)
        {
            if (!(half_width > 0.0))
                throw std::invalid_argument("ft_numeric: half_width must be positive");
            if (n < 1001 || n % 2 == 0)
                throw std::invalid_argument("ft_numeric: n_points must be odd and >= 1001");
            const double a = -half_width;
            const double h = 2.0 * half_width / static_cast<double>(n - 1);
            const double re = sum(n, [&](std::int64_t i) {
                const double x = a + static_cast<double>(i) * h;
                return quad::simpson_weight(i, n) * eval_1d(map, x) * std::cos(kappa * x);
            });
            const double im = sum(n, [&](std::int64_t i) {
                const double x = a + static_cast<double>(i) * h;
                return quad::simpson_weight(i, n) * eval_1d(map, x) * -std::sin(kappa * x);
            });
            return {re * h / 3.0, im * h / 3.0};
        }
    } // namespace

    std::complex<double> ft_numeric(const FreeSpaceMap &map, double kappa, double half_width,
                                    std::int64_t n_points)
    {
        return ft_numeric_impl(map, kappa, half_width, n_points, [](std::int64_t n, auto &&f) {
            return parallel::chunked_sum(n, f);
        });
    }

    std::complex<double> ft_numeric_serial(const FreeSpaceMap &map, double kappa,
                                           double half_width, std::int64_t n_points)
    {
        return ft_numeric_impl(map, kappa, half_width, n_points, [](std::int64_t n, auto &&f) {
            return parallel::chunked_sum_serial(n, f);
        });
    }

    double derivative_bound(const FreeSpaceMap &map)
    {
        const double gamma = map.gamma();
        if (gamma == 2.0)
            return 3.0 * std::sqrt(3.0) / 8.0 * proximity_coefficient(map);
        double s = 0.0;
        for (const Source &src : map.sources())
        {
            if (!(src.d2 > 0.0))
                throw std::domain_error("derivative_bound: source on the mapped region");
            s += src.alpha / std::pow(std::sqrt(src.d2), gamma + 1.0);
        }
        const double c = gamma * std::pow(gamma + 1.0, (gamma + 1.0) / 2.0) /
                         std::pow(gamma + 2.0, (gamma + 2.0) / 2.0);
        return c * s;
    }

    VarBounds var_bounds(double p_at_x, double delta, double dmin)
    {
        if (!(p_at_x > 0.0))
            throw std::invalid_argument("var_bounds: map value must be positive");
        if (!(dmin > 0.0))
            throw std::invalid_argument("var_bounds: dmin must be positive");
        if (delta == 0.0)
            return {p_at_x, p_at_x};
        const double r = dmin / std::abs(delta);
        const double g = std::sqrt(1.0 + 4.0 * r * r);
        return {p_at_x * (g - 1.0) / (g + 1.0), p_at_x * (g + 1.0) / (g - 1.0)};
    }

    FreeSpaceMap var_bound_extremal_map(double p_at_x, double delta, double dmin)
    {
        if (!(p_at_x > 0.0))
            throw std::invalid_argument("var_bound_extremal_map: map value must be positive");
        if (!(dmin > 0.0))
            throw std::invalid_argument("var_bound_extremal_map: dmin must be positive");
        // Maximising source location for evaluation anchored at 0; mirrored
        // for negative offsets.
        const double root = std::sqrt(delta * delta + 4.0 * dmin * dmin);
        const double xs = (delta >= 0.0) ? (delta + root) / 2.0 : (delta - root) / 2.0;
        Source s;
        s.x = xs;
        s.d2 = dmin * dmin;
        s.alpha = p_at_x * (xs * xs + dmin * dmin);
        return FreeSpaceMap({s}, 1.0, 2.0, 1, dmin);
    }

    double hp_energy_bound(const FreeSpaceMap &map, double B)
    {
        if (B < 0.0)
            throw std::invalid_argument("hp_energy_bound: B must be non-negative");
        const SpectrumBounds b = spectrum_bounds(map);
        return b.hp_energy_coeff * std::exp(-2.0 * b.dmin_map * B);
    }

    double total_energy_lower_bound(const FreeSpaceMap &map)
    {
        require_1d_friis(map, "total_energy_lower_bound");
        double s = 0.0;
        for (const Source &src : map.sources())
        {
            if (!(src.d2 > 0.0))
                throw std::domain_error("total_energy_lower_bound: source on the mapped line");
            const double d = std::sqrt(src.d2);
            s += src.alpha * src.alpha / (d * d * d);
        }
        return pi * pi / 2.0 * s;
    }

    double hf_fraction_bound(const FreeSpaceMap &map, double B)
    {
        if (B < 0.0)
            throw std::invalid_argument("hf_fraction_bound: B must be non-negative");
        const double dmin = map.min_offline_distance();
        const double dmax = map.max_offline_distance();
        if (!(dmin > 0.0))
            throw std::domain_error("hf_fraction_bound: source on the mapped line");
        const double ratio = dmax / dmin;
        const double val = static_cast<double>(map.source_count()) * ratio * ratio * ratio *
                           std::exp(-2.0 * dmin * B);
        return std::min(1.0, val);
    }

    double ft_energy_above(const FreeSpaceMap &map, double B)
    {
        require_1d_friis(map, "ft_energy_above");
        if (B < 0.0)
            throw std::invalid_argument("ft_energy_above: B must be non-negative");
        const double dmin = map.min_offline_distance();
        if (!(dmin > 0.0))
            throw std::domain_error("ft_energy_above: source on the mapped line");

        // Envelope tail beyond the cut carries e^{-2 dmin (cut - B)} of the
        // remaining mass; 50 decay constants push it below 1e-15.
        const double cut = B + 50.0 / dmin;

        // Node count: resolve both the e^{-2 dmin kappa} decay and the
        // cross-term oscillation at the largest source separation.
        double xspread = 0.0;
        for (const Source &a : map.sources())
            for (const Source &b : map.sources())
                xspread = std::max(xspread, std::abs(a.x - b.x));
        const double osc = std::max(xspread / (2.0 * pi), dmin);
        std::int64_t n = static_cast<std::int64_t>((cut - B) * osc * 32.0);
        n = std::clamp<std::int64_t>(n | 1, 8001, 4000001);

        return quad::simpson([&](double k) { return std::norm(ft_closed_form(map, k)); }, B, cut,
                             n);
    }

    double l2_norm_sq_numeric(const FreeSpaceMap &map)
    {
        if (map.dim() != 1)
            throw std::domain_error("l2_norm_sq_numeric: map is not one-dimensional");
        double xlo = map.sources().front().x, xhi = xlo;
        for (const Source &s : map.sources())
        {
            xlo = std::min(xlo, s.x);
            xhi = std::max(xhi, s.x);
        }
        const double dmax = map.max_offline_distance();
        const double dmin = map.min_offline_distance();
        const double reach = 120.0 * dmax; // truncation tail below 1e-5 relative
        const double a = xlo - reach, b = xhi + reach;
        std::int64_t n = static_cast<std::int64_t>((b - a) / (dmin / 20.0));
        n = std::clamp<std::int64_t>(n | 1, 4001, 8000001);
        return quad::simpson([&](double x) { const double p = eval_1d(map, x); return p * p; },
                             a, b, n);
    }

} // namespace rmb
