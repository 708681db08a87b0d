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

#include <cmath>
#include <complex>
#include <numbers>

#include <stdexcept>

#include <doctest.h>

#include "rmb/parallel.hpp"
#include "rmb/spectral.hpp"
#include "test_util.hpp"

using namespace rmb;
using doctest::Approx;

namespace
{
    constexpr double pi = std::numbers::pi;

    FreeSpaceMap example_map()
    {
        return FreeSpaceMap({{1.0, 0.0, 1.0, 1.0, -1.0},
                             {5.0, 0.0, 9.0, 3.0, -1.0},
                             {8.0, 0.0, 4.0, 3.0, -1.0}},
                            1.0, 2.0, 1, 1.0);
    }

    FreeSpaceMap unit_source()
    {
        return FreeSpaceMap({{0.0, 0.0, 1.0, 1.0, -1.0}}, 1.0, 2.0, 1, 1.0);
    }
} // namespace

TEST_CASE("ft_closed_form values")
{
    CHECK(ft_closed_form(unit_source(), 0.0).real() == Approx(pi).epsilon(1e-15));
    CHECK(ft_closed_form(unit_source(), 0.0).imag() == 0.0);
    CHECK(ft_closed_form(example_map(), 0.0).real() == Approx(3.5 * pi).epsilon(1e-15));

    // conjugate symmetry
    test::Rng rng(21);
    for (int i = 0; i < 20; ++i)
    {
        const FreeSpaceMap map = test::random_map(rng);
        const double k = rng.uniform(-3.0, 3.0);
        const auto plus = ft_closed_form(map, k);
        const auto minus = ft_closed_form(map, -k);
        CHECK(minus.real() == Approx(plus.real()).epsilon(1e-13));
        CHECK(minus.imag() == Approx(-plus.imag()).epsilon(1e-13));
    }

    CHECK_THROWS_AS(
        ft_closed_form(FreeSpaceMap({{0, 0, 1, 1, -1}}, 1.0, 4.0, 1, 1.0), 0.0),
        std::domain_error);
}

TEST_CASE("magnitude envelope")
{
    test::Rng rng(22);
    for (int i = 0; i < 30; ++i)
    {
        const FreeSpaceMap map = test::random_map(rng);
        const SpectrumBounds sb = spectrum_bounds(map);
        CHECK(sb.dmin_map <= sb.dmax_map);
        const double k = rng.uniform(-6.0, 6.0);
        CHECK(std::abs(ft_closed_form(map, k)) <=
              sb.mag_envelope_coeff * std::exp(-sb.dmin_map * std::abs(k)) * (1.0 + 1e-12));
    }

    // envelope instance at kappa = 2 / dmin
    const SpectrumBounds sb = spectrum_bounds(example_map());
    const double k = 2.0 / sb.dmin_map;
    CHECK(std::abs(ft_closed_form(example_map(), k)) <=
          sb.mag_envelope_coeff * std::exp(-2.0));
}

TEST_CASE("ft_numeric matches the closed form")
{
    const FreeSpaceMap map = unit_source();
    const auto at0 = ft_numeric(map, 0.0, 1e4, 100001);
    CHECK(std::abs(at0 - std::complex<double>(pi, 0.0)) <= 1e-3 * pi);

    const auto at1 = ft_numeric(map, 1.0, 1e4, 100001);
    const auto cf1 = ft_closed_form(map, 1.0);
    CHECK(std::abs(at1 - cf1) <= 1e-3 * std::abs(cf1));

    CHECK_THROWS_AS(ft_numeric(map, 0.0, 1e4, 100000), std::invalid_argument);
    CHECK_THROWS_AS(ft_numeric(map, 0.0, 1e4, 999), std::invalid_argument);
    CHECK_THROWS_AS(ft_numeric(map, 0.0, 0.0, 100001), std::invalid_argument);
}

TEST_CASE("ft_numeric serial and parallel agree bitwise")
{
    const FreeSpaceMap map = example_map();
    const auto par = ft_numeric(map, 0.7, 2e3, 20001);
    const auto ser = ft_numeric_serial(map, 0.7, 2e3, 20001);
    CHECK(par.real() == ser.real());
    CHECK(par.imag() == ser.imag());
}

TEST_CASE("derivative_bound")
{
    CHECK(derivative_bound(unit_source()) == Approx(3.0 * std::sqrt(3.0) / 8.0).epsilon(1e-15));
    CHECK(derivative_bound(example_map()) ==
          3.0 * std::sqrt(3.0) / 8.0 * proximity_coefficient(example_map()));

    SUBCASE("grid max of the analytic derivative stays below the bound")
    {
        test::Rng rng(23);
        for (int m = 0; m < 100; ++m)
        {
            const FreeSpaceMap map = test::random_map(rng);
            const double bound = derivative_bound(map);
            const double grid_max = parallel::chunked_max(100000, [&](std::int64_t i) {
                const double x = -20.0 + 40.0 * static_cast<double>(i) / 99999.0;
                return std::abs(deriv_1d(map, x));
            });
            CHECK(grid_max <= bound * (1.0 + 1e-12));
        }
    }

    SUBCASE("gamma=4 bound dominates the finite-difference derivative")
    {
        test::Rng rng(24);
        for (int m = 0; m < 10; ++m)
        {
            test::RandomMapOpts opt;
            opt.gamma = 4.0;
            opt.d_lo = 0.8;
            opt.d_hi = 3.0;
            const FreeSpaceMap map = test::random_map(rng, opt);
            const double bound = derivative_bound(map);
            double grid_max = 0.0;
            for (int i = 0; i < 20000; ++i)
            {
                const double x = -22.0 + 44.0 * static_cast<double>(i) / 19999.0;
                grid_max = std::max(grid_max, std::abs(deriv_1d_fd(map, x)));
            }
            CHECK(grid_max <= bound * (1.0 + 1e-9));
        }
    }

    SUBCASE("gamma=4 single-source bound is tight at offset d/sqrt(5)")
    {
        const FreeSpaceMap map({{0.0, 0.0, 1.0, 1.0, -1.0}}, 1.0, 4.0, 1, 1.0);
        const double at_sup = std::abs(deriv_1d_fd(map, 1.0 / std::sqrt(5.0), 1e-5));
        CHECK(at_sup == Approx(derivative_bound(map)).epsilon(1e-6));
    }
}

TEST_CASE("var_bounds")
{
    SUBCASE("example ratio at dmin = |delta|/2")
    {
        const VarBounds vb = var_bounds(1.0, 2.0, 1.0);
        CHECK(vb.hi == Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(vb.lo == Approx(1.0 / (3.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-14));
    }
    SUBCASE("zero offset collapses")
    {
        const VarBounds vb = var_bounds(2.5, 0.0, 1.0);
        CHECK(vb.lo == 2.5);
        CHECK(vb.hi == 2.5);
    }
    SUBCASE("reciprocal symmetry and sign invariance")
    {
        test::Rng rng(25);
        for (int i = 0; i < 50; ++i)
        {
            const double p = rng.uniform(0.1, 10.0);
            const double delta = rng.uniform(-8.0, 8.0);
            const double dmin = rng.uniform(0.2, 4.0);
            const VarBounds vb = var_bounds(p, delta, dmin);
            CHECK(vb.lo * vb.hi == Approx(p * p).epsilon(1e-12));
            const VarBounds mirrored = var_bounds(p, -delta, dmin);
            CHECK(mirrored.lo == vb.lo);
            CHECK(mirrored.hi == vb.hi);
        }
    }
    CHECK_THROWS_AS(var_bounds(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(var_bounds(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("var_bound_extremal_map attains the upper bound")
{
    SUBCASE("worked example p=1, delta=2, dmin=1")
    {
        const FreeSpaceMap map = var_bound_extremal_map(1.0, 2.0, 1.0);
        CHECK(map.sources()[0].x == Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
        CHECK(map.sources()[0].alpha == Approx(4.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(eval_1d(map, 0.0) == Approx(1.0).epsilon(1e-12));
        const double g = std::sqrt(2.0);
        CHECK(eval_1d(map, 2.0) == Approx((g + 1.0) / (g - 1.0)).epsilon(1e-9));
    }
    SUBCASE("mirrored construction for negative offsets")
    {
        const FreeSpaceMap map = var_bound_extremal_map(1.0, -2.0, 1.0);
        CHECK(eval_1d(map, 0.0) == Approx(1.0).epsilon(1e-12));
        CHECK(eval_1d(map, -2.0) == Approx(var_bounds(1.0, -2.0, 1.0).hi).epsilon(1e-9));
    }
    SUBCASE("random instances meet the bound to 1e-9 relative")
    {
        test::Rng rng(26);
        for (int i = 0; i < 50; ++i)
        {
            const double p = rng.uniform(0.1, 5.0);
            const double delta = rng.uniform(-6.0, 6.0);
            const double dmin = rng.uniform(0.3, 3.0);
            if (std::abs(delta) < 1e-3)
                continue;
            const FreeSpaceMap map = var_bound_extremal_map(p, delta, dmin);
            CHECK(eval_1d(map, 0.0) == Approx(p).epsilon(1e-12));
            CHECK(eval_1d(map, delta) == Approx(var_bounds(p, delta, dmin).hi).epsilon(1e-9));
        }
    }
    SUBCASE("single-source grid search never exceeds the bound")
    {
        const double p = 1.0, delta = 2.0, dmin = 1.0;
        const double hi = var_bounds(p, delta, dmin).hi;
        for (int ix = 0; ix <= 400; ++ix)
        {
            const double xm = -10.0 + 20.0 * static_cast<double>(ix) / 400.0;
            for (int id = 0; id <= 50; ++id)
            {
                const double d = dmin + 4.0 * static_cast<double>(id) / 50.0;
                // alpha fixed by the anchor constraint p(0) = p
                const double alpha = p * (xm * xm + d * d);
                const double v = alpha / ((delta - xm) * (delta - xm) + d * d);
                CHECK(v <= hi * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("hp_energy_bound")
{
    CHECK(hp_energy_bound(unit_source(), 0.0) == Approx(pi * pi / 2.0).epsilon(1e-15));

    const FreeSpaceMap map = example_map();
    const double dmin = map.min_offline_distance();
    CHECK(hp_energy_bound(map, 1.0 + 1.0 / (2.0 * dmin)) ==
          Approx(hp_energy_bound(map, 1.0) / std::numbers::e).epsilon(1e-13));
    CHECK_THROWS_AS(hp_energy_bound(map, -1.0), std::invalid_argument);

    // numeric tail energy stays below the bound
    test::Rng rng(27);
    for (int i = 0; i < 10; ++i)
    {
        const FreeSpaceMap m = test::random_map(rng);
        for (double B : {0.0, 0.5, 2.0})
            CHECK(ft_energy_above(m, B) <= hp_energy_bound(m, B) * (1.0 + 1e-9));
    }
}

TEST_CASE("total_energy_lower_bound and Parseval")
{
    CHECK(total_energy_lower_bound(unit_source()) == Approx(pi * pi / 2.0).epsilon(1e-15));
    CHECK(total_energy_lower_bound(example_map()) ==
          Approx(pi * pi / 2.0 * (1.0 + 1.0 / 3.0 + 9.0 / 8.0)).epsilon(1e-14));

    SUBCASE("numeric energy sits above the lower bound")
    {
        test::Rng rng(28);
        for (int i = 0; i < 10; ++i)
        {
            const FreeSpaceMap m = test::random_map(rng);
            CHECK(ft_energy_above(m, 0.0) >= total_energy_lower_bound(m) * (1.0 - 1e-9));
        }
    }
    SUBCASE("Parseval: (1/pi) total spectral energy equals the squared L2 norm")
    {
        test::Rng rng(29);
        for (int i = 0; i < 5; ++i)
        {
            const FreeSpaceMap m = test::random_map(rng);
            const double via_ft = ft_energy_above(m, 0.0) / pi;
            const double direct = l2_norm_sq_numeric(m);
            CHECK(via_ft == Approx(direct).epsilon(1e-3));
        }
    }
}

TEST_CASE("hf_fraction_bound")
{
    CHECK(hf_fraction_bound(unit_source(), 0.0) == 1.0); // clamped
    CHECK(hf_fraction_bound(unit_source(), 5.0) == Approx(std::exp(-10.0)).epsilon(1e-13));

    test::Rng rng(30);
    for (int i = 0; i < 50; ++i)
    {
        const FreeSpaceMap m = test::random_map(rng);
        const double B = rng.uniform(0.0, 2.0);
        const double frac = ft_energy_above(m, B) / ft_energy_above(m, 0.0);
        CHECK(frac <= hf_fraction_bound(m, B) * (1.0 + 1e-9));
    }
}
