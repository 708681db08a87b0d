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

#ifndef RMB_SPECTRAL_HPP
#define RMB_SPECTRAL_HPP

#include <complex>
#include <cstdint>

#include "rmb/mapmodel.hpp"

namespace rmb
{
    // Frequency-domain summary of a 1D map (gamma = 2). kappa denotes spatial
    // frequency in rad/m throughout.
    struct SpectrumBounds
    {
        double mag_envelope_coeff = 0.0; // pi * sum alpha / dmin_map
        double dmin_map = 0.0;           // min_m d_m, m
        double dmax_map = 0.0;           // max_m d_m, m
        double hp_energy_coeff = 0.0;    // pi^2 M sum alpha^2 / (2 dmin_map^3)
        double total_energy_lb = 0.0;    // (pi^2 / 2) sum alpha^2 / d^3
    };

    SpectrumBounds spectrum_bounds(const FreeSpaceMap &map);

    // Closed-form Fourier transform of a 1D gamma = 2 map:
    //   F(kappa) = pi sum_m (alpha_m / d_m) e^{-j kappa x_m} e^{-d_m |kappa|}.
    std::complex<double> ft_closed_form(const FreeSpaceMap &map, double kappa);

    // Simpson quadrature of integral p(x) e^{-j kappa x} dx over
    // [-half_width, half_width]; n_points odd and >= 1001. Truncation error is
    // O(max_m alpha_m / half_width). Oracle-grade check of ft_closed_form.
    std::complex<double> ft_numeric(const FreeSpaceMap &map, double kappa, double half_width,
                                    std::int64_t n_points);
    std::complex<double> ft_numeric_serial(const FreeSpaceMap &map, double kappa,
                                           double half_width, std::int64_t n_points);

    // Upper bound on |p'|. For gamma = 2 this is (3 sqrt 3 / 8) * C with C the
    // proximity coefficient. For other exponents it is the sup of the exact
    // derivative magnitude per source,
    //   gamma (gamma+1)^{(gamma+1)/2} / (gamma+2)^{(gamma+2)/2}
    //       * sum alpha_m / d_m^{gamma+1},
    // attained at offset d_m / sqrt(gamma + 1).
    double derivative_bound(const FreeSpaceMap &map);

    struct VarBounds
    {
        double lo = 0.0;
        double hi = 0.0;
    };

    // Range a free-space map can reach delta away from a point where it takes
    // the value p_at_x, given all sources keep distance >= dmin:
    //   lo = p (g-1)/(g+1), hi = p (g+1)/(g-1), g = sqrt(1 + 4 (dmin/delta)^2).
    // lo * hi = p^2; delta = 0 collapses to (p, p). Only |delta| matters.
    VarBounds var_bounds(double p_at_x, double delta, double dmin);

    // Single-source map attaining the upper variability bound: evaluates to
    // p_at_x at 0 and to var_bounds(...).hi at delta.
    FreeSpaceMap var_bound_extremal_map(double p_at_x, double delta, double dmin);

    // Upper bound on the spectral energy above B:
    //   integral_B^inf |F|^2 <= pi^2 M sum alpha^2 / (2 dmin^3) e^{-2 dmin B}.
    double hp_energy_bound(const FreeSpaceMap &map, double B);

    // Lower bound on the one-sided total spectral energy:
    //   integral_0^inf |F|^2 >= (pi^2 / 2) sum alpha^2 / d^3.
    double total_energy_lower_bound(const FreeSpaceMap &map);

    // Fraction of spectral energy above B, clamped to 1:
    //   min(1, M (dmax/dmin)^3 e^{-2 dmin B}).
    double hf_fraction_bound(const FreeSpaceMap &map, double B);

    // Numeric integral_B^inf |F(kappa)|^2 d kappa on the closed form. The cut
    // is placed where the magnitude envelope contributes < 1e-15 of the mass.
    double ft_energy_above(const FreeSpaceMap &map, double B);

    // Numeric integral of p^2 over the real line (window chosen from the
    // source geometry). Used for Parseval cross-checks.
    double l2_norm_sq_numeric(const FreeSpaceMap &map);

} // namespace rmb

#endif
