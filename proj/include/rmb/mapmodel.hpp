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

#ifndef RMB_MAPMODEL_HPP
#define RMB_MAPMODEL_HPP

#include <string>
#include <vector>

namespace rmb
{
    // One incoherent transmitter. The canonical strength parameter is the
    // numerator coefficient alpha = P * (lambda / 4 pi)^2 in watt * m^2;
    // the transmit power is kept only as an optional convenience (< 0 when
    // unset). d2 is the squared off-line (1D) or off-plane (2D) distance of
    // the source to the mapped region, in m^2.
    struct Source
    {
        double x = 0.0;      // longitudinal coordinate of the source, m
        double y = 0.0;      // transverse coordinate, m (2D maps only)
        double d2 = 1.0;     // squared off-region distance, m^2
        double alpha = 0.0;  // P * (lambda / 4 pi)^2, W m^2
        double power = -1.0; // transmit power, W; negative = not recorded
    };

    // Interval [lo, hi) on the mapped line.
    struct Interval
    {
        double lo = 0.0;
        double hi = 1.0;
    };

    // Superposition of free-space sources restricted to a line (dim = 1) or a
    // plane (dim = 2). Received power at r is
    //
    //     p(r) = sum_m alpha_m / (|r - s_m|^2 + d_m^2) ^ (gamma / 2),
    //
    // with gamma = 2 the physical free-space case. Immutable after
    // construction; all evaluation functions are pure.
    class FreeSpaceMap
    {
    public:
        FreeSpaceMap(std::vector<Source> sources, double wavelength, double gamma = 2.0,
                     int dim = 1, double min_source_distance = 1.0);

        const std::vector<Source> &sources() const { return sources_; }
        double wavelength() const { return wavelength_; }
        double gamma() const { return gamma_; }
        int dim() const { return dim_; }
        double min_source_distance() const { return min_source_distance_; }
        std::size_t source_count() const { return sources_.size(); }

        // Smallest / largest off-region distance over the sources, m.
        double min_offline_distance() const;
        double max_offline_distance() const;

    private:
        std::vector<Source> sources_;
        double wavelength_;
        double gamma_;
        int dim_;
        double min_source_distance_; // configured far-field floor, m
    };

    // alpha = power * (wavelength / 4 pi)^2.
    double alpha_from_power(double power, double wavelength);
    double power_from_alpha(double alpha, double wavelength);

    // Received power of a 1D map at x. The gamma = 2 path avoids pow() so it
    // is bit-identical to the specialised Friis form.
    double eval_1d(const FreeSpaceMap &map, double x);

    // Received power of a 2D map at (x, y).
    double eval_2d(const FreeSpaceMap &map, double x, double y);

    // Analytic spatial derivative of a 1D map (gamma = 2 only):
    //   p'(x) = sum_m -2 alpha_m (x - x_m) / ((x - x_m)^2 + d_m^2)^2.
    double deriv_1d(const FreeSpaceMap &map, double x);

    // Central finite difference of eval_1d; works for any gamma.
    double deriv_1d_fd(const FreeSpaceMap &map, double x, double h = 1e-4);

    // Proximity coefficient C = sum_m alpha_m / d_m^3. Requires d_m > 0.
    double proximity_coefficient(const FreeSpaceMap &map);

    // True iff every source keeps at least dmin 3D distance from all points
    // of the region. The off-region distance lower-bounds the 3D distance, so
    // the check reduces to sqrt(d2) >= dmin.
    bool check_min_distance(const FreeSpaceMap &map, const Interval &region, double dmin);

    // JSON map description:
    //   {"wavelength": w, "gamma": g, "dim": 1|2, "dmin": m,
    //    "sources": [{"x":, "y":, "d2":, "alpha": | "power_w":}, ...]}
    // gamma, dim, dmin and per-source y are optional; unknown keys are
    // rejected. A source may carry both alpha and power_w only if they agree
    // through the wavelength to 1e-12 relative.
    FreeSpaceMap parse_map_json(const std::string &text);
    FreeSpaceMap load_map_json(const std::string &path);
    std::string map_to_json(const FreeSpaceMap &map);

} // namespace rmb

#endif
