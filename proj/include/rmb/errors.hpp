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

#ifndef RMB_ERRORS_HPP
#define RMB_ERRORS_HPP

#include <functional>
#include <string>
#include <vector>

#include "rmb/mapmodel.hpp"

namespace rmb
{
    // L1 / L2 / Linf distance between a map and an estimate, measured on a
    // uniform grid over [region.lo, region.hi).
    struct ErrorReport
    {
        double l1 = 0.0;
        double l2 = 0.0;
        double linf = 0.0;
        int grid_points = 0;
    };

    enum class BoundMethod
    {
        zeroth,
        first,
        sinc_avg,
    };

    // Closed-form reconstruction-error bounds for one interpolator.
    struct BoundReport
    {
        double l1_bound = 0.0;
        double l2_bound = 0.0;
        double linf_bound = 0.0;
        BoundMethod method = BoundMethod::zeroth;
        double prox = 0.0; // proximity coefficient of the map
    };

    // Grid evaluation of the metrics. Nodes x_i = lo + i h with
    // h = (hi - lo) / grid_points include lo and exclude hi; each node is
    // weighted by its cell width h, so constants integrate exactly. Linf is
    // the grid maximum. Exceptions from the callables propagate.
    ErrorReport error_metrics(const std::function<double(double)> &truth,
                              const std::function<double(double)> &estimate,
                              const Interval &region, int grid_points);
    ErrorReport error_metrics(const FreeSpaceMap &map,
                              const std::function<double(double)> &estimate,
                              const Interval &region, int grid_points);
    ErrorReport error_metrics_serial(const std::function<double(double)> &truth,
                                     const std::function<double(double)> &estimate,
                                     const Interval &region, int grid_points);

    // Nearest-neighbour interpolation bounds. gamma = 2 evaluates the
    // proximity-coefficient forms
    //   L1   <= (3 sqrt 3 / 32) C sum delta^2
    //   L2   <= (3 / 16)        C sqrt(sum delta^3)
    //   Linf <= (3 sqrt 3 / 16) C max delta;
    // other exponents use the derivative-bound forms (m/4) sum delta^2,
    // (m / sqrt 12) sqrt(sum delta^3), (m/2) max delta.
    BoundReport bound_zeroth(const FreeSpaceMap &map, const std::vector<double> &deltas);

    // Linear interpolation bounds:
    //   L1   <= (27 sqrt 3 / 256)               C sum delta^2
    //   L2   <= sqrt((144 sqrt 2 - 117) / 2048) C sqrt(sum delta^3)
    //   Linf <= (3 sqrt 3 / 16)                 C max delta,
    // with derivative-bound forms (9 m / 32) sum delta^2,
    // sqrt((16 sqrt 2 - 13) / 96) m sqrt(sum delta^3), (m/2) max delta for
    // general exponents.
    BoundReport bound_first(const FreeSpaceMap &map, const std::vector<double> &deltas);

    // Offset-averaged squared-L2 aliasing bound for sinc interpolation at
    // uniform spacing:
    //   Ebar <= pi M sum alpha^2 / dmin^3 * e^{-2 pi dmin / spacing}.
    double bound_sinc_avg(const FreeSpaceMap &map, double spacing);

    // Exact offset-averaged squared-L2 aliasing error,
    //   Ebar = (2/pi) integral_{pi/spacing}^inf |F|^2,
    // evaluated by quadrature on the closed-form transform.
    double sinc_avg_error_exact(const FreeSpaceMap &map, double spacing);

    // Relative squared-L2 error bound for nearest-neighbour interpolation:
    //   (9 / 128 pi) (sum alpha/d^3)^2 / (sum alpha^2/d^3) * sum delta^3.
    double relative_error_bound(const FreeSpaceMap &map, const std::vector<double> &deltas);

    const char *bound_method_name(BoundMethod method);

    // "method,d,l1,l1_bound,l2,l2_bound,linf,linf_bound" with full-precision
    // decimals, no trailing newline.
    std::string csv_row(double d, const ErrorReport &errors, const BoundReport &bounds);

} // namespace rmb

#endif
