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

#ifndef RMB_INTERP_HPP
#define RMB_INTERP_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "rmb/mapmodel.hpp"

namespace rmb
{
    // Sorted 1D measurements. Locations strictly increasing, values
    // non-negative.
    struct SampleSet
    {
        std::vector<double> xs;
        std::vector<double> ys;
        double noise_sigma = 0.0; // std of the additive noise used at generation

        SampleSet(std::vector<double> xs, std::vector<double> ys, double noise_sigma = 0.0);

        std::size_t size() const { return xs.size(); }
        // Consecutive gaps xs[n+1] - xs[n].
        std::vector<double> deltas() const;
    };

    // Noiseless samples of a 1D map at the given sorted locations.
    SampleSet sample_map(const FreeSpaceMap &map, std::vector<double> xs);

    // Samples with i.i.d. zero-mean Gaussian noise of std sigma, clamped at
    // zero (measured powers cannot be negative). Deterministic in the seed.
    SampleSet sample_map_noisy(const FreeSpaceMap &map, std::vector<double> xs, double sigma,
                               std::uint64_t seed);

    // Nearest-neighbour interpolation on [xs[0], xs[N-1]). At the exact
    // midpoint of a cell the right neighbour wins.
    double interp_nearest(const SampleSet &samples, double x);

    // Piecewise-linear interpolation on [xs[0], xs[N-1]).
    double interp_linear(const SampleSet &samples, double x);

    // Uniform sampling lattice x_n = n * spacing + offset for n in
    // [index_lo, index_hi].
    struct UniformSampling
    {
        double spacing = 1.0;
        double offset = 0.0;
        std::int64_t index_lo = 0;
        std::int64_t index_hi = 0;

        UniformSampling(double spacing, double offset, std::int64_t index_lo,
                        std::int64_t index_hi);
        double location(std::int64_t n) const { return static_cast<double>(n) * spacing + offset; }
        std::int64_t count() const { return index_hi - index_lo + 1; }
    };

    // Truncated sinc series sum_n v_n sinc((x - x_n) / spacing) with
    // sinc(u) = sin(pi u) / (pi u). Sample values are captured once; eval is
    // O(count) per point and concurrently callable.
    class SincSeries
    {
    public:
        SincSeries(std::vector<double> values, UniformSampling sampling);
        SincSeries(const std::function<double(double)> &f, UniformSampling sampling);

        double eval(double x) const;
        const UniformSampling &sampling() const { return sampling_; }
        const std::vector<double> &values() const { return values_; }

    private:
        std::vector<double> values_;
        UniformSampling sampling_;
    };

    // One-shot form of the truncated sinc interpolator.
    double interp_sinc(const std::function<double(double)> &map_values_at,
                       const UniformSampling &sampling, double x);

    // Scattered 2D measurement.
    struct PointSample
    {
        double x = 0.0;
        double y = 0.0;
        double v = 0.0;
    };

    // Mean of the K nearest sample values (Euclidean metric, ties broken by
    // lower sample index).
    double estimate_knn(const std::vector<PointSample> &samples, int k, double qx, double qy);

    // Simple Kriging with zero prior mean and covariance
    // C(r, r') = sigma_s^2 exp(-|r - r'| / delta_s), jitter 1e-8 sigma_s^2 on
    // the diagonal. Operates on raw linear power by default; use_db switches
    // the regression to decibels (values must then be positive).
    class KrigingModel
    {
    public:
        KrigingModel(const std::vector<PointSample> &samples, double sigma_s, double delta_s,
                     bool use_db = false);
        double predict(double qx, double qy) const;

    private:
        std::vector<PointSample> samples_;
        std::vector<double> weights_;
        double sigma_s_, delta_s_;
        bool use_db_;
    };

    enum class KrrKernel
    {
        gaussian,   // exp(-|r - r'|^2 / (2 width^2))
        inverse_sq, // 1 / (|r - r'|^2 + width^2)
    };

    // Kernel ridge regression: prediction k_q^T (K + reg N I)^{-1} y.
    class KrrModel
    {
    public:
        KrrModel(const std::vector<PointSample> &samples, double kernel_width, double reg,
                 KrrKernel kernel = KrrKernel::gaussian, bool use_db = false);
        double predict(double qx, double qy) const;

    private:
        std::vector<PointSample> samples_;
        std::vector<double> weights_;
        double width_, reg_;
        KrrKernel kernel_;
        bool use_db_;
    };

    double estimate_kriging(const std::vector<PointSample> &samples, double sigma_s,
                            double delta_s, double qx, double qy);
    double estimate_krr(const std::vector<PointSample> &samples, double kernel_width, double reg,
                        double qx, double qy, KrrKernel kernel = KrrKernel::gaussian);

} // namespace rmb

#endif
