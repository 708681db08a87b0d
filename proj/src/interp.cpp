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

#include "rmb/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace rmb
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
    }

    SampleSet::SampleSet(std::vector<double> xs_in, std::vector<double> ys_in, double sigma)
        : xs(std::move(xs_in)), ys(std::move(ys_in)), noise_sigma(sigma)
    {
        if (xs.size() != ys.size())
            throw std::invalid_argument("SampleSet: location/value count mismatch");
        if (xs.empty())
            throw std::invalid_argument("SampleSet: at least one sample required");
        if (noise_sigma < 0.0)
            throw std::invalid_argument("SampleSet: negative noise std");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i - 1] < xs[i]))
                throw std::invalid_argument("SampleSet: locations must be strictly increasing");
        for (double y : ys)
            if (y < 0.0)
                throw std::invalid_argument("SampleSet: values must be non-negative");
    }

    std::vector<double> SampleSet::deltas() const
    {
        std::vector<double> d(xs.size() - 1);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            d[i] = xs[i + 1] - xs[i];
        return d;
    }

    SampleSet sample_map(const FreeSpaceMap &map, std::vector<double> xs)
    {
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            ys[i] = eval_1d(map, xs[i]);
        return SampleSet(std::move(xs), std::move(ys));
    }

    SampleSet sample_map_noisy(const FreeSpaceMap &map, std::vector<double> xs, double sigma,
                               std::uint64_t seed)
    {
        if (sigma < 0.0)
            throw std::invalid_argument("sample_map_noisy: negative noise std");
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> z(0.0, sigma > 0.0 ? sigma : 1.0);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            double y = eval_1d(map, xs[i]);
            if (sigma > 0.0)
                y = std::max(0.0, y + z(rng));
            ys[i] = y;
        }
        return SampleSet(std::move(xs), std::move(ys), sigma);
    }

    namespace
    {
        // Index n of the cell [xs[n], xs[n+1]) containing x.
        std::size_t cell_index(const SampleSet &s, double x, const char *what)
        {
            if (s.size() < 2)
                throw std::invalid_argument(std::string(what) + ": need at least two samples");
            if (!(x >= s.xs.front()) || !(x < s.xs.back()))
                throw std::out_of_range(std::string(what) + ": query outside [x_1, x_N)");
            const auto it = std::upper_bound(s.xs.begin(), s.xs.end(), x);
            return static_cast<std::size_t>(it - s.xs.begin()) - 1;
        }
    } // namespace

    double interp_nearest(const SampleSet &samples, double x)
    {
        const std::size_t n = cell_index(samples, x, "interp_nearest");
        const double mid = (samples.xs[n] + samples.xs[n + 1]) / 2.0;
        return (x >= mid) ? samples.ys[n + 1] : samples.ys[n];
    }

    double interp_linear(const SampleSet &samples, double x)
    {
        const std::size_t n = cell_index(samples, x, "interp_linear");
        const double slope =
            (samples.ys[n + 1] - samples.ys[n]) / (samples.xs[n + 1] - samples.xs[n]);
        return samples.ys[n] + slope * (x - samples.xs[n]);
    }

    UniformSampling::UniformSampling(double spacing_in, double offset_in, std::int64_t lo,
                                     std::int64_t hi)
        : spacing(spacing_in), offset(offset_in), index_lo(lo), index_hi(hi)
    {
        if (!(spacing > 0.0))
            throw std::invalid_argument("UniformSampling: spacing must be positive");
        if (!(offset >= 0.0) || !(offset < spacing))
            throw std::invalid_argument("UniformSampling: offset must lie in [0, spacing)");
        if (index_hi < index_lo)
            throw std::invalid_argument("UniformSampling: empty index range");
    }

    SincSeries::SincSeries(std::vector<double> values, UniformSampling sampling)
        : values_(std::move(values)), sampling_(sampling)
    {
        if (static_cast<std::int64_t>(values_.size()) != sampling_.count())
            throw std::invalid_argument("SincSeries: value count does not match index range");
    }

    SincSeries::SincSeries(const std::function<double(double)> &f, UniformSampling sampling)
        : sampling_(sampling)
    {
        values_.resize(static_cast<std::size_t>(sampling_.count()));
        for (std::int64_t n = sampling_.index_lo; n <= sampling_.index_hi; ++n)
            values_[static_cast<std::size_t>(n - sampling_.index_lo)] =
                f(sampling_.location(n));
    }

    double SincSeries::eval(double x) const
    {
        // sin(pi (x - x_n) / spacing) = (-1)^n sin(pi (x - offset) / spacing),
        // so one sine evaluation serves every term of the series.
        const double step = sampling_.spacing;
        const double a = (x - sampling_.offset) / step;
        const double sin_a = std::sin(pi * a);
        double acc = 0.0;
        for (std::int64_t n = sampling_.index_lo; n <= sampling_.index_hi; ++n)
        {
            const double v = values_[static_cast<std::size_t>(n - sampling_.index_lo)];
            const double u = a - static_cast<double>(n);
            if (std::abs(u) < 1e-7)
            {
                const double w = pi * u;
                acc += v * (1.0 - w * w / 6.0);
            }
            else
            {
                const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
                acc += v * sgn * sin_a / (pi * u);
            }
        }
        return acc;
    }

    double interp_sinc(const std::function<double(double)> &map_values_at,
                       const UniformSampling &sampling, double x)
    {
        return SincSeries(map_values_at, sampling).eval(x);
    }

    double estimate_knn(const std::vector<PointSample> &samples, int k, double qx, double qy)
    {
        const int n = static_cast<int>(samples.size());
        if (k < 1)
            throw std::invalid_argument("estimate_knn: k must be at least 1");
        if (k > n)
            throw std::invalid_argument("estimate_knn: k exceeds the sample count");
        std::vector<std::pair<double, int>> dist(samples.size());
        for (int i = 0; i < n; ++i)
        {
            const double dx = samples[static_cast<std::size_t>(i)].x - qx;
            const double dy = samples[static_cast<std::size_t>(i)].y - qy;
            dist[static_cast<std::size_t>(i)] = {dx * dx + dy * dy, i};
        }
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        double acc = 0.0;
        for (int i = 0; i < k; ++i)
            acc += samples[static_cast<std::size_t>(dist[static_cast<std::size_t>(i)].second)].v;
        return acc / static_cast<double>(k);
    }

    namespace
    {
        double to_db(double v)
        {
            if (!(v > 0.0))
                throw std::invalid_argument("dB regression requires positive values");
            return 10.0 * std::log10(v);
        }

        std::vector<double> regression_targets(const std::vector<PointSample> &samples,
                                               bool use_db)
        {
            std::vector<double> y(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i)
                y[i] = use_db ? to_db(samples[i].v) : samples[i].v;
            return y;
        }

        std::vector<double> solve_spd(Eigen::MatrixXd &K, const std::vector<double> &y,
                                      const char *what)
        {
            Eigen::Map<const Eigen::VectorXd> rhs(y.data(),
                                                  static_cast<Eigen::Index>(y.size()));
            Eigen::LLT<Eigen::MatrixXd> llt(K);
            if (llt.info() != Eigen::Success)
                throw std::runtime_error(std::string(what) + ": covariance solve failed");
            const Eigen::VectorXd w = llt.solve(rhs);
            return {w.data(), w.data() + w.size()};
        }
    } // namespace

    KrigingModel::KrigingModel(const std::vector<PointSample> &samples, double sigma_s,
                               double delta_s, bool use_db)
        : samples_(samples), sigma_s_(sigma_s), delta_s_(delta_s), use_db_(use_db)
    {
        if (samples_.empty())
            throw std::invalid_argument("KrigingModel: at least one sample required");
        if (!(sigma_s_ > 0.0) || !(delta_s_ > 0.0))
            throw std::invalid_argument("KrigingModel: sigma_s and delta_s must be positive");
        const auto n = static_cast<Eigen::Index>(samples_.size());
        const double var = sigma_s_ * sigma_s_;
        Eigen::MatrixXd K(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            for (Eigen::Index j = 0; j <= i; ++j)
            {
                const double dx = samples_[static_cast<std::size_t>(i)].x -
                                  samples_[static_cast<std::size_t>(j)].x;
                const double dy = samples_[static_cast<std::size_t>(i)].y -
                                  samples_[static_cast<std::size_t>(j)].y;
                const double c = var * std::exp(-std::sqrt(dx * dx + dy * dy) / delta_s_);
                K(i, j) = c;
                K(j, i) = c;
            }
            K(i, i) += 1e-8 * var;
        }
        weights_ = solve_spd(K, regression_targets(samples_, use_db_), "KrigingModel");
    }

    double KrigingModel::predict(double qx, double qy) const
    {
        const double var = sigma_s_ * sigma_s_;
        double acc = 0.0;
        for (std::size_t i = 0; i < samples_.size(); ++i)
        {
            const double dx = samples_[i].x - qx;
            const double dy = samples_[i].y - qy;
            acc += var * std::exp(-std::sqrt(dx * dx + dy * dy) / delta_s_) * weights_[i];
        }
        return use_db_ ? std::pow(10.0, acc / 10.0) : acc;
    }

    namespace
    {
        double krr_kernel(KrrKernel kernel, double width, double dist_sq)
        {
            switch (kernel)
            {
            case KrrKernel::gaussian:
                return std::exp(-dist_sq / (2.0 * width * width));
            case KrrKernel::inverse_sq:
                return 1.0 / (dist_sq + width * width);
            }
            throw std::invalid_argument("estimate_krr: unknown kernel");
        }
    } // namespace

    KrrModel::KrrModel(const std::vector<PointSample> &samples, double kernel_width, double reg,
                       KrrKernel kernel, bool use_db)
        : samples_(samples), width_(kernel_width), reg_(reg), kernel_(kernel), use_db_(use_db)
    {
        if (samples_.empty())
            throw std::invalid_argument("KrrModel: at least one sample required");
        if (!(width_ > 0.0) || !(reg_ > 0.0))
            throw std::invalid_argument("KrrModel: kernel width and reg must be positive");
        const auto n = static_cast<Eigen::Index>(samples_.size());
        Eigen::MatrixXd K(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            for (Eigen::Index j = 0; j <= i; ++j)
            {
                const double dx = samples_[static_cast<std::size_t>(i)].x -
                                  samples_[static_cast<std::size_t>(j)].x;
                const double dy = samples_[static_cast<std::size_t>(i)].y -
                                  samples_[static_cast<std::size_t>(j)].y;
                const double c = krr_kernel(kernel_, width_, dx * dx + dy * dy);
                K(i, j) = c;
                K(j, i) = c;
            }
            K(i, i) += reg_ * static_cast<double>(n);
        }
        weights_ = solve_spd(K, regression_targets(samples_, use_db_), "KrrModel");
    }

    double KrrModel::predict(double qx, double qy) const
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < samples_.size(); ++i)
        {
            const double dx = samples_[i].x - qx;
            const double dy = samples_[i].y - qy;
            acc += krr_kernel(kernel_, width_, dx * dx + dy * dy) * weights_[i];
        }
        return use_db_ ? std::pow(10.0, acc / 10.0) : acc;
    }

    double estimate_kriging(const std::vector<PointSample> &samples, double sigma_s,
                            double delta_s, double qx, double qy)
    {
        return KrigingModel(samples, sigma_s, delta_s).predict(qx, qy);
    }

    double estimate_krr(const std::vector<PointSample> &samples, double kernel_width, double reg,
                        double qx, double qy, KrrKernel kernel)
    {
        return KrrModel(samples, kernel_width, reg, kernel).predict(qx, qy);
    }

} // namespace rmb
