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
//
// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... to
// narrow; RMB_THREADS caps the parallel side.

#include <benchmark/benchmark.h>

#include <cmath>

#include "rmb/errors.hpp"
#include "rmb/interp.hpp"
#include "rmb/mapmodel.hpp"
#include "rmb/parallel.hpp"
#include "rmb/quadrature.hpp"
#include "rmb/spectral.hpp"

namespace
{
    rmb::FreeSpaceMap bench_map()
    {
        return rmb::FreeSpaceMap({{1000.0, 0.0, 1e4, 157.9, -1.0},
                                  {5000.0, 0.0, 1e4, 157.9, -1.0},
                                  {8000.0, 0.0, 1e4, 157.9, -1.0}},
                                 1.0, 2.0, 1, 1.0);
    }

    void bm_ft_numeric_serial(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        for (auto _ : state)
            benchmark::DoNotOptimize(rmb::ft_numeric_serial(map, 0.01, 5e4, 400001));
    }

    void bm_ft_numeric_omp(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        for (auto _ : state)
            benchmark::DoNotOptimize(rmb::ft_numeric(map, 0.01, 5e4, 400001));
    }

    void bm_error_metrics_serial(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        std::vector<double> xs(11);
        for (int n = 0; n < 11; ++n)
            xs[static_cast<std::size_t>(n)] = 1000.0 * n;
        const rmb::SampleSet samples = rmb::sample_map(map, xs);
        const auto est = [&](double x) { return rmb::interp_nearest(samples, x); };
        const auto truth = [&](double x) { return rmb::eval_1d(map, x); };
        for (auto _ : state)
            benchmark::DoNotOptimize(
                rmb::error_metrics_serial(truth, est, rmb::Interval{0.0, 10000.0}, 200000));
    }

    void bm_error_metrics_omp(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        std::vector<double> xs(11);
        for (int n = 0; n < 11; ++n)
            xs[static_cast<std::size_t>(n)] = 1000.0 * n;
        const rmb::SampleSet samples = rmb::sample_map(map, xs);
        const auto est = [&](double x) { return rmb::interp_nearest(samples, x); };
        const auto truth = [&](double x) { return rmb::eval_1d(map, x); };
        for (auto _ : state)
            benchmark::DoNotOptimize(
                rmb::error_metrics(truth, est, rmb::Interval{0.0, 10000.0}, 200000));
    }

    void bm_simpson_serial(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        const auto f = [&](double k) { return std::norm(rmb::ft_closed_form(map, k)); };
        for (auto _ : state)
            benchmark::DoNotOptimize(rmb::quad::simpson_serial(f, 0.0, 1.0, 200001));
    }

    void bm_simpson_omp(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        const auto f = [&](double k) { return std::norm(rmb::ft_closed_form(map, k)); };
        for (auto _ : state)
            benchmark::DoNotOptimize(rmb::quad::simpson(f, 0.0, 1.0, 200001));
    }

    void bm_sinc_batch_serial(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        const rmb::SincSeries recon([&](double x) { return rmb::eval_1d(map, x); },
                                    rmb::UniformSampling(1000.0, 0.0, -50, 60));
        for (auto _ : state)
        {
            double acc = 0.0;
            for (int i = 0; i < 20000; ++i)
                acc += recon.eval(-5e4 + 5.5 * i);
            benchmark::DoNotOptimize(acc);
        }
    }

    void bm_sinc_batch_omp(benchmark::State &state)
    {
        const rmb::FreeSpaceMap map = bench_map();
        const rmb::SincSeries recon([&](double x) { return rmb::eval_1d(map, x); },
                                    rmb::UniformSampling(1000.0, 0.0, -50, 60));
        for (auto _ : state)
        {
            const double acc = rmb::parallel::chunked_sum(
                20000, [&](std::int64_t i) { return recon.eval(-5e4 + 5.5 * i); });
            benchmark::DoNotOptimize(acc);
        }
    }
} // namespace

BENCHMARK(bm_ft_numeric_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_ft_numeric_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_error_metrics_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_error_metrics_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_simpson_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_simpson_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_sinc_batch_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_sinc_batch_omp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
