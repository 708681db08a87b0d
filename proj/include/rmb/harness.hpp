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

#ifndef RMB_HARNESS_HPP
#define RMB_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rmb/scenario.hpp"

namespace rmb::harness
{
    enum class ExperimentKind
    {
        zeroth,      // nearest-neighbour errors vs bounds over a distance sweep
        first,       // linear-interpolation errors vs bounds
        sinc,        // offset-averaged sinc aliasing error vs bound
        varbounds,   // pointwise variability envelope around an anchor
        nmse_height, // estimator NMSE vs transmitter height
    };

    ExperimentKind parse_kind(const std::string &name);
    const char *kind_name(ExperimentKind kind);

    struct SweepSpec
    {
        double lo = 1.0;
        double hi = 10.0;
        int n = 10;
        bool log = true;
        std::vector<double> explicit_values; // non-empty overrides the range

        std::vector<double> values() const;
    };

    // One experiment description. Field applicability depends on the kind;
    // default_config() fills the built-in protocol for each experiment.
    struct ExperimentConfig
    {
        ExperimentKind kind = ExperimentKind::zeroth;
        std::uint64_t seed = 1;
        std::string out_path = "out.csv";

        // interpolation-bound experiments (zeroth / first / sinc)
        std::string map_path;                              // optional source geometry
        std::vector<double> source_x = {1000.0, 5000.0, 8000.0};
        std::vector<double> source_alpha;                  // empty = all alpha_default
        double alpha_default = 157.91367041742973; // (4 pi)^2
        SweepSpec d_sweep{10.0, 3000.0, 30, true, {}};
        double spacing = 1000.0;
        int n_samples = 11;
        int grid_points = 1000;
        int offsets = 20;                 // sinc only
        std::int64_t sinc_index_lo = -50; // sinc lattice range
        std::int64_t sinc_index_hi = 60;

        // varbounds
        SweepSpec delta_sweep{-10.0, 10.0, 201, false, {}};
        double dmin = 1.0;

        // nmse_height
        std::string scene_path; // optional; default scene otherwise
        std::vector<double> heights = {5.0, 10.0, 20.0, 30.0, 45.0, 60.0};
        TrialConfig trial{32.0, 100, 50, 1};
        std::vector<EstimatorKind> estimators = {EstimatorKind::knn, EstimatorKind::kriging,
                                                 EstimatorKind::krr};
    };

    ExperimentConfig default_config(ExperimentKind kind);
    // JSON with an "experiment" field naming the kind; unknown keys rejected.
    ExperimentConfig config_from_json(const std::string &text);
    ExperimentConfig config_from_file(const std::string &path);

    struct ExperimentResult
    {
        std::string csv;   // full file contents, header row included
        bool sound = true; // every asserted soundness row held
        std::vector<std::string> notes;
    };

    // Deterministic for a fixed (config, seed): reruns produce byte-identical
    // CSV text. Rows appear in sweep order regardless of execution order.
    ExperimentResult run_experiment(const ExperimentConfig &config);

    // 17-significant-digit decimal, enough to round-trip a double exactly.
    std::string format_double(double v);

    void write_text_file(const std::string &path, const std::string &text);

    // Map for the distance sweeps: sources at the configured x positions, all
    // at off-line distance d.
    FreeSpaceMap sweep_map(const ExperimentConfig &config, double d);

} // namespace rmb::harness

#endif
