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

#ifndef RMB_SCENARIO_HPP
#define RMB_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rmb/interp.hpp"

namespace rmb
{
    // Axis-aligned building with a footprint [x, x+w) x [y, y+h) and a roof
    // height in metres.
    struct Building
    {
        double x = 0.0;
        double y = 0.0;
        double w = 1.0;
        double h = 1.0;
        double height = 10.0;
    };

    struct Transmitter
    {
        double x = 0.0;
        double y = 0.0;
        double power = 0.01; // W
    };

    // Synthetic urban scene: free-space propagation with a fixed per-crossing
    // attenuation for every building the line of sight pierces below roof
    // level. Stand-in for a ray-traced model; qualitative only.
    struct Scene
    {
        double extent_w = 47.0;     // m
        double extent_h = 56.0;     // m
        std::vector<Building> buildings;
        std::vector<Transmitter> transmitters;
        double rx_height = 2.0;     // m
        double grid_spacing = 1.0;  // m
        double blockage_db = 25.0;  // attenuation per blocking crossing
        double wavelength = 299792458.0 / 2.4e9; // m

        void validate() const;
    };

    struct GridPoint
    {
        double x = 0.0;
        double y = 0.0;
    };

    struct TrialConfig
    {
        double subregion_size = 32.0; // m
        int n_measurements = 100;
        int n_trials = 50;
        std::uint64_t seed = 1;
    };

    enum class EstimatorKind
    {
        knn,
        kriging,
        krr,
    };

    struct EstimatorParams
    {
        int knn_k = 5;
        double kriging_sigma = 3.0;
        double kriging_delta = 50.0; // m
        double krr_width = 10.0;     // m
        double krr_reg = 1e-3;
        KrrKernel krr_kernel = KrrKernel::gaussian;
        bool use_db = false;
    };

    const char *estimator_name(EstimatorKind kind);

    // True iff the point lies inside some building footprint.
    bool point_indoor(const Scene &scene, double px, double py);

    // All outdoor grid points of the scene, row-major in x then y.
    std::vector<GridPoint> outdoor_grid(const Scene &scene);

    // Number of buildings whose volume the 3D line of sight from the
    // transmitter (at tx_height) to the receiver point (at rx_height) pierces.
    // Non-increasing in tx_height for a fixed pair.
    int blocked_crossings(const Scene &scene, const Transmitter &tx, double tx_height, double px,
                          double py);

    // Received power at an outdoor grid point: free-space contribution of each
    // transmitter attenuated by blockage_db per blocking crossing, summed in
    // linear power. Indoor points are a domain error.
    double scene_power(const Scene &scene, double tx_height, double px, double py);

    struct HeightResult
    {
        double height = 0.0;
        double nmse = 0.0; // sum-of-errors / sum-of-truth over all trials
        int n_trials = 0;
        int rejected_draws = 0;
        std::vector<double> trial_nmse; // per-trial ratios, trial order
    };

    // Monte Carlo NMSE of one estimator vs transmitter height. Each trial
    // draws a square sub-region and measurement locations among its outdoor
    // grid points; the estimate is scored on all outdoor points of the
    // sub-region. Trial draws depend only on (seed, trial index), so heights
    // and estimators share common random numbers. Deterministic in the seed;
    // trials run in parallel and reduce in trial order.
    std::vector<HeightResult> run_height_sweep(const Scene &scene,
                                               const std::vector<double> &heights,
                                               const TrialConfig &trial, EstimatorKind estimator,
                                               const EstimatorParams &params = {});

    // Fixed sparse-blocks default scene used by the experiments.
    Scene default_scene();

    // Seeded random layout: non-overlapping buildings and outdoor transmitters.
    Scene random_scene(std::uint64_t seed);

    // Scene JSON:
    //   {"extent": {"w":, "h":}, "buildings": [{"x","y","w","h","height_m"}],
    //    "transmitters": [{"x","y","power_w"}], "rx_height": , "grid_spacing": ,
    //    "blockage_db": , "wavelength": }
    // wavelength is optional (defaults to 2.4 GHz); unknown keys are rejected.
    Scene parse_scene_json(const std::string &text);
    Scene load_scene_json(const std::string &path);
    std::string scene_to_json(const Scene &scene);

} // namespace rmb

#endif
