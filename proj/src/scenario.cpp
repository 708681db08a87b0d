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

#include "rmb/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rmb/parallel.hpp"

namespace rmb
{
    void Scene::validate() const
    {
        if (!(extent_w > 0.0) || !(extent_h > 0.0))
            throw std::invalid_argument("Scene: extent must be positive");
        if (!(grid_spacing > 0.0))
            throw std::invalid_argument("Scene: grid spacing must be positive");
        if (!(rx_height >= 0.0))
            throw std::invalid_argument("Scene: receiver height must be non-negative");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("Scene: wavelength must be positive");
        if (blockage_db < 0.0)
            throw std::invalid_argument("Scene: blockage attenuation must be non-negative");
        if (transmitters.empty())
            throw std::invalid_argument("Scene: at least one transmitter required");
        for (const Building &b : buildings)
        {
            if (!(b.w > 0.0) || !(b.h > 0.0) || !(b.height > 0.0))
                throw std::invalid_argument("Scene: degenerate building");
            if (b.x < 0.0 || b.y < 0.0 || b.x + b.w > extent_w || b.y + b.h > extent_h)
                throw std::invalid_argument("Scene: building outside the extent");
        }
        for (const Transmitter &t : transmitters)
        {
            if (t.x < 0.0 || t.x > extent_w || t.y < 0.0 || t.y > extent_h)
                throw std::invalid_argument("Scene: transmitter outside the extent");
            if (!(t.power > 0.0))
                throw std::invalid_argument("Scene: transmit power must be positive");
        }
    }

    const char *estimator_name(EstimatorKind kind)
    {
        switch (kind)
        {
        case EstimatorKind::knn:
            return "knn";
        case EstimatorKind::kriging:
            return "kriging";
        case EstimatorKind::krr:
            return "krr";
        }
        return "?";
    }

    bool point_indoor(const Scene &scene, double px, double py)
    {
        for (const Building &b : scene.buildings)
            if (px >= b.x && px < b.x + b.w && py >= b.y && py < b.y + b.h)
                return true;
        return false;
    }

    std::vector<GridPoint> outdoor_grid(const Scene &scene)
    {
        scene.validate();
        std::vector<GridPoint> pts;
        const auto nx = static_cast<int>(std::floor(scene.extent_w / scene.grid_spacing));
        const auto ny = static_cast<int>(std::floor(scene.extent_h / scene.grid_spacing));
        for (int i = 0; i <= nx; ++i)
        {
            for (int j = 0; j <= ny; ++j)
            {
                const double x = static_cast<double>(i) * scene.grid_spacing;
                const double y = static_cast<double>(j) * scene.grid_spacing;
                if (!point_indoor(scene, x, y))
                    pts.push_back({x, y});
            }
        }
        return pts;
    }

    namespace
    {
        // Liang-Barsky: parameter interval of the segment p0 -> p1 inside the
        // rectangle, or false when it misses.
        bool segment_rect_interval(double p0x, double p0y, double p1x, double p1y,
                                   const Building &b, double &t0, double &t1)
        {
            t0 = 0.0;
            t1 = 1.0;
            const double d[2] = {p1x - p0x, p1y - p0y};
            const double p[2] = {p0x, p0y};
            const double lo[2] = {b.x, b.y};
            const double hi[2] = {b.x + b.w, b.y + b.h};
            for (int axis = 0; axis < 2; ++axis)
            {
                if (std::abs(d[axis]) < 1e-15)
                {
                    if (p[axis] < lo[axis] || p[axis] > hi[axis])
                        return false;
                }
                else
                {
                    double ta = (lo[axis] - p[axis]) / d[axis];
                    double tb = (hi[axis] - p[axis]) / d[axis];
                    if (ta > tb)
                        std::swap(ta, tb);
                    t0 = std::max(t0, ta);
                    t1 = std::min(t1, tb);
                    if (t0 > t1)
                        return false;
                }
            }
            return true;
        }

        // Bounded uniform integer from a 64-bit engine, rejection sampled.
        std::uint64_t bounded(std::mt19937_64 &rng, std::uint64_t n)
        {
            const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
            std::uint64_t v;
            do
                v = rng();
            while (v >= limit);
            return v % n;
        }

        std::uint64_t trial_seed(std::uint64_t seed, int trial)
        {
            // splitmix64 over (seed, trial)
            std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }
    } // namespace

    int blocked_crossings(const Scene &scene, const Transmitter &tx, double tx_height, double px,
                          double py)
    {
        int count = 0;
        for (const Building &b : scene.buildings)
        {
            double t0, t1;
            if (!segment_rect_interval(tx.x, tx.y, px, py, b, t0, t1))
                continue;
            // z descends from tx_height to rx_height; the lowest point over
            // the footprint is at the exit parameter t1.
            const double z_exit = tx_height + t1 * (scene.rx_height - tx_height);
            if (z_exit < b.height)
                ++count;
        }
        return count;
    }

    double scene_power(const Scene &scene, double tx_height, double px, double py)
    {
        if (!(tx_height > scene.rx_height))
            throw std::invalid_argument("scene_power: transmitter below the receiver plane");
        if (point_indoor(scene, px, py))
            throw std::domain_error("scene_power: point lies inside a building");
        const double dz = tx_height - scene.rx_height;
        double total = 0.0;
        for (const Transmitter &tx : scene.transmitters)
        {
            const double alpha = alpha_from_power(tx.power, scene.wavelength);
            const double dx = px - tx.x, dy = py - tx.y;
            const double r2 = dx * dx + dy * dy + dz * dz;
            const int crossings = blocked_crossings(scene, tx, tx_height, px, py);
            total += alpha / r2 *
                     std::pow(10.0, -scene.blockage_db * static_cast<double>(crossings) / 10.0);
        }
        return total;
    }

    namespace
    {
        struct TrialDraw
        {
            std::vector<int> region_idx;  // outdoor grid indices inside the sub-region
            std::vector<int> measure_idx; // indices into region_idx
            int rejected = 0;
        };

        TrialDraw draw_trial(const Scene &scene, const std::vector<GridPoint> &grid,
                             const TrialConfig &cfg, int trial)
        {
            const double gs = scene.grid_spacing;
            const auto max_ox =
                static_cast<std::uint64_t>(std::floor((scene.extent_w - cfg.subregion_size) / gs));
            const auto max_oy =
                static_cast<std::uint64_t>(std::floor((scene.extent_h - cfg.subregion_size) / gs));
            std::mt19937_64 rng(trial_seed(cfg.seed, trial));

            TrialDraw draw;
            for (int attempt = 0;; ++attempt)
            {
                if (attempt > 1000)
                    throw std::runtime_error("run_height_sweep: cannot place a sub-region with "
                                             "enough outdoor points");
                const double ox = static_cast<double>(bounded(rng, max_ox + 1)) * gs;
                const double oy = static_cast<double>(bounded(rng, max_oy + 1)) * gs;
                draw.region_idx.clear();
                for (int i = 0; i < static_cast<int>(grid.size()); ++i)
                {
                    const GridPoint &p = grid[static_cast<std::size_t>(i)];
                    if (p.x >= ox && p.x <= ox + cfg.subregion_size && p.y >= oy &&
                        p.y <= oy + cfg.subregion_size)
                        draw.region_idx.push_back(i);
                }
                if (static_cast<int>(draw.region_idx.size()) >= cfg.n_measurements)
                    break;
                ++draw.rejected;
            }

            // Partial Fisher-Yates: first n_measurements entries of a shuffle.
            std::vector<int> perm(draw.region_idx.size());
            for (std::size_t i = 0; i < perm.size(); ++i)
                perm[i] = static_cast<int>(i);
            for (int i = 0; i < cfg.n_measurements; ++i)
            {
                const auto j = static_cast<std::size_t>(i) +
                               bounded(rng, perm.size() - static_cast<std::size_t>(i));
                std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
            }
            draw.measure_idx.assign(perm.begin(), perm.begin() + cfg.n_measurements);
            return draw;
        }

        std::vector<double> predict_all(EstimatorKind kind, const EstimatorParams &params,
                                        const std::vector<PointSample> &meas,
                                        const std::vector<GridPoint> &queries)
        {
            std::vector<double> out(queries.size());
            switch (kind)
            {
            case EstimatorKind::knn:
                for (std::size_t i = 0; i < queries.size(); ++i)
                    out[i] = estimate_knn(meas, params.knn_k, queries[i].x, queries[i].y);
                break;
            case EstimatorKind::kriging:
            {
                const KrigingModel model(meas, params.kriging_sigma, params.kriging_delta,
                                         params.use_db);
                for (std::size_t i = 0; i < queries.size(); ++i)
                    out[i] = model.predict(queries[i].x, queries[i].y);
                break;
            }
            case EstimatorKind::krr:
            {
                const KrrModel model(meas, params.krr_width, params.krr_reg, params.krr_kernel,
                                     params.use_db);
                for (std::size_t i = 0; i < queries.size(); ++i)
                    out[i] = model.predict(queries[i].x, queries[i].y);
                break;
            }
            }
            return out;
        }
    } // namespace

    std::vector<HeightResult> run_height_sweep(const Scene &scene,
                                               const std::vector<double> &heights,
                                               const TrialConfig &trial, EstimatorKind estimator,
                                               const EstimatorParams &params)
    {
        scene.validate();
        if (heights.empty())
            throw std::invalid_argument("run_height_sweep: no heights given");
        for (double h : heights)
            if (!(h > scene.rx_height))
                throw std::invalid_argument("run_height_sweep: height below the receiver plane");
        if (trial.n_trials < 1 || trial.n_measurements < 1)
            throw std::invalid_argument("run_height_sweep: invalid trial configuration");
        if (!(trial.subregion_size > 0.0) || trial.subregion_size > scene.extent_w ||
            trial.subregion_size > scene.extent_h)
            throw std::invalid_argument("run_height_sweep: sub-region does not fit the extent");

        const std::vector<GridPoint> grid = outdoor_grid(scene);
        const int n_heights = static_cast<int>(heights.size());
        const int n_trials = trial.n_trials;

        // Truth over the full outdoor grid, one row per height.
        std::vector<std::vector<double>> truth(static_cast<std::size_t>(n_heights));
        for (int hi = 0; hi < n_heights; ++hi)
        {
            auto &row = truth[static_cast<std::size_t>(hi)];
            row.resize(grid.size());
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
            for (std::int64_t g = 0; g < static_cast<std::int64_t>(grid.size()); ++g)
                row[static_cast<std::size_t>(g)] =
                    scene_power(scene, heights[static_cast<std::size_t>(hi)],
                                grid[static_cast<std::size_t>(g)].x,
                                grid[static_cast<std::size_t>(g)].y);
        }

        struct TrialOut
        {
            std::vector<double> err_sq;   // per height
            std::vector<double> truth_sq; // per height
            int rejected = 0;
        };
        std::vector<TrialOut> per_trial(static_cast<std::size_t>(n_trials));

#pragma omp parallel for schedule(dynamic) num_threads(parallel::thread_count())
        for (int t = 0; t < n_trials; ++t)
        {
            const TrialDraw draw = draw_trial(scene, grid, trial, t);
            std::vector<GridPoint> queries(draw.region_idx.size());
            for (std::size_t i = 0; i < queries.size(); ++i)
                queries[i] = grid[static_cast<std::size_t>(draw.region_idx[i])];

            TrialOut out;
            out.rejected = draw.rejected;
            out.err_sq.resize(static_cast<std::size_t>(n_heights), 0.0);
            out.truth_sq.resize(static_cast<std::size_t>(n_heights), 0.0);
            for (int hi = 0; hi < n_heights; ++hi)
            {
                const auto &tv = truth[static_cast<std::size_t>(hi)];
                std::vector<PointSample> meas(draw.measure_idx.size());
                for (std::size_t i = 0; i < meas.size(); ++i)
                {
                    const int gidx = draw.region_idx[static_cast<std::size_t>(
                        draw.measure_idx[i])];
                    meas[i] = {grid[static_cast<std::size_t>(gidx)].x,
                               grid[static_cast<std::size_t>(gidx)].y,
                               tv[static_cast<std::size_t>(gidx)]};
                }
                const std::vector<double> est = predict_all(estimator, params, meas, queries);
                double es = 0.0, ts = 0.0;
                for (std::size_t i = 0; i < queries.size(); ++i)
                {
                    const double tval = tv[static_cast<std::size_t>(draw.region_idx[i])];
                    const double e = tval - est[i];
                    es += e * e;
                    ts += tval * tval;
                }
                out.err_sq[static_cast<std::size_t>(hi)] = es;
                out.truth_sq[static_cast<std::size_t>(hi)] = ts;
            }
            per_trial[static_cast<std::size_t>(t)] = std::move(out);
        }

        std::vector<HeightResult> results(static_cast<std::size_t>(n_heights));
        for (int hi = 0; hi < n_heights; ++hi)
        {
            HeightResult &r = results[static_cast<std::size_t>(hi)];
            r.height = heights[static_cast<std::size_t>(hi)];
            r.n_trials = n_trials;
            double es = 0.0, ts = 0.0;
            for (int t = 0; t < n_trials; ++t)
            {
                const TrialOut &out = per_trial[static_cast<std::size_t>(t)];
                es += out.err_sq[static_cast<std::size_t>(hi)];
                ts += out.truth_sq[static_cast<std::size_t>(hi)];
                r.trial_nmse.push_back(out.err_sq[static_cast<std::size_t>(hi)] /
                                       out.truth_sq[static_cast<std::size_t>(hi)]);
                if (hi == 0)
                    r.rejected_draws += out.rejected;
            }
            r.nmse = es / ts;
        }
        // Rejected-draw counts are per trial, not per height; mirror them.
        for (int hi = 1; hi < n_heights; ++hi)
            results[static_cast<std::size_t>(hi)].rejected_draws = results[0].rejected_draws;
        return results;
    }

    Scene default_scene()
    {
        Scene s;
        s.buildings = {
            {6.0, 8.0, 8.0, 10.0, 18.0}, {30.0, 4.0, 9.0, 8.0, 12.0},
            {14.0, 26.0, 10.0, 9.0, 22.0}, {34.0, 30.0, 8.0, 9.0, 15.0},
            {6.0, 44.0, 9.0, 8.0, 14.0},  {32.0, 46.0, 8.0, 8.0, 20.0},
        };
        s.transmitters = {
            {2.0, 28.0, 0.01}, {24.0, 2.0, 0.01}, {45.0, 28.0, 0.01},
            {24.0, 54.0, 0.01}, {24.0, 36.0, 0.01},
        };
        s.validate();
        return s;
    }

    Scene random_scene(std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        auto uniform = [&](double lo, double hi) {
            return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        };
        Scene s;
        for (int placed = 0, attempts = 0; placed < 6 && attempts < 1000; ++attempts)
        {
            Building b;
            b.w = uniform(7.0, 10.0);
            b.h = uniform(7.0, 10.0);
            b.x = uniform(1.0, s.extent_w - b.w - 1.0);
            b.y = uniform(1.0, s.extent_h - b.h - 1.0);
            b.height = uniform(12.0, 22.0);
            bool clear = true;
            for (const Building &o : s.buildings)
                clear = clear && (b.x + b.w + 3.0 < o.x || o.x + o.w + 3.0 < b.x ||
                                  b.y + b.h + 3.0 < o.y || o.y + o.h + 3.0 < b.y);
            if (clear)
            {
                s.buildings.push_back(b);
                ++placed;
            }
        }
        while (s.transmitters.size() < 5)
        {
            Transmitter t{uniform(0.0, s.extent_w), uniform(0.0, s.extent_h), 0.01};
            if (!point_indoor(s, t.x, t.y))
                s.transmitters.push_back(t);
        }
        s.validate();
        return s;
    }

    namespace
    {
        using nlohmann::json;

        void reject_unknown(const json &obj, std::initializer_list<const char *> known,
                            const char *what)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
            {
                bool ok = false;
                for (const char *k : known)
                    ok = ok || it.key() == k;
                if (!ok)
                    throw std::invalid_argument(std::string("scene JSON: unknown key \"") +
                                                it.key() + "\" in " + what);
            }
        }
    } // namespace

    Scene parse_scene_json(const std::string &text)
    {
        const json j = json::parse(text);
        reject_unknown(j,
                       {"extent", "buildings", "transmitters", "rx_height", "grid_spacing",
                        "blockage_db", "wavelength"},
                       "scene");
        Scene s;
        if (j.contains("extent"))
        {
            reject_unknown(j.at("extent"), {"w", "h"}, "extent");
            s.extent_w = j.at("extent").value("w", s.extent_w);
            s.extent_h = j.at("extent").value("h", s.extent_h);
        }
        s.rx_height = j.value("rx_height", s.rx_height);
        s.grid_spacing = j.value("grid_spacing", s.grid_spacing);
        s.blockage_db = j.value("blockage_db", s.blockage_db);
        s.wavelength = j.value("wavelength", s.wavelength);
        if (j.contains("buildings"))
        {
            for (const json &jb : j.at("buildings"))
            {
                reject_unknown(jb, {"x", "y", "w", "h", "height_m"}, "building");
                s.buildings.push_back({jb.at("x").get<double>(), jb.at("y").get<double>(),
                                       jb.at("w").get<double>(), jb.at("h").get<double>(),
                                       jb.at("height_m").get<double>()});
            }
        }
        if (!j.contains("transmitters"))
            throw std::invalid_argument("scene JSON: transmitters are required");
        for (const json &jt : j.at("transmitters"))
        {
            reject_unknown(jt, {"x", "y", "power_w"}, "transmitter");
            s.transmitters.push_back({jt.at("x").get<double>(), jt.at("y").get<double>(),
                                      jt.at("power_w").get<double>()});
        }
        s.validate();
        return s;
    }

    Scene load_scene_json(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("load_scene_json: cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_scene_json(ss.str());
    }

    std::string scene_to_json(const Scene &scene)
    {
        json j;
        j["extent"] = {{"w", scene.extent_w}, {"h", scene.extent_h}};
        j["rx_height"] = scene.rx_height;
        j["grid_spacing"] = scene.grid_spacing;
        j["blockage_db"] = scene.blockage_db;
        j["wavelength"] = scene.wavelength;
        j["buildings"] = json::array();
        for (const Building &b : scene.buildings)
            j["buildings"].push_back(
                {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}, {"height_m", b.height}});
        j["transmitters"] = json::array();
        for (const Transmitter &t : scene.transmitters)
            j["transmitters"].push_back({{"x", t.x}, {"y", t.y}, {"power_w", t.power}});
        return j.dump(2);
    }

} // namespace rmb
