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

#include <stdexcept>

#include <doctest.h>

#include "rmb/scenario.hpp"

using namespace rmb;
using doctest::Approx;

namespace
{
    Scene open_field()
    {
        Scene s;
        s.extent_w = 40.0;
        s.extent_h = 40.0;
        s.transmitters = {{5.0, 5.0, 0.01}, {30.0, 20.0, 0.02}};
        return s;
    }
} // namespace

TEST_CASE("scene_power without buildings reduces to free space")
{
    const Scene s = open_field();
    const double h = 12.0;
    const double px = 10.0, py = 8.0;
    double expected = 0.0;
    for (const Transmitter &tx : s.transmitters)
    {
        const double dz = h - s.rx_height;
        const double r2 = (px - tx.x) * (px - tx.x) + (py - tx.y) * (py - tx.y) + dz * dz;
        expected += alpha_from_power(tx.power, s.wavelength) / r2;
    }
    CHECK(scene_power(s, h, px, py) == Approx(expected).epsilon(1e-14));
}

TEST_CASE("one blocking crossing attenuates by the configured factor")
{
    Scene s = open_field();
    s.transmitters = {{5.0, 20.0, 0.01}};
    s.blockage_db = 20.0;
    Scene blocked = s;
    blocked.buildings = {{15.0, 15.0, 5.0, 10.0, 30.0}}; // tall wall in the path
    const double h = 10.0;
    const double px = 30.0, py = 20.0;
    CHECK(blocked_crossings(blocked, blocked.transmitters[0], h, px, py) == 1);
    CHECK(scene_power(blocked, h, px, py) ==
          Approx(scene_power(s, h, px, py) / 100.0).epsilon(1e-12));
}

TEST_CASE("line of sight clearing the rooftops removes the blockage")
{
    Scene s = open_field();
    s.transmitters = {{5.0, 20.0, 0.01}};
    s.buildings = {{15.0, 15.0, 5.0, 10.0, 8.0}};
    const double px = 30.0, py = 20.0;

    // low transmitter: blocked; very high: the ray clears the roof
    CHECK(blocked_crossings(s, s.transmitters[0], 5.0, px, py) == 1);
    CHECK(blocked_crossings(s, s.transmitters[0], 60.0, px, py) == 0);

    Scene open = s;
    open.buildings.clear();
    CHECK(scene_power(s, 60.0, px, py) == Approx(scene_power(open, 60.0, px, py)).epsilon(1e-14));
}

TEST_CASE("indoor points are rejected")
{
    Scene s = open_field();
    s.buildings = {{10.0, 10.0, 5.0, 5.0, 10.0}};
    CHECK_THROWS_AS(scene_power(s, 10.0, 12.0, 12.0), std::domain_error);
    CHECK(point_indoor(s, 10.0, 10.0));       // left/bottom edge is indoor
    CHECK_FALSE(point_indoor(s, 15.0, 12.0)); // right edge is outdoor
}

TEST_CASE("blocked pair count is non-increasing in the transmitter height")
{
    const Scene s = default_scene();
    const std::vector<GridPoint> grid = outdoor_grid(s);
    int first = -1, prev = -1;
    for (double h : {5.0, 10.0, 20.0, 30.0, 45.0, 60.0})
    {
        int blocked = 0;
        for (const Transmitter &tx : s.transmitters)
            for (const GridPoint &p : grid)
                blocked += blocked_crossings(s, tx, h, p.x, p.y);
        if (prev >= 0)
            CHECK(blocked <= prev);
        else
            first = blocked;
        prev = blocked;
    }
    // deep shadows right behind tall buildings persist at 60 m, but the
    // blocked set must have shrunk
    CHECK(prev < first);
}

TEST_CASE("interpolating every grid point gives zero error")
{
    Scene s = open_field();
    s.grid_spacing = 2.0;
    const std::vector<GridPoint> grid = outdoor_grid(s);
    std::vector<PointSample> all;
    for (const GridPoint &p : grid)
        all.push_back({p.x, p.y, scene_power(s, 20.0, p.x, p.y)});
    double num = 0.0, den = 0.0;
    for (const GridPoint &p : grid)
    {
        const double est = estimate_knn(all, 1, p.x, p.y);
        const double truth = scene_power(s, 20.0, p.x, p.y);
        num += (truth - est) * (truth - est);
        den += truth * truth;
    }
    CHECK(num / den == Approx(0.0).scale(1.0).epsilon(1e-20));
}

TEST_CASE("height sweep is deterministic and counts rejected draws")
{
    const Scene s = default_scene();
    TrialConfig cfg;
    cfg.n_trials = 6;
    cfg.seed = 42;
    const auto a = run_height_sweep(s, {10.0, 30.0}, cfg, EstimatorKind::knn);
    const auto b = run_height_sweep(s, {10.0, 30.0}, cfg, EstimatorKind::knn);
    REQUIRE(a.size() == 2);
    CHECK(a[0].nmse == b[0].nmse);
    CHECK(a[1].nmse == b[1].nmse);
    CHECK(a[0].trial_nmse == b[0].trial_nmse);
    CHECK(a[0].n_trials == 6);
    CHECK(a[0].rejected_draws >= 0);
    for (double v : a[0].trial_nmse)
        CHECK(v >= 0.0);

    SUBCASE("draws are shared across heights and estimators")
    {
        const auto c = run_height_sweep(s, {30.0}, cfg, EstimatorKind::knn);
        CHECK(c[0].nmse == a[1].nmse);
    }
}

TEST_CASE("trials with too few outdoor points are redrawn")
{
    Scene s;
    s.extent_w = 40.0;
    s.extent_h = 40.0;
    s.buildings = {{0.0, 0.0, 36.0, 36.0, 10.0}}; // only a thin outdoor strip
    s.transmitters = {{38.0, 38.0, 0.01}};
    TrialConfig cfg;
    cfg.n_trials = 20;
    cfg.n_measurements = 60;
    cfg.seed = 7;
    const auto rows = run_height_sweep(s, {20.0}, cfg, EstimatorKind::knn);
    CHECK(rows[0].rejected_draws > 0);
}

TEST_CASE("scene JSON round trip and validation")
{
    const Scene s = default_scene();
    const Scene again = parse_scene_json(scene_to_json(s));
    CHECK(again.buildings.size() == s.buildings.size());
    CHECK(again.transmitters.size() == s.transmitters.size());
    CHECK(again.blockage_db == s.blockage_db);

    CHECK_THROWS_AS(parse_scene_json(R"({"transmitters":[{"x":1,"y":1,"power_w":1}],"foo":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scene_json(R"({"extent":{"w":10,"h":10}})"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scene_json(
            R"({"transmitters":[{"x":1,"y":1,"power_w":1}],"buildings":[{"x":0,"y":0,"w":99,"h":1,"height_m":5}]})"),
        std::invalid_argument);
}

TEST_CASE("random_scene is valid and seed-deterministic")
{
    const Scene a = random_scene(123);
    const Scene b = random_scene(123);
    const Scene c = random_scene(124);
    CHECK(a.buildings.size() == b.buildings.size());
    REQUIRE(!a.buildings.empty());
    CHECK(a.buildings[0].x == b.buildings[0].x);
    CHECK(a.transmitters.size() == 5);
    // different seed, different layout
    CHECK((a.buildings[0].x != c.buildings[0].x || a.buildings[0].y != c.buildings[0].y));
}

TEST_CASE("run_height_sweep argument validation")
{
    const Scene s = default_scene();
    TrialConfig cfg;
    CHECK_THROWS_AS(run_height_sweep(s, {}, cfg, EstimatorKind::knn), std::invalid_argument);
    CHECK_THROWS_AS(run_height_sweep(s, {1.0}, cfg, EstimatorKind::knn),
                    std::invalid_argument); // below receiver plane
    TrialConfig bad = cfg;
    bad.subregion_size = 1000.0;
    CHECK_THROWS_AS(run_height_sweep(s, {10.0}, bad, EstimatorKind::knn),
                    std::invalid_argument);
}
