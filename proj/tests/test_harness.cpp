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

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <stdexcept>

#include <doctest.h>

#include "rmb/harness.hpp"
#include "test_util.hpp"

using namespace rmb;
using namespace rmb::harness;
using doctest::Approx;

namespace
{
    int line_count(const std::string &text)
    {
        int n = 0;
        for (char c : text)
            n += c == '\n';
        return n;
    }

    std::string first_line(const std::string &text)
    {
        return text.substr(0, text.find('\n'));
    }
} // namespace

TEST_CASE("format_double round-trips")
{
    test::Rng rng(61);
    for (int i = 0; i < 200; ++i)
    {
        const double v = rng.uniform(-1e9, 1e9) * std::pow(10.0, rng.uniform_int(-12, 12));
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("sweep specs")
{
    SweepSpec log_sweep{10.0, 3000.0, 30, true, {}};
    const auto v = log_sweep.values();
    REQUIRE(v.size() == 30);
    CHECK(v.front() == Approx(10.0).epsilon(1e-12));
    CHECK(v.back() == Approx(3000.0).epsilon(1e-12));
    CHECK(v[1] / v[0] == Approx(v[2] / v[1]).epsilon(1e-12));

    SweepSpec lin{-1.0, 1.0, 5, false, {}};
    CHECK(lin.values() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});

    SweepSpec expl;
    expl.explicit_values = {4.0, 2.0};
    CHECK(expl.values() == std::vector<double>{4.0, 2.0});
}

TEST_CASE("config parsing")
{
    const ExperimentConfig c = config_from_json(R"({
        "experiment": "zeroth", "seed": 9, "out": "x.csv",
        "d_sweep": {"lo": 100, "hi": 1000, "n": 4, "log": true},
        "grid_points": 1500
    })");
    CHECK(c.kind == ExperimentKind::zeroth);
    CHECK(c.seed == 9);
    CHECK(c.out_path == "x.csv");
    CHECK(c.grid_points == 1500);
    CHECK(c.d_sweep.values().size() == 4);
    // protocol defaults
    CHECK(c.spacing == 1000.0);
    CHECK(c.n_samples == 11);
    CHECK(c.source_x == std::vector<double>{1000.0, 5000.0, 8000.0});

    CHECK_THROWS_AS(config_from_json(R"({"experiment":"zeroth","bogus":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"seed":1})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"experiment":"warp"})"), std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(R"({"experiment":"nmse_height","estimators":["svm"]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(R"({"experiment":"zeroth","source_x":[1,2],"alpha":[1,2,3]})"),
        std::invalid_argument);
}

TEST_CASE("zeroth experiment emits sound sweeps and reproduces byte-for-byte")
{
    ExperimentConfig c = default_config(ExperimentKind::zeroth);
    c.d_sweep = SweepSpec{100.0, 1000.0, 5, true, {}};
    const ExperimentResult a = run_experiment(c);
    const ExperimentResult b = run_experiment(c);
    CHECK(a.sound);
    CHECK(a.csv == b.csv);
    CHECK(first_line(a.csv) == "d,l1,l1_bound,l2,l2_bound,linf,linf_bound");
    CHECK(line_count(a.csv) == 6);
}

TEST_CASE("small distances expose the bound tightness ordering")
{
    // near the sources the L2 bound drops below the measured L1 error
    ExperimentConfig c = default_config(ExperimentKind::zeroth);
    c.d_sweep.explicit_values = {10.0, 30.0, 100.0};
    const ExperimentResult r = run_experiment(c);
    CHECK(r.sound);
    std::istringstream rows(r.csv);
    std::string line;
    std::getline(rows, line); // header
    bool found = false;
    while (std::getline(rows, line))
    {
        double d, l1, l1b, l2, l2b, linf, linfb;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &d, &l1, &l1b, &l2,
                            &l2b, &linf, &linfb) == 7);
        found = found || l2b < l1;
    }
    CHECK(found);
}

TEST_CASE("first experiment is sound on a reduced sweep")
{
    ExperimentConfig c = default_config(ExperimentKind::first);
    c.d_sweep = SweepSpec{50.0, 2000.0, 4, true, {}};
    const ExperimentResult r = run_experiment(c);
    CHECK(r.sound);
    CHECK(line_count(r.csv) == 5);
}

TEST_CASE("grid_points floor is enforced for bound soundness runs")
{
    ExperimentConfig c = default_config(ExperimentKind::zeroth);
    c.grid_points = 200;
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("sinc experiment flags the concentrated-energy regime")
{
    ExperimentConfig c = default_config(ExperimentKind::sinc);
    c.d_sweep.explicit_values = {150.0, 400.0, 2500.0};
    c.offsets = 4;
    const ExperimentResult a = run_experiment(c);
    CHECK(a.sound);
    CHECK(first_line(a.csv) == "d,avg_l2_sq_error,avg_l2_sq_bound,avg_l2_sq_exact,in_regime");

    std::istringstream rows(a.csv);
    std::string line;
    std::getline(rows, line); // header
    REQUIRE(std::getline(rows, line));
    CHECK(line.back() == '1'); // d = 150 concentrated
    REQUIRE(std::getline(rows, line));
    REQUIRE(std::getline(rows, line));
    CHECK(line.back() == '0'); // d = 2500 out of regime

    const ExperimentResult b = run_experiment(c);
    CHECK(a.csv == b.csv);
}

TEST_CASE("varbounds experiment keeps the map inside the envelope")
{
    ExperimentConfig c = default_config(ExperimentKind::varbounds);
    const ExperimentResult a = run_experiment(c);
    CHECK(a.sound);
    CHECK(first_line(a.csv) == "delta,lower,p_value,upper");
    CHECK(line_count(a.csv) == 202);
    const ExperimentResult b = run_experiment(c);
    CHECK(a.csv == b.csv);
}

TEST_CASE("nmse experiment emits one row per height and estimator")
{
    ExperimentConfig c = default_config(ExperimentKind::nmse_height);
    c.heights = {10.0, 30.0};
    c.trial.n_trials = 5;
    c.seed = 3;
    c.trial.seed = 3;
    const ExperimentResult a = run_experiment(c);
    CHECK(first_line(a.csv) == "height_m,estimator,nmse,n_trials");
    CHECK(line_count(a.csv) == 1 + 2 * 3);
    CHECK(a.csv.find("kriging") != std::string::npos);
    const ExperimentResult b = run_experiment(c);
    CHECK(a.csv == b.csv);
}

TEST_CASE("seed feeds the trial configuration")
{
    const ExperimentConfig c = config_from_json(R"({
        "experiment": "nmse_height", "seed": 77, "n_trials": 3, "heights": [10.0]
    })");
    CHECK(c.trial.seed == 77);
    CHECK(c.trial.n_trials == 3);
}
