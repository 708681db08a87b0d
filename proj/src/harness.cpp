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

#include "rmb/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rmb/errors.hpp"
#include "rmb/quadrature.hpp"
#include "rmb/spectral.hpp"

namespace rmb::harness
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr double soundness_slack = 1e-9;
    } // namespace

    ExperimentKind parse_kind(const std::string &name)
    {
        if (name == "zeroth")
            return ExperimentKind::zeroth;
        if (name == "first")
            return ExperimentKind::first;
        if (name == "sinc")
            return ExperimentKind::sinc;
        if (name == "varbounds")
            return ExperimentKind::varbounds;
        if (name == "nmse_height")
            return ExperimentKind::nmse_height;
        throw std::invalid_argument("unknown experiment \"" + name + "\"");
    }

    const char *kind_name(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::zeroth:
            return "zeroth";
        case ExperimentKind::first:
            return "first";
        case ExperimentKind::sinc:
            return "sinc";
        case ExperimentKind::varbounds:
            return "varbounds";
        case ExperimentKind::nmse_height:
            return "nmse_height";
        }
        return "?";
    }

    std::vector<double> SweepSpec::values() const
    {
        if (!explicit_values.empty())
            return explicit_values;
        if (n < 1)
            throw std::invalid_argument("sweep: need at least one point");
        if (n == 1)
            return {lo};
        std::vector<double> v(static_cast<std::size_t>(n));
        if (log)
        {
            if (!(lo > 0.0) || !(hi > 0.0))
                throw std::invalid_argument("sweep: log spacing needs positive endpoints");
            const double llo = std::log(lo), lhi = std::log(hi);
            for (int i = 0; i < n; ++i)
                v[static_cast<std::size_t>(i)] =
                    std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                       static_cast<double>(n - 1));
        }
        else
        {
            for (int i = 0; i < n; ++i)
                v[static_cast<std::size_t>(i)] =
                    lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        }
        return v;
    }

    std::string format_double(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    void write_text_file(const std::string &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open " + path + " for writing");
        out << text;
    }

    ExperimentConfig default_config(ExperimentKind kind)
    {
        ExperimentConfig c;
        c.kind = kind;
        if (kind == ExperimentKind::sinc)
            c.d_sweep = SweepSpec{100.0, 3000.0, 25, true, {}};
        return c;
    }

    FreeSpaceMap sweep_map(const ExperimentConfig &config, double d)
    {
        if (!(d > 0.0))
            throw std::invalid_argument("sweep_map: distance must be positive");
        std::vector<Source> sources;
        for (std::size_t i = 0; i < config.source_x.size(); ++i)
        {
            Source s;
            s.x = config.source_x[i];
            s.d2 = d * d;
            s.alpha = config.source_alpha.empty() ? config.alpha_default
                                                  : config.source_alpha[i];
            sources.push_back(s);
        }
        return FreeSpaceMap(std::move(sources), 1.0, 2.0, 1, std::min(1.0, d));
    }

    namespace
    {
        using nlohmann::json;

        SweepSpec sweep_from_json(const json &j, const SweepSpec &fallback)
        {
            SweepSpec s = fallback;
            if (j.is_array())
            {
                s.explicit_values = j.get<std::vector<double>>();
                if (s.explicit_values.empty())
                    throw std::invalid_argument("config: empty sweep");
                return s;
            }
            for (auto it = j.begin(); it != j.end(); ++it)
                if (it.key() != "lo" && it.key() != "hi" && it.key() != "n" && it.key() != "log")
                    throw std::invalid_argument("config: unknown sweep key \"" + it.key() + "\"");
            s.lo = j.value("lo", s.lo);
            s.hi = j.value("hi", s.hi);
            s.n = j.value("n", s.n);
            s.log = j.value("log", s.log);
            s.explicit_values.clear();
            return s;
        }
    } // namespace

    ExperimentConfig config_from_json(const std::string &text)
    {
        const json j = json::parse(text);
        if (!j.contains("experiment"))
            throw std::invalid_argument("config: missing \"experiment\"");
        ExperimentConfig c = default_config(parse_kind(j.at("experiment").get<std::string>()));

        static const char *known[] = {
            "experiment", "seed",          "out",           "map",         "source_x",
            "alpha",      "d_sweep",       "spacing",       "n_samples",   "grid_points",
            "offsets",    "sinc_index_lo", "sinc_index_hi", "delta_sweep", "dmin",
            "scene",      "heights",       "subregion_size", "n_measurements", "n_trials",
            "estimators"};
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            bool ok = false;
            for (const char *k : known)
                ok = ok || it.key() == k;
            if (!ok)
                throw std::invalid_argument("config: unknown key \"" + it.key() + "\"");
        }

        c.seed = j.value("seed", c.seed);
        c.out_path = j.value("out", c.out_path);
        c.map_path = j.value("map", c.map_path);
        if (j.contains("source_x"))
            c.source_x = j.at("source_x").get<std::vector<double>>();
        if (j.contains("alpha"))
        {
            if (j.at("alpha").is_array())
                c.source_alpha = j.at("alpha").get<std::vector<double>>();
            else
                c.alpha_default = j.at("alpha").get<double>();
        }
        if (!c.source_alpha.empty() && c.source_alpha.size() != c.source_x.size())
            throw std::invalid_argument("config: alpha list does not match source_x");
        if (j.contains("d_sweep"))
            c.d_sweep = sweep_from_json(j.at("d_sweep"), c.d_sweep);
        c.spacing = j.value("spacing", c.spacing);
        c.n_samples = j.value("n_samples", c.n_samples);
        c.grid_points = j.value("grid_points", c.grid_points);
        c.offsets = j.value("offsets", c.offsets);
        c.sinc_index_lo = j.value("sinc_index_lo", c.sinc_index_lo);
        c.sinc_index_hi = j.value("sinc_index_hi", c.sinc_index_hi);
        if (j.contains("delta_sweep"))
            c.delta_sweep = sweep_from_json(j.at("delta_sweep"), c.delta_sweep);
        c.dmin = j.value("dmin", c.dmin);
        c.scene_path = j.value("scene", c.scene_path);
        if (j.contains("heights"))
            c.heights = j.at("heights").get<std::vector<double>>();
        c.trial.subregion_size = j.value("subregion_size", c.trial.subregion_size);
        c.trial.n_measurements = j.value("n_measurements", c.trial.n_measurements);
        c.trial.n_trials = j.value("n_trials", c.trial.n_trials);
        c.trial.seed = c.seed;
        if (j.contains("estimators"))
        {
            c.estimators.clear();
            for (const json &je : j.at("estimators"))
            {
                const std::string name = je.get<std::string>();
                if (name == "knn")
                    c.estimators.push_back(EstimatorKind::knn);
                else if (name == "kriging")
                    c.estimators.push_back(EstimatorKind::kriging);
                else if (name == "krr")
                    c.estimators.push_back(EstimatorKind::krr);
                else
                    throw std::invalid_argument("config: unknown estimator \"" + name + "\"");
            }
        }
        return c;
    }

    ExperimentConfig config_from_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return config_from_json(ss.str());
    }

    namespace
    {
        std::vector<double> sample_locations(const ExperimentConfig &c)
        {
            if (c.n_samples < 2)
                throw std::invalid_argument("config: need at least two samples");
            std::vector<double> xs(static_cast<std::size_t>(c.n_samples));
            for (int n = 0; n < c.n_samples; ++n)
                xs[static_cast<std::size_t>(n)] = static_cast<double>(n) * c.spacing;
            return xs;
        }

        ExperimentResult run_bound_experiment(const ExperimentConfig &c, bool first_order)
        {
            if (c.grid_points < 1000)
                throw std::invalid_argument(
                    "config: bound-soundness runs need grid_points >= 1000");
            const std::vector<double> ds = c.d_sweep.values();
            if (ds.empty())
                throw std::invalid_argument("config: empty distance sweep");
            const std::vector<double> xs = sample_locations(c);
            const Interval region{xs.front(), xs.back()};

            std::ostringstream csv;
            csv << "d,l1,l1_bound,l2,l2_bound,linf,linf_bound\n";
            bool sound = true;
            for (double d : ds)
            {
                const FreeSpaceMap map = c.map_path.empty()
                                             ? sweep_map(c, d)
                                             : load_map_json(c.map_path);
                const SampleSet samples = sample_map(map, xs);
                const auto estimate = [&](double x) {
                    return first_order ? interp_linear(samples, x) : interp_nearest(samples, x);
                };
                const ErrorReport err = error_metrics(map, estimate, region, c.grid_points);
                const BoundReport bound = first_order ? bound_first(map, samples.deltas())
                                                      : bound_zeroth(map, samples.deltas());
                sound = sound && err.l1 <= bound.l1_bound + soundness_slack &&
                        err.l2 <= bound.l2_bound + soundness_slack &&
                        err.linf <= bound.linf_bound + soundness_slack;
                csv << format_double(d) << ',' << format_double(err.l1) << ','
                    << format_double(bound.l1_bound) << ',' << format_double(err.l2) << ','
                    << format_double(bound.l2_bound) << ',' << format_double(err.linf) << ','
                    << format_double(bound.linf_bound) << '\n';
            }
            ExperimentResult r;
            r.csv = csv.str();
            r.sound = sound;
            if (!sound)
                r.notes.push_back("a measured error exceeded its bound");
            return r;
        }

        // Upper bound on the part of the squared error that the finite lattice
        // and integration window cannot represent: the energy of the map
        // outside the window, with an M factor covering the cross terms.
        double window_truncation_residue(const FreeSpaceMap &map, double win_lo, double win_hi)
        {
            const auto tail = [](double u0, double d) {
                // integral_{u0}^inf du / (u^2 + d^2)^2, u0 >= 0
                const double d2 = d * d;
                return pi / (4.0 * d2 * d) - u0 / (2.0 * d2 * (u0 * u0 + d2)) -
                       std::atan(u0 / d) / (2.0 * d2 * d);
            };
            double acc = 0.0;
            for (const Source &s : map.sources())
            {
                const double d = std::sqrt(s.d2);
                const double left = std::max(0.0, s.x - win_lo);
                const double right = std::max(0.0, win_hi - s.x);
                acc += s.alpha * s.alpha * (tail(left, d) + tail(right, d));
            }
            return acc * static_cast<double>(map.source_count());
        }

        ExperimentResult run_sinc_experiment(const ExperimentConfig &c)
        {
            const std::vector<double> ds = c.d_sweep.values();
            if (ds.empty())
                throw std::invalid_argument("config: empty distance sweep");
            if (c.offsets < 1)
                throw std::invalid_argument("config: need at least one offset");
            const double step = c.spacing;
            const double win_lo = static_cast<double>(c.sinc_index_lo) * step;
            const double win_hi = static_cast<double>(c.sinc_index_hi) * step;

            // Simpson nodes at ~50 per lattice cell over the window.
            auto n_nodes = static_cast<std::int64_t>((win_hi - win_lo) / step) * 50 + 1;
            if (n_nodes % 2 == 0)
                ++n_nodes;

            std::ostringstream csv;
            csv << "d,avg_l2_sq_error,avg_l2_sq_bound,avg_l2_sq_exact,in_regime\n";
            bool sound = true;
            for (double d : ds)
            {
                const FreeSpaceMap map = c.map_path.empty()
                                             ? sweep_map(c, d)
                                             : load_map_json(c.map_path);
                double avg = 0.0;
                for (int k = 0; k < c.offsets; ++k)
                {
                    const double phi =
                        step * static_cast<double>(k) / static_cast<double>(c.offsets);
                    const SincSeries recon([&](double x) { return eval_1d(map, x); },
                                           UniformSampling(step, phi, c.sinc_index_lo,
                                                           c.sinc_index_hi));
                    avg += quad::simpson(
                        [&](double x) {
                            const double e = eval_1d(map, x) - recon.eval(x);
                            return e * e;
                        },
                        win_lo, win_hi, n_nodes);
                }
                avg /= static_cast<double>(c.offsets);
                const double bound = bound_sinc_avg(map, step);
                const double exact = sinc_avg_error_exact(map, step);
                const double residue = window_truncation_residue(map, win_lo, win_hi);
                const bool in_regime = residue < 0.01 * avg;
                if (in_regime)
                    sound = sound && avg <= bound + soundness_slack;
                csv << format_double(d) << ',' << format_double(avg) << ','
                    << format_double(bound) << ',' << format_double(exact) << ','
                    << (in_regime ? 1 : 0) << '\n';
            }
            ExperimentResult r;
            r.csv = csv.str();
            r.sound = sound;
            if (!sound)
                r.notes.push_back("an in-regime aliasing error exceeded its bound");
            return r;
        }

        FreeSpaceMap varbounds_default_map()
        {
            // Three-source example map: x = [1, 5, 8], d = [1, 3, 2],
            // alpha = [1, 3, 3].
            std::vector<Source> s(3);
            s[0] = {1.0, 0.0, 1.0, 1.0, -1.0};
            s[1] = {5.0, 0.0, 9.0, 3.0, -1.0};
            s[2] = {8.0, 0.0, 4.0, 3.0, -1.0};
            return FreeSpaceMap(std::move(s), 1.0, 2.0, 1, 1.0);
        }

        ExperimentResult run_varbounds_experiment(const ExperimentConfig &c)
        {
            const FreeSpaceMap map = c.map_path.empty() ? varbounds_default_map()
                                                        : load_map_json(c.map_path);
            const double dmin = c.dmin;
            if (map.min_offline_distance() < dmin)
                throw std::invalid_argument(
                    "config: map violates the configured minimum distance");
            const double p0 = eval_1d(map, 0.0);
            std::ostringstream csv;
            csv << "delta,lower,p_value,upper\n";
            bool sound = true;
            for (double delta : c.delta_sweep.values())
            {
                const VarBounds vb = var_bounds(p0, delta, dmin);
                const double p = eval_1d(map, delta);
                sound = sound && p >= vb.lo - soundness_slack && p <= vb.hi + soundness_slack;
                csv << format_double(delta) << ',' << format_double(vb.lo) << ','
                    << format_double(p) << ',' << format_double(vb.hi) << '\n';
            }
            ExperimentResult r;
            r.csv = csv.str();
            r.sound = sound;
            if (!sound)
                r.notes.push_back("a map value escaped the variability envelope");
            return r;
        }

        ExperimentResult run_nmse_experiment(const ExperimentConfig &c)
        {
            const Scene scene =
                c.scene_path.empty() ? default_scene() : load_scene_json(c.scene_path);
            std::ostringstream csv;
            csv << "height_m,estimator,nmse,n_trials\n";
            for (EstimatorKind est : c.estimators)
            {
                const std::vector<HeightResult> rows =
                    run_height_sweep(scene, c.heights, c.trial, est);
                for (const HeightResult &row : rows)
                    csv << format_double(row.height) << ',' << estimator_name(est) << ','
                        << format_double(row.nmse) << ',' << row.n_trials << '\n';
            }
            ExperimentResult r;
            r.csv = csv.str();
            r.sound = true;
            return r;
        }
    } // namespace

    ExperimentResult run_experiment(const ExperimentConfig &config)
    {
        switch (config.kind)
        {
        case ExperimentKind::zeroth:
            return run_bound_experiment(config, false);
        case ExperimentKind::first:
            return run_bound_experiment(config, true);
        case ExperimentKind::sinc:
            return run_sinc_experiment(config);
        case ExperimentKind::varbounds:
            return run_varbounds_experiment(config);
        case ExperimentKind::nmse_height:
            return run_nmse_experiment(config);
        }
        throw std::logic_error("run_experiment: unhandled kind");
    }

} // namespace rmb::harness
