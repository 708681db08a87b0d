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

#include "rmb/mapmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rmb
{
    namespace
    {
        constexpr double four_pi = 4.0 * std::numbers::pi;
    }

    FreeSpaceMap::FreeSpaceMap(std::vector<Source> sources, double wavelength, double gamma,
                               int dim, double min_source_distance)
        : sources_(std::move(sources)), wavelength_(wavelength), gamma_(gamma), dim_(dim),
          min_source_distance_(min_source_distance)
    {
        if (sources_.empty())
            throw std::invalid_argument("FreeSpaceMap: at least one source required");
        if (!(wavelength_ > 0.0))
            throw std::invalid_argument("FreeSpaceMap: wavelength must be positive");
        if (!(gamma_ > 0.0))
            throw std::invalid_argument("FreeSpaceMap: path-loss exponent must be positive");
        if (dim_ != 1 && dim_ != 2)
            throw std::invalid_argument("FreeSpaceMap: dim must be 1 or 2");
        if (!(min_source_distance_ > 0.0))
            throw std::invalid_argument("FreeSpaceMap: min source distance must be positive");
        double total_alpha = 0.0;
        for (const Source &s : sources_)
        {
            if (s.alpha < 0.0)
                throw std::invalid_argument("FreeSpaceMap: alpha must be non-negative");
            if (s.d2 < 0.0)
                throw std::invalid_argument("FreeSpaceMap: d2 must be non-negative");
            if (std::sqrt(s.d2) < min_source_distance_)
                throw std::invalid_argument(
                    "FreeSpaceMap: source violates the minimum-distance condition");
            total_alpha += s.alpha;
        }
        // strict positivity of the map needs at least one radiating source
        if (!(total_alpha > 0.0))
            throw std::invalid_argument("FreeSpaceMap: all sources have zero strength");
    }

    double FreeSpaceMap::min_offline_distance() const
    {
        double d2 = sources_.front().d2;
        for (const Source &s : sources_)
            d2 = std::min(d2, s.d2);
        return std::sqrt(d2);
    }

    double FreeSpaceMap::max_offline_distance() const
    {
        double d2 = sources_.front().d2;
        for (const Source &s : sources_)
            d2 = std::max(d2, s.d2);
        return std::sqrt(d2);
    }

    double alpha_from_power(double power, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw std::domain_error("alpha_from_power: wavelength must be positive");
        if (power < 0.0)
            throw std::domain_error("alpha_from_power: power must be non-negative");
        const double k = wavelength / four_pi;
        return power * k * k;
    }

    double power_from_alpha(double alpha, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw std::domain_error("power_from_alpha: wavelength must be positive");
        if (alpha < 0.0)
            throw std::domain_error("power_from_alpha: alpha must be non-negative");
        const double k = wavelength / four_pi;
        return alpha / (k * k);
    }

    double eval_1d(const FreeSpaceMap &map, double x)
    {
        if (map.dim() != 1)
            throw std::domain_error("eval_1d: map is not one-dimensional");
        const double gamma = map.gamma();
        double acc = 0.0;
        if (gamma == 2.0)
        {
            for (const Source &s : map.sources())
            {
                const double u = x - s.x;
                acc += s.alpha / (u * u + s.d2);
            }
        }
        else
        {
            for (const Source &s : map.sources())
            {
                const double u = x - s.x;
                acc += s.alpha / std::pow(u * u + s.d2, gamma / 2.0);
            }
        }
        return acc;
    }

    double eval_2d(const FreeSpaceMap &map, double x, double y)
    {
        if (map.dim() != 2)
            throw std::domain_error("eval_2d: map is not two-dimensional");
        const double gamma = map.gamma();
        double acc = 0.0;
        if (gamma == 2.0)
        {
            for (const Source &s : map.sources())
            {
                const double u = x - s.x, v = y - s.y;
                acc += s.alpha / (u * u + v * v + s.d2);
            }
        }
        else
        {
            for (const Source &s : map.sources())
            {
                const double u = x - s.x, v = y - s.y;
                acc += s.alpha / std::pow(u * u + v * v + s.d2, gamma / 2.0);
            }
        }
        return acc;
    }

    double deriv_1d(const FreeSpaceMap &map, double x)
    {
        if (map.dim() != 1)
            throw std::domain_error("deriv_1d: map is not one-dimensional");
        if (map.gamma() != 2.0)
            throw std::domain_error("deriv_1d: analytic derivative only for gamma = 2; "
                                    "use deriv_1d_fd");
        double acc = 0.0;
        for (const Source &s : map.sources())
        {
            const double u = x - s.x;
            const double den = u * u + s.d2;
            acc += -2.0 * s.alpha * u / (den * den);
        }
        return acc;
    }

    double deriv_1d_fd(const FreeSpaceMap &map, double x, double h)
    {
        if (!(h > 0.0))
            throw std::invalid_argument("deriv_1d_fd: step must be positive");
        return (eval_1d(map, x + h) - eval_1d(map, x - h)) / (2.0 * h);
    }

    double proximity_coefficient(const FreeSpaceMap &map)
    {
        double acc = 0.0;
        for (const Source &s : map.sources())
        {
            if (!(s.d2 > 0.0))
                throw std::domain_error("proximity_coefficient: source on the mapped region");
            const double d = std::sqrt(s.d2);
            acc += s.alpha / (d * d * d);
        }
        return acc;
    }

    bool check_min_distance(const FreeSpaceMap &map, const Interval &region, double dmin)
    {
        if (!(dmin > 0.0))
            throw std::invalid_argument("check_min_distance: dmin must be positive");
        if (!(region.lo < region.hi))
            throw std::invalid_argument("check_min_distance: empty region");
        for (const Source &s : map.sources())
            if (std::sqrt(s.d2) < dmin)
                return false;
        return true;
    }

    namespace
    {
        using nlohmann::json;

        void reject_unknown_keys(const json &obj, std::initializer_list<const char *> known,
                                 const char *what)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
            {
                bool ok = false;
                for (const char *k : known)
                    ok = ok || it.key() == k;
                if (!ok)
                    throw std::invalid_argument(std::string("map JSON: unknown key \"") +
                                                it.key() + "\" in " + what);
            }
        }
    } // namespace

    FreeSpaceMap parse_map_json(const std::string &text)
    {
        const json j = json::parse(text);
        if (!j.is_object())
            throw std::invalid_argument("map JSON: top level must be an object");
        reject_unknown_keys(j, {"wavelength", "gamma", "dim", "dmin", "sources"}, "map");
        if (!j.contains("wavelength") || !j.contains("sources"))
            throw std::invalid_argument("map JSON: wavelength and sources are required");

        const double wavelength = j.at("wavelength").get<double>();
        const double gamma = j.value("gamma", 2.0);
        const int dim = j.value("dim", 1);
        const double dmin = j.value("dmin", 1.0);

        std::vector<Source> sources;
        for (const json &js : j.at("sources"))
        {
            reject_unknown_keys(js, {"x", "y", "d2", "alpha", "power_w"}, "source");
            Source s;
            s.x = js.value("x", 0.0);
            s.y = js.value("y", 0.0);
            s.d2 = js.value("d2", 1.0);
            const bool has_alpha = js.contains("alpha");
            const bool has_power = js.contains("power_w");
            if (!has_alpha && !has_power)
                throw std::invalid_argument("map JSON: source needs alpha or power_w");
            if (has_power)
            {
                s.power = js.at("power_w").get<double>();
                s.alpha = alpha_from_power(s.power, wavelength);
            }
            if (has_alpha)
            {
                const double a = js.at("alpha").get<double>();
                if (has_power)
                {
                    const double scale = std::max(std::abs(a), std::abs(s.alpha));
                    if (std::abs(a - s.alpha) > 1e-12 * scale)
                        throw std::invalid_argument(
                            "map JSON: alpha and power_w disagree for a source");
                }
                s.alpha = a;
                if (!has_power)
                    s.power = power_from_alpha(a, wavelength);
            }
            sources.push_back(s);
        }
        return FreeSpaceMap(std::move(sources), wavelength, gamma, dim, dmin);
    }

    FreeSpaceMap load_map_json(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("load_map_json: cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_map_json(ss.str());
    }

    std::string map_to_json(const FreeSpaceMap &map)
    {
        nlohmann::json j;
        j["wavelength"] = map.wavelength();
        j["gamma"] = map.gamma();
        j["dim"] = map.dim();
        j["dmin"] = map.min_source_distance();
        j["sources"] = nlohmann::json::array();
        for (const Source &s : map.sources())
        {
            nlohmann::json js{{"x", s.x}, {"d2", s.d2}, {"alpha", s.alpha}};
            if (map.dim() == 2)
                js["y"] = s.y;
            if (s.power >= 0.0)
                js["power_w"] = s.power;
            j["sources"].push_back(js);
        }
        return j.dump(2);
    }

} // namespace rmb
