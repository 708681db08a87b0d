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
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rmb/harness.hpp"

namespace
{
    struct ExperimentArgs
    {
        std::string config_path;
        std::string out_path;
        std::int64_t seed = -1;
    };

    int run_one(rmb::harness::ExperimentKind kind, const ExperimentArgs &args)
    {
        using namespace rmb::harness;
        ExperimentConfig config =
            args.config_path.empty() ? default_config(kind) : config_from_file(args.config_path);
        if (config.kind != kind)
            throw std::invalid_argument("config names a different experiment than the command");
        if (!args.out_path.empty())
            config.out_path = args.out_path;
        if (args.seed >= 0)
        {
            config.seed = static_cast<std::uint64_t>(args.seed);
            config.trial.seed = config.seed;
        }
        const ExperimentResult result = run_experiment(config);
        write_text_file(config.out_path, result.csv);
        std::printf("%s: wrote %s (%s)\n", kind_name(kind), config.out_path.c_str(),
                    result.sound ? "all soundness rows hold" : "SOUNDNESS VIOLATION");
        for (const std::string &note : result.notes)
            std::printf("  note: %s\n", note.c_str());
        return result.sound ? 0 : 2;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"free-space radio map experiments"};
    app.require_subcommand(1);

    ExperimentArgs args;
    const auto add_experiment = [&](rmb::harness::ExperimentKind kind, const char *help) {
        CLI::App *cmd = app.add_subcommand(rmb::harness::kind_name(kind), help);
        cmd->add_option("--config", args.config_path, "experiment config (JSON)");
        cmd->add_option("--out", args.out_path, "output CSV path (overrides config)");
        cmd->add_option("--seed", args.seed, "seed override");
        return cmd;
    };

    using rmb::harness::ExperimentKind;
    CLI::App *c_zeroth = add_experiment(ExperimentKind::zeroth,
                                        "nearest-neighbour errors vs bounds over a distance sweep");
    CLI::App *c_first =
        add_experiment(ExperimentKind::first, "linear-interpolation errors vs bounds");
    CLI::App *c_sinc =
        add_experiment(ExperimentKind::sinc, "offset-averaged sinc aliasing error vs bound");
    CLI::App *c_var =
        add_experiment(ExperimentKind::varbounds, "pointwise variability envelope");
    CLI::App *c_nmse =
        add_experiment(ExperimentKind::nmse_height, "estimator NMSE vs transmitter height");

    std::string map_path;
    CLI::App *c_validate = app.add_subcommand("validate-map", "check a map description file");
    c_validate->add_option("map", map_path, "map JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (c_validate->parsed())
        {
            const rmb::FreeSpaceMap map = rmb::load_map_json(map_path);
            std::printf("ok: %zu source(s), wavelength %g m, gamma %g, dim %d, dmin %g m\n",
                        map.source_count(), map.wavelength(), map.gamma(), map.dim(),
                        map.min_source_distance());
            return 0;
        }
        if (c_zeroth->parsed())
            return run_one(ExperimentKind::zeroth, args);
        if (c_first->parsed())
            return run_one(ExperimentKind::first, args);
        if (c_sinc->parsed())
            return run_one(ExperimentKind::sinc, args);
        if (c_var->parsed())
            return run_one(ExperimentKind::varbounds, args);
        if (c_nmse->parsed())
            return run_one(ExperimentKind::nmse_height, args);
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
