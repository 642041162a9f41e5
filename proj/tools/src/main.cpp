// SPDX-License-Identifier: Apache-2.0
//
// rasec - secure multicast with two-level rotatable antenna arrays
// Copyright (C) 2026 The rasec authors
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
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rasec/report.hpp"
#include "rasec/validation.hpp"

namespace fs = std::filesystem;
using namespace rasec;

namespace
{
    constexpr int exit_config_error = 1;
    constexpr int exit_validation_failure = 2;

    struct Common
    {
        std::string config = "defaults";
        std::vector<std::string> overrides;
        long long seed = -1;
        int trials = 0;
        std::vector<std::string> schemes;
        std::string out_dir;
        std::string format = "csv";
        bool manifest = false;
    };

    void add_common(CLI::App *cmd, Common &c)
    {
        cmd->add_option("-c,--config", c.config, "Config file, or 'defaults'");
        cmd->add_option("--set", c.overrides, "Override a setting, key=value (repeatable)");
        cmd->add_option("--seed", c.seed, "Master seed");
        cmd->add_option("--trials", c.trials, "Number of Monte-Carlo trials");
        cmd->add_option("--scheme", c.schemes, "Scheme tags, comma separated or repeated")->delimiter(',');
        cmd->add_option("-o,--out", c.out_dir, "Output directory (stdout when omitted)");
        cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json", "jsonl"}));
        cmd->add_flag("--manifest", c.manifest, "Also emit the fully resolved settings");
    }

    ConfigMap resolve(const Common &c)
    {
        ConfigMap map = ConfigMap::load(c.config);
        for (const auto &kv : c.overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + kv + "'");
            map.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        }
        if (c.seed >= 0)
            map.set("experiment.master_seed", std::to_string(c.seed));
        if (c.trials > 0)
            map.set("experiment.n_trials", std::to_string(c.trials));
        if (!c.schemes.empty())
        {
            std::string joined;
            for (const auto &s : c.schemes)
                joined += (joined.empty() ? "" : ",") + s;
            map.set("experiment.schemes", joined);
        }
        ExperimentConfig::from_map(map); // fail early on invalid settings
        return map;
    }

    std::ofstream open_output(const fs::path &path)
    {
        std::ofstream f(path);
        if (!f)
            throw std::runtime_error("cannot write " + path.string());
        return f;
    }

    void emit_records(const Common &c, const ConfigMap &map, const std::vector<ResultRecord> &records)
    {
        const OutputFormat fmt = parse_output_format(c.format);
        const std::string ext = fmt == OutputFormat::csv ? ".csv" : ".jsonl";
        if (c.out_dir.empty())
        {
            write_records(std::cout, records, fmt);
            return;
        }
        fs::create_directories(c.out_dir);
        const fs::path dir(c.out_dir);
        auto rec = open_output(dir / ("records" + ext));
        write_records(rec, records, fmt);
        auto sum = open_output(dir / ("summary" + ext));
        write_summary(sum, summarize(records), fmt);
        auto timing = open_output(dir / "timing.csv");
        write_timing(timing, records);
        auto cfg = open_output(dir / "config.resolved");
        map.write(cfg);
        std::cerr << "wrote " << records.size() << " records to " << dir.string() << '\n';
    }

    int cmd_beampattern(const Common &c, const ConfigMap &map, int trial)
    {
        const ExperimentConfig cfg = ExperimentConfig::from_map(map);
        const TrialSetup setup = prepare_trial(cfg, trial);
        std::vector<std::pair<Scheme, BeamformingSolution>> designs;
        for (Scheme s : cfg.schemes)
        {
            BeamformingSolution sol;
            const ResultRecord rec = run_scheme(cfg, setup, s, &sol);
            if (rec.status != "ok")
            {
                std::cerr << scheme_name(s) << ": " << rec.status << '\n';
                continue;
            }
            designs.emplace_back(s, sol);
        }
        const SensingOutcome region = uncertainty_region(setup.theta_hat, setup.crb, cfg.n_angle_samples);
        const BeamPattern pattern = export_beam_pattern(cfg.array, setup.scene, region, designs, cfg.beam_resolution);
        if (c.out_dir.empty())
        {
            write_beam_pattern(std::cout, pattern);
            return 0;
        }
        fs::create_directories(c.out_dir);
        auto f = open_output(fs::path(c.out_dir) / "beampattern.csv");
        write_beam_pattern(f, pattern);
        auto cfgf = open_output(fs::path(c.out_dir) / "config.resolved");
        map.write(cfgf);
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Secure multicast beamforming with two-level rotatable arrays"};
    app.require_subcommand(1);

    Common common;
    int trial = 0;
    int realizations = 200;

    auto *run = app.add_subcommand("run", "Monte-Carlo trials at one operating point");
    add_common(run, common);
    auto *sweep = app.add_subcommand("sweep", "Sweep one setting over experiment.sweep_values");
    add_common(sweep, common);
    auto *robust = app.add_subcommand("robustness", "Re-evaluate designs under rotation execution errors");
    add_common(robust, common);
    auto *beam = app.add_subcommand("beampattern", "Beam gain versus angle for one trial");
    add_common(beam, common);
    beam->add_option("--trial", trial, "Trial index")->check(CLI::NonNegativeNumber);
    auto *validate = app.add_subcommand("validate", "Numerical self-checks of gradients and the CRB");
    add_common(validate, common);
    validate->add_option("--realizations", realizations, "Noise realizations for the MSE check")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        const ConfigMap map = resolve(common);
        if (common.manifest && common.out_dir.empty())
        {
            std::ostringstream os;
            map.write(os);
            std::istringstream is(os.str());
            for (std::string line; std::getline(is, line);)
                std::cerr << "# " << line << '\n';
        }
        if (run->parsed())
            emit_records(common, map, run_experiment(ExperimentConfig::from_map(map)));
        else if (sweep->parsed())
            emit_records(common, map, run_sweep(map));
        else if (robust->parsed())
            emit_records(common, map, rotation_error_study(ExperimentConfig::from_map(map)));
        else if (beam->parsed())
            return cmd_beampattern(common, map, trial);
        else if (validate->parsed())
        {
            const bool ok = print_checks(std::cout, run_validation(ExperimentConfig::from_map(map), realizations));
            return ok ? 0 : exit_validation_failure;
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    return 0;
}
