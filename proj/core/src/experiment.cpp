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

#include "rasec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

#include "rasec/random.hpp"

namespace rasec
{
    std::string_view scheme_name(Scheme s)
    {
        switch (s)
        {
        case Scheme::tra:
            return "TRA-ABF";
        case Scheme::era:
            return "ERA-ABF";
        case Scheme::gra:
            return "GRA-ABF";
        case Scheme::fpa:
            return "FPA-ABF";
        case Scheme::tra_pe:
            return "TRA-ABF-PE";
        case Scheme::tra_es:
            return "TRA-ABF-ES";
        }
        return "?";
    }

    const std::vector<Scheme> &all_schemes()
    {
        static const std::vector<Scheme> list = {Scheme::tra, Scheme::era, Scheme::gra,
                                                 Scheme::fpa, Scheme::tra_pe, Scheme::tra_es};
        return list;
    }

    Scheme parse_scheme(std::string_view tag)
    {
        for (Scheme s : all_schemes())
            if (scheme_name(s) == tag)
                return s;
        if (tag == "TRA-ABF-SCA")
            throw ConfigError("scheme 'TRA-ABF-SCA' is not available: its convex inner solver is not part of this toolkit");
        throw ConfigError("unknown scheme tag '" + std::string(tag) + "'");
    }

    std::vector<Scheme> parse_scheme_list(const std::vector<std::string> &tags)
    {
        if (tags.empty())
            throw ConfigError("scheme list is empty");
        std::vector<Scheme> out;
        for (const auto &t : tags)
            out.push_back(parse_scheme(t));
        return out;
    }

    BlockMask scheme_mask(Scheme s, int exhaustive_points)
    {
        BlockMask mask;
        mask.exhaustive_points = exhaustive_points;
        switch (s)
        {
        case Scheme::fpa:
            mask.optimize_phi_arr = false;
            mask.optimize_varphi = false;
            break;
        case Scheme::gra:
            mask.optimize_varphi = false;
            break;
        case Scheme::era:
            mask.optimize_phi_arr = false;
            break;
        case Scheme::tra_es:
            mask.optimize_phi_arr = false;
            mask.exhaustive_phi_arr = true;
            break;
        case Scheme::tra:
        case Scheme::tra_pe:
            break;
        }
        return mask;
    }

    ExperimentConfig ExperimentConfig::from_map(const ConfigMap &map)
    {
        ExperimentConfig cfg;
        try
        {
            cfg.array = ArrayConfig::at_carrier(map.get_double("array.carrier_ghz") * 1e9, int(map.get_int("array.n_tx")),
                                                int(map.get_int("array.n_rx")));
            cfg.array.directivity_p = map.get_double("array.directivity_p");
            cfg.array.phi_arr_max = deg2rad(map.get_double("array.phi_arr_max_deg"));
            cfg.array.varphi_max = deg2rad(map.get_double("array.varphi_max_deg"));
            cfg.array.validate();

            cfg.link.tx_power = dbm_to_watt(map.get_double("link.pt_dbm"));
            cfg.link.noise_power = dbm_to_watt(map.get_double("link.noise_dbm"));

            cfg.sensing.n_beams = int(map.get_int("sensing.n_beams"));
            cfg.sensing.sensing_power = dbm_to_watt(map.get_double("sensing.ps_dbm"));
            cfg.sensing.noise_power = dbm_to_watt(map.get_double("sensing.noise_dbm"));
            cfg.sensing.rcs = db_to_linear(map.get_double("sensing.rcs_dbsm"));
            cfg.sensing.search_grid = SensingConfig::sin_uniform_grid(int(map.get_int("sensing.grid_points")));
            cfg.sensing.refine = map.get_bool("sensing.refine");
            cfg.sensing.validate(cfg.array);
            cfg.n_angle_samples = int(map.get_int("sensing.n_samples"));
            if (cfg.n_angle_samples < 2)
                throw ConfigError("sensing.n_samples must be >= 2");
            cfg.crb_override = map.get_double("sensing.crb_override");

            cfg.n_users = int(map.get_int("scene.n_users"));
            if (cfg.n_users < 1)
                throw ConfigError("scene.n_users must be >= 1");
            cfg.user_range_min = map.get_double("scene.user_range_min");
            cfg.user_range_max = map.get_double("scene.user_range_max");
            cfg.user_azimuth_min = deg2rad(map.get_double("scene.user_azimuth_min_deg"));
            cfg.user_azimuth_max = deg2rad(map.get_double("scene.user_azimuth_max_deg"));
            if (!(cfg.user_range_min > 0.0) || cfg.user_range_max < cfg.user_range_min)
                throw ConfigError("scene user range interval must satisfy 0 < min <= max");
            if (!(cfg.user_azimuth_min > -pi / 2) || !(cfg.user_azimuth_max < pi / 2) ||
                cfg.user_azimuth_max < cfg.user_azimuth_min)
                throw ConfigError("scene user azimuth interval must lie inside (-90, 90) degrees with min <= max");
            cfg.eavesdropper = {map.get_double("scene.eav_range"), deg2rad(map.get_double("scene.eav_azimuth_deg"))};
            cfg.eavesdropper.validate();

            auto &s = cfg.solver;
            s.tol = map.get_double("solver.tol");
            s.max_iter_inner = int(map.get_int("solver.max_iter_inner"));
            s.max_iter_ao = int(map.get_int("solver.max_iter_ao"));
            s.armijo_c = map.get_double("solver.armijo_c");
            s.armijo_shrink = map.get_double("solver.armijo_shrink");
            s.max_backtracks = int(map.get_int("solver.max_backtracks"));
            s.beta_sm_init = map.get_double("solver.beta_sm_init");
            s.beta_sm_growth = map.get_double("solver.beta_sm_growth");
            s.beta_sm_max = map.get_double("solver.beta_sm_max");
            s.grid_points_init = int(map.get_int("solver.grid_points_init"));
            s.step_init = map.get_double("solver.step_init");
            s.rotation_step = deg2rad(map.get_double("solver.rotation_step_deg"));
            s.validate();
            cfg.es_points = int(map.get_int("solver.es_points"));
            if (cfg.es_points < 1)
                throw ConfigError("solver.es_points must be >= 1");

            cfg.n_trials = int(map.get_int("experiment.n_trials"));
            if (cfg.n_trials < 1)
                throw ConfigError("experiment.n_trials must be >= 1");
            cfg.master_seed = static_cast<std::uint64_t>(map.get_int("experiment.master_seed"));
            cfg.schemes = parse_scheme_list(map.get_list("experiment.schemes"));
            cfg.sweep_key = map.get("experiment.sweep_key");
            cfg.sweep_values = map.get_double_list("experiment.sweep_values");
            if (!cfg.sweep_key.empty())
            {
                if (!map.contains(cfg.sweep_key) || cfg.sweep_key.rfind("experiment.", 0) == 0)
                    throw ConfigError("experiment.sweep_key '" + cfg.sweep_key + "' is not a sweepable key");
                if (cfg.sweep_values.empty())
                    throw ConfigError("experiment.sweep_values must be nonempty when a sweep key is set");
            }
            for (double b : map.get_double_list("experiment.rotation_error_bounds_deg"))
            {
                if (!(b >= 0.0))
                    throw ConfigError("rotation error bounds must be nonnegative");
                cfg.rotation_error_bounds.push_back(deg2rad(b));
            }
            cfg.beam_resolution = deg2rad(map.get_double("experiment.beam_resolution_deg"));
            if (!(cfg.beam_resolution > 0.0))
                throw ConfigError("experiment.beam_resolution_deg must be positive");
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }
        return cfg;
    }

    std::uint64_t trial_seed(std::uint64_t master, int trial)
    {
        return derive_seed(master, {static_cast<std::uint64_t>(trial)});
    }

    Scene generate_scene(const ExperimentConfig &cfg, std::uint64_t seed)
    {
        Engine rng = make_engine(seed, Stream::scene);
        std::uniform_real_distribution<double> range(cfg.user_range_min, cfg.user_range_max);
        std::uniform_real_distribution<double> azimuth(cfg.user_azimuth_min, cfg.user_azimuth_max);
        Scene scene;
        scene.users.resize(cfg.n_users);
        for (auto &u : scene.users)
        {
            u.range = range(rng);
            u.azimuth = azimuth(rng);
        }
        scene.eavesdropper = cfg.eavesdropper;
        return scene;
    }

    TrialSetup prepare_trial(const ExperimentConfig &cfg, int trial)
    {
        TrialSetup setup;
        setup.trial = trial;
        setup.seed = trial_seed(cfg.master_seed, trial);
        setup.scene = generate_scene(cfg, setup.seed);
        const auto &eav = setup.scene.eavesdropper;
        const EchoData echo = simulate_echoes(eav.azimuth, eav.range, cfg.sensing, cfg.array,
                                              derive_seed(setup.seed, {std::uint64_t(Stream::sensing_noise)}));
        setup.theta_hat = mle_estimate(echo, cfg.sensing, cfg.array);
        setup.crb = cfg.crb_override > 0.0 ? cfg.crb_override : crb(setup.theta_hat, eav.range, cfg.sensing, cfg.array);
        return setup;
    }

    SensingOutcome scheme_region(const ExperimentConfig &cfg, const TrialSetup &setup, Scheme scheme)
    {
        if (scheme == Scheme::tra_pe)
            return point_mass(setup.theta_hat, setup.crb);
        return uncertainty_region(setup.theta_hat, setup.crb, cfg.n_angle_samples);
    }

    ResultRecord run_scheme(const ExperimentConfig &cfg, const TrialSetup &setup, Scheme scheme,
                            BeamformingSolution *solution, AoResult *ao)
    {
        ResultRecord rec;
        rec.trial = setup.trial;
        rec.scheme = scheme;
        rec.theta_true = setup.scene.eavesdropper.azimuth;
        rec.theta_hat = setup.theta_hat;
        rec.crb = setup.crb;

        const auto start = std::chrono::steady_clock::now();
        try
        {
            const SurrogateProblem problem(cfg.array, setup.scene, scheme_region(cfg, setup, scheme), cfg.link);
            AoResult result = ao_solve(problem, cfg.solver, initial_solution(problem), scheme_mask(scheme, cfg.es_points));
            const auto &sol = result.solution;
            rec.min_secrecy =
                evaluate_true_secrecy(sol.w, sol.rot, cfg.array, setup.scene, setup.scene.eavesdropper, cfg.link);
            rec.surrogate_objective = result.trace.empty() ? 0.0 : result.trace.back().objective;
            rec.ao_iterations = int(result.trace.size());
            rec.phi_arr = sol.rot.phi_arr;
            rec.varphi.assign(sol.rot.varphi.data(), sol.rot.varphi.data() + sol.rot.varphi.size());
            if (!std::isfinite(rec.min_secrecy) || !std::isfinite(rec.surrogate_objective))
                throw std::runtime_error("non-finite objective");
            if (solution)
                *solution = sol;
            if (ao)
                *ao = std::move(result);
        }
        catch (const std::exception &e)
        {
            rec.status = std::string("error: ") + e.what();
            rec.min_secrecy = 0.0;
            rec.surrogate_objective = 0.0;
            rec.varphi.assign(cfg.array.n_tx, 0.0);
            rec.phi_arr = 0.0;
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return rec;
    }

    ResultRecord run_trial(const ExperimentConfig &cfg, Scheme scheme, int trial)
    {
        return run_scheme(cfg, prepare_trial(cfg, trial), scheme);
    }

    std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg)
    {
        std::vector<ResultRecord> out;
        out.reserve(std::size_t(cfg.n_trials) * cfg.schemes.size());
        for (int t = 0; t < cfg.n_trials; ++t)
        {
            const TrialSetup setup = prepare_trial(cfg, t);
            for (Scheme s : cfg.schemes)
                out.push_back(run_scheme(cfg, setup, s));
        }
        return out;
    }

    ExperimentConfig with_override(const ConfigMap &map, const std::string &key, double value)
    {
        ConfigMap copy = map;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15g", value);
        copy.set(key, buf);
        return ExperimentConfig::from_map(copy);
    }

    std::vector<ResultRecord> run_sweep(const ConfigMap &map)
    {
        const ExperimentConfig base = ExperimentConfig::from_map(map);
        if (base.sweep_key.empty())
            throw ConfigError("no sweep configured: set experiment.sweep_key and experiment.sweep_values");
        std::vector<ResultRecord> out;
        for (double value : base.sweep_values)
        {
            const ExperimentConfig cfg = with_override(map, base.sweep_key, value);
            for (int t = 0; t < cfg.n_trials; ++t)
            {
                const TrialSetup setup = prepare_trial(cfg, t);
                for (Scheme s : cfg.schemes)
                {
                    ResultRecord rec = run_scheme(cfg, setup, s);
                    rec.sweep_key = base.sweep_key;
                    rec.sweep_value = value;
                    out.push_back(std::move(rec));
                }
            }
        }
        return out;
    }

    RotationState perturb_rotation(const RotationState &rot, const ArrayConfig &array, Scheme scheme, double bound,
                                   double unit_phi_arr, const rvec &unit_varphi)
    {
        const BlockMask mask = scheme_mask(scheme, 1);
        RotationState out = rot;
        if (mask.optimize_phi_arr || mask.exhaustive_phi_arr)
            out.phi_arr += bound * unit_phi_arr;
        if (mask.optimize_varphi)
            out.varphi += bound * unit_varphi;
        out.clamp_to(array);
        return out;
    }

    std::vector<ResultRecord> rotation_error_study(const ExperimentConfig &cfg)
    {
        if (cfg.rotation_error_bounds.empty())
            throw ConfigError("rotation error study needs experiment.rotation_error_bounds_deg");
        const std::size_t n_bounds = cfg.rotation_error_bounds.size();
        std::vector<std::vector<ResultRecord>> per_bound(n_bounds);
        for (int t = 0; t < cfg.n_trials; ++t)
        {
            const TrialSetup setup = prepare_trial(cfg, t);
            // one set of unit draws per trial, shared by every scheme and bound
            Engine rng = make_engine(setup.seed, Stream::rotation_error);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            const double u_arr = unit(rng);
            rvec u_var(cfg.array.n_tx);
            for (auto &u : u_var)
                u = unit(rng);

            for (Scheme s : cfg.schemes)
            {
                BeamformingSolution sol;
                const ResultRecord base = run_scheme(cfg, setup, s, &sol);
                for (std::size_t b = 0; b < n_bounds; ++b)
                {
                    ResultRecord rec = base;
                    rec.sweep_key = "rotation_error_deg";
                    rec.sweep_value = rad2deg(cfg.rotation_error_bounds[b]);
                    if (base.status == "ok")
                    {
                        const RotationState rot =
                            perturb_rotation(sol.rot, cfg.array, s, cfg.rotation_error_bounds[b], u_arr, u_var);
                        rec.min_secrecy =
                            evaluate_true_secrecy(sol.w, rot, cfg.array, setup.scene, setup.scene.eavesdropper, cfg.link);
                        rec.phi_arr = rot.phi_arr;
                        rec.varphi.assign(rot.varphi.data(), rot.varphi.data() + rot.varphi.size());
                    }
                    per_bound[b].push_back(std::move(rec));
                }
            }
        }
        std::vector<ResultRecord> out;
        for (auto &v : per_bound)
            for (auto &r : v)
                out.push_back(std::move(r));
        return out;
    }

    BeamPattern export_beam_pattern(const ArrayConfig &array, const Scene &scene, const SensingOutcome &region,
                                    const std::vector<std::pair<Scheme, BeamformingSolution>> &designs,
                                    double resolution)
    {
        if (!(resolution > 0.0))
            throw std::invalid_argument("export_beam_pattern: resolution must be positive");
        BeamPattern out;
        const int steps = int(std::lround(pi / resolution));
        for (int i = 0; i <= steps; ++i)
            out.angles.push_back(-pi / 2.0 + pi * i / steps);
        for (const auto &[scheme, sol] : designs)
        {
            out.schemes.push_back(scheme);
            std::vector<double> row;
            row.reserve(out.angles.size());
            for (double a : out.angles)
                row.push_back(beam_gain(array, sol.rot, sol.w, a, scene.eavesdropper.range));
            out.gain_db.push_back(std::move(row));
        }
        for (const auto &u : scene.users)
            out.user_angles.push_back(u.azimuth);
        out.theta_hat = region.theta_hat;
        out.xi_lo = region.xi_lo;
        out.xi_hi = region.xi_hi;
        return out;
    }

    double max_gain_over(const ArrayConfig &array, const BeamformingSolution &design, double range, double lo, double hi,
                         int points)
    {
        double best = beam_gain_floor_db;
        for (int i = 0; i < points; ++i)
        {
            const double a = (points == 1) ? lo : lo + (hi - lo) * i / double(points - 1);
            best = std::max(best, beam_gain(array, design.rot, design.w, a, range));
        }
        return best;
    }

    std::vector<SummaryRow> summarize(const std::vector<ResultRecord> &records)
    {
        struct Acc
        {
            SummaryRow row;
            double sum = 0.0;
            std::vector<double> values;
        };
        std::vector<Acc> groups;
        std::map<std::tuple<std::string, double, int>, std::size_t> index;
        for (const auto &r : records)
        {
            const auto key = std::make_tuple(r.sweep_key, r.sweep_value, int(r.scheme));
            auto it = index.find(key);
            if (it == index.end())
            {
                it = index.emplace(key, groups.size()).first;
                Acc acc;
                acc.row.sweep_key = r.sweep_key;
                acc.row.sweep_value = r.sweep_value;
                acc.row.scheme = r.scheme;
                groups.push_back(std::move(acc));
            }
            groups[it->second].values.push_back(r.min_secrecy);
        }
        std::vector<SummaryRow> out;
        for (auto &g : groups)
        {
            const double n = double(g.values.size());
            double mean = 0.0;
            for (double v : g.values)
                mean += v;
            mean /= n;
            double ss = 0.0;
            for (double v : g.values)
                ss += (v - mean) * (v - mean);
            g.row.count = int(g.values.size());
            g.row.mean = mean;
            g.row.std_error = g.values.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
            out.push_back(g.row);
        }
        return out;
    }
}
