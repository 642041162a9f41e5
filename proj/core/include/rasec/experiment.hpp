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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rasec/config.hpp"
#include "rasec/optimizer.hpp"

namespace rasec
{
    /// Beamforming schemes compared by the harness.
    enum class Scheme
    {
        tra,    // TRA-ABF: two-level rotation, CRB-aware region (proposed)
        era,    // ERA-ABF: element rotation only
        gra,    // GRA-ABF: array rotation only
        fpa,    // FPA-ABF: no rotation
        tra_pe, // TRA-ABF-PE: point estimate of the eavesdropper direction
        tra_es, // TRA-ABF-ES: array rotation by exhaustive grid search
    };

    std::string_view scheme_name(Scheme s);
    /// Throws ConfigError for unknown tags; TRA-ABF-SCA is recognized but not available.
    Scheme parse_scheme(std::string_view tag);
    std::vector<Scheme> parse_scheme_list(const std::vector<std::string> &tags);
    const std::vector<Scheme> &all_schemes();
    BlockMask scheme_mask(Scheme s, int exhaustive_points);

    struct ExperimentConfig
    {
        ArrayConfig array;
        SensingConfig sensing;
        LinkBudget link;
        SolverSettings solver;
        int n_angle_samples = 21;      // M
        double crb_override = 0.0;     // > 0 replaces the computed CRB
        int n_users = 3;
        double user_range_min = 30.0;
        double user_range_max = 50.0;
        double user_azimuth_min = deg2rad(-80.0);
        double user_azimuth_max = deg2rad(80.0);
        PolarPosition eavesdropper{30.0, deg2rad(50.0)};
        int n_trials = 200;
        std::uint64_t master_seed = 2026;
        std::vector<Scheme> schemes;
        std::string sweep_key;            // empty: no sweep
        std::vector<double> sweep_values;
        std::vector<double> rotation_error_bounds; // radians
        int es_points = 61;
        double beam_resolution = deg2rad(1.0);

        /// Throws ConfigError on invalid values.
        static ExperimentConfig from_map(const ConfigMap &map);
        /// Reference setup (all built-in defaults).
        static ExperimentConfig defaults() { return from_map(ConfigMap()); }
    };

    /// Independent seed of trial `trial` under `master`. Shared by every scheme and every
    /// sweep value so comparisons are paired.
    std::uint64_t trial_seed(std::uint64_t master, int trial);

    /// Users with uniform range and azimuth on the configured intervals; eavesdropper fixed.
    Scene generate_scene(const ExperimentConfig &cfg, std::uint64_t trial_seed);

    /// Scene plus the shared sensing stage of one trial.
    struct TrialSetup
    {
        int trial = 0;
        std::uint64_t seed = 0;
        Scene scene;
        double theta_hat = 0.0;
        double crb = 0.0;
    };

    TrialSetup prepare_trial(const ExperimentConfig &cfg, int trial);

    /// Uncertainty model used by a scheme (point mass for TRA-ABF-PE).
    SensingOutcome scheme_region(const ExperimentConfig &cfg, const TrialSetup &setup, Scheme scheme);

    struct ResultRecord
    {
        int trial = 0;
        Scheme scheme = Scheme::tra;
        std::string sweep_key;
        double sweep_value = 0.0;
        double theta_true = 0.0;
        double theta_hat = 0.0;
        double crb = 0.0;
        double min_secrecy = 0.0;        // evaluated against the true direction, clipped at 0
        double surrogate_objective = 0.0; // smoothed surrogate at termination
        int ao_iterations = 0;
        double phi_arr = 0.0;
        std::vector<double> varphi;
        double wall_ms = 0.0;
        std::string status = "ok";
    };

    /// Optimizes one scheme on a prepared trial. Solver failures are caught and reported
    /// through `status`; the record is always returned.
    ResultRecord run_scheme(const ExperimentConfig &cfg, const TrialSetup &setup, Scheme scheme,
                            BeamformingSolution *solution = nullptr, AoResult *ao = nullptr);

    ResultRecord run_trial(const ExperimentConfig &cfg, Scheme scheme, int trial);

    /// trials x schemes at the configured operating point, in (trial, scheme) order.
    std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg);

    /// Returns a copy of `map` with `key` set to `value`, re-resolved.
    ExperimentConfig with_override(const ConfigMap &map, const std::string &key, double value);

    /// Cross product of sweep values x trials x schemes in (value, trial, scheme) order.
    std::vector<ResultRecord> run_sweep(const ConfigMap &map);

    /// Optimizes once per (trial, scheme), then re-evaluates under bounded uniform
    /// execution errors on the rotation variables each scheme actually controls.
    std::vector<ResultRecord> rotation_error_study(const ExperimentConfig &cfg);

    /// Perturbs the controlled rotation variables with the unit draws scaled by `bound`,
    /// then clamps to the feasible box.
    RotationState perturb_rotation(const RotationState &rot, const ArrayConfig &array, Scheme scheme, double bound,
                                   double unit_phi_arr, const rvec &unit_varphi);

    struct BeamPattern
    {
        std::vector<double> angles;                  // radians
        std::vector<Scheme> schemes;
        std::vector<std::vector<double>> gain_db;    // [scheme][angle]
        std::vector<double> user_angles;
        double theta_hat = 0.0;
        double xi_lo = 0.0;
        double xi_hi = 0.0;
    };

    /// Beam gain over [-90, 90] degrees at the eavesdropper range for each design.
    BeamPattern export_beam_pattern(const ArrayConfig &array, const Scene &scene, const SensingOutcome &region,
                                    const std::vector<std::pair<Scheme, BeamformingSolution>> &designs,
                                    double resolution);

    /// Largest beam gain over [lo, hi] sampled at `points` angles.
    double max_gain_over(const ArrayConfig &array, const BeamformingSolution &design, double range, double lo, double hi,
                         int points = 201);

    struct SummaryRow
    {
        std::string sweep_key;
        double sweep_value = 0.0;
        Scheme scheme = Scheme::tra;
        int count = 0;
        double mean = 0.0;
        double std_error = 0.0;
    };

    /// Mean and standard error of min_secrecy per (sweep value, scheme), first-seen order.
    std::vector<SummaryRow> summarize(const std::vector<ResultRecord> &records);
}
