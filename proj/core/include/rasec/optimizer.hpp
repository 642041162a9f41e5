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

#include <vector>

#include "rasec/objective.hpp"

namespace rasec
{
    struct SolverSettings
    {
        double tol = 1e-6;
        int max_iter_inner = 200;
        int max_iter_ao = 64;
        double armijo_c = 1e-4;
        double armijo_shrink = 0.5;
        int max_backtracks = 30;
        double beta_sm_init = 5.0;
        double beta_sm_growth = 1.5; // eta > 1
        double beta_sm_max = 1e4;
        int grid_points_init = 15;           // N_g for the orientation grid search
        double step_init = 1.0;              // RCG trial step, divided by the direction norm
        double rotation_step = deg2rad(5.0); // largest first trial move of the rotation PGA [rad]

        void validate() const;
    };

    /// Analog beamformer with |w_n| = 1/sqrt(N_t) and the rotation state it was designed for.
    struct BeamformingSolution
    {
        cvec w;
        RotationState rot;
    };

    /// Which blocks the alternating optimizer updates.
    struct BlockMask
    {
        bool optimize_phi_arr = true;
        bool optimize_varphi = true;
        bool exhaustive_phi_arr = false; // replace the array-rotation PGA by a grid scan
        int exhaustive_points = 61;
    };

    /// Smoothed max-min surrogate of one scene: users, eavesdropper range, sampled
    /// eavesdropper directions with weights, and the link budget.
    class SurrogateProblem
    {
    public:
        SurrogateProblem(const ArrayConfig &cfg, Scene scene, SensingOutcome region, LinkBudget lb);

        ObjectiveContext context(const RotationState &rot, double beta_sm) const;
        /// Same value as softmin_objective(w, context(rot, beta_sm)) without building the
        /// context; repeated calls at one phi_arr reuse the array geometry.
        double objective(const cvec &w, const RotationState &rot, double beta_sm) const;

        /// Objective plus its analytic partials with respect to phi_arr and every varphi_n.
        struct RotationGradient
        {
            double value = 0.0;
            double d_phi_arr = 0.0;
            rvec d_varphi;
        };
        RotationGradient rotation_gradient(const cvec &w, const RotationState &rot, double beta_sm) const;

        const ArrayConfig &config() const { return cfg_; }
        const Scene &scene() const { return scene_; }
        const SensingOutcome &region() const { return region_; }
        const LinkBudget &link() const { return lb_; }

    private:
        // Per-target quantities that depend on phi_arr only: path gain times steering
        // entry, and the exact unit direction from every element.
        struct ArrayGeometry
        {
            double phi_arr = 0.0;
            bool valid = false;
            mat2 rot_mat;
            mat2 rot_dot;
            std::vector<vec2> dpos;    // d c_n / d phi_arr
            std::vector<cplx> coeff;   // [target * n_tx + n]
            std::vector<vec2> dir;     // [target * n_tx + n]
            std::vector<double> dist;  // [target * n_tx + n]
            std::vector<double> dphase; // d(steering phase)/d phi_arr, negated
        };
        const ArrayGeometry &geometry(double phi_arr) const;

        ArrayConfig cfg_;
        Scene scene_;
        SensingOutcome region_;
        LinkBudget lb_;
        std::vector<PolarPosition> targets_; // users first, then sampled eavesdropper angles
        mutable ArrayGeometry cache_;        // single-threaded use per problem instance
    };

    // Complex circle manifold ingredients (v = sqrt(N_t) w, |v_n| = 1)

    /// Wirtinger gradient dG/dv* of the smoothed objective at a frozen context.
    cvec euclidean_grad_w(const cvec &v, const ObjectiveContext &ctx, const LinkBudget &lb);
    cvec riemannian_grad(const cvec &v, const cvec &egrad);
    cvec retract(const cvec &v, const cvec &tangent_step);
    cvec transport(const cvec &v_new, const cvec &d_old);

    /// Riemannian conjugate gradient (Polak-Ribiere+, Armijo backtracking) over the
    /// constant-modulus set. Returns w* = v*/sqrt(N_t). `trace` receives G after every
    /// accepted step, starting with the initial value.
    cvec solve_w(const cvec &w_start, const ObjectiveContext &ctx, const LinkBudget &lb, const SolverSettings &settings,
                 std::vector<double> *trace = nullptr);

    double grad_phi_arr(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm);
    rvec grad_varphi(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm);

    /// Projected gradient ascent on phi_arr over [-phi_max, phi_max].
    double solve_phi_arr(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm,
                         const SolverSettings &settings);

    /// Best of `points` uniform grid values over [-phi_max, phi_max]; the current value is
    /// kept unless a grid point is strictly better.
    double scan_phi_arr(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm, int points);

    /// Greedy coordinate-wise grid search followed by box-projected gradient ascent.
    rvec solve_varphi(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm,
                      const SolverSettings &settings);

    /// Uniform grid of `points` values on [-bound, bound]; {0} for a single point.
    std::vector<double> symmetric_grid(double bound, int points);

    struct AoIteration
    {
        int iteration = 0;
        double beta_sm = 0.0;
        double before = 0.0;       // G at the start of the iteration
        double after_w = 0.0;      // after the beamformer block
        double after_phi = 0.0;    // after the array-rotation block
        double objective = 0.0;    // after the orientation block (end of iteration)
        double surrogate_min = 0.0; // min_k (R_k - R_e~) without smoothing
        double evaluated_secrecy = 0.0; // against the scene's true eavesdropper position
    };

    struct AoResult
    {
        BeamformingSolution solution;
        std::vector<AoIteration> trace;
        double final_beta_sm = 0.0;
        bool converged = false;
    };

    /// Deterministic feasible start: phases of the mean user channel, zero rotations.
    BeamformingSolution initial_solution(const SurrogateProblem &problem);

    /// Alternating optimization over (w, phi_arr, varphi) with a geometric smoothing schedule.
    /// Throws std::invalid_argument for an infeasible start.
    AoResult ao_solve(const SurrogateProblem &problem, const SolverSettings &settings, const BeamformingSolution &init,
                      const BlockMask &mask = {});
}
