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

#include "rasec/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rasec
{
    void SolverSettings::validate() const
    {
        if (!(tol > 0.0) || max_iter_inner < 1 || max_iter_ao < 1 || max_backtracks < 1)
            throw std::invalid_argument("SolverSettings: tolerances and iteration limits must be positive.");
        if (!(armijo_c > 0.0) || !(armijo_c < 1.0))
            throw std::invalid_argument("SolverSettings: armijo_c must lie in (0, 1).");
        if (!(armijo_shrink > 0.0) || !(armijo_shrink < 1.0))
            throw std::invalid_argument("SolverSettings: armijo_shrink must lie in (0, 1).");
        if (!(beta_sm_init > 0.0) || !(beta_sm_growth > 1.0) || !(beta_sm_max >= beta_sm_init))
            throw std::invalid_argument("SolverSettings: need beta_sm_init > 0, growth > 1, max >= init.");
        if (grid_points_init < 1 || !(step_init > 0.0) || !(rotation_step > 0.0))
            throw std::invalid_argument("SolverSettings: grid points and step sizes must be positive.");
    }

    SurrogateProblem::SurrogateProblem(const ArrayConfig &cfg, Scene scene, SensingOutcome region, LinkBudget lb)
        : cfg_(cfg), scene_(std::move(scene)), region_(std::move(region)), lb_(lb)
    {
        cfg_.validate();
        if (scene_.users.empty())
            throw std::invalid_argument("SurrogateProblem: scene has no users.");
        if (region_.sampled_angles.empty() || region_.sampled_angles.size() != region_.weights.size())
            throw std::invalid_argument("SurrogateProblem: malformed uncertainty region.");
        targets_ = scene_.users;
        for (double theta : region_.sampled_angles)
            targets_.push_back({scene_.eavesdropper.range, theta});
    }

    ObjectiveContext SurrogateProblem::context(const RotationState &rot, double beta_sm) const
    {
        return build_context(cfg_, rot, scene_, region_, beta_sm);
    }

    const SurrogateProblem::ArrayGeometry &SurrogateProblem::geometry(double phi_arr) const
    {
        if (cache_.valid && cache_.phi_arr == phi_arr)
            return cache_;
        const int n_tx = cfg_.n_tx;
        cache_.phi_arr = phi_arr;
        cache_.rot_mat = rotation_matrix(phi_arr);
        cache_.rot_dot = rotation_matrix_derivative(phi_arr);
        cache_.dpos.resize(n_tx);
        for (int n = 0; n < n_tx; ++n)
            cache_.dpos[n] = cache_.rot_dot * vec2(ArrayConfig::position_index(n, n_tx) * cfg_.spacing, 0.0);
        cache_.coeff.resize(targets_.size() * n_tx);
        cache_.dir.resize(targets_.size() * n_tx);
        cache_.dist.resize(targets_.size() * n_tx);
        cache_.dphase.resize(targets_.size() * n_tx);
        const auto pos = element_positions(cfg_, phi_arr);
        const double scale = 2.0 * pi * cfg_.spacing_in_wavelengths();
        const double norm = 1.0 / std::sqrt(double(n_tx));
        for (std::size_t t = 0; t < targets_.size(); ++t)
        {
            const auto &target = targets_[t];
            const vec2 q = target.cartesian();
            const cplx beta = path_gain(target.range, cfg_.wavelength);
            const double sin_rel = std::sin(target.azimuth - phi_arr);
            const double cos_rel = std::cos(target.azimuth - phi_arr);
            for (int n = 0; n < n_tx; ++n)
            {
                const vec2 diff = q - pos[n];
                const double r = diff.norm();
                cache_.dist[t * n_tx + n] = r;
                cache_.dir[t * n_tx + n] = diff / r;
                cache_.dphase[t * n_tx + n] = scale * ArrayConfig::position_index(n, n_tx) * cos_rel;
                cache_.coeff[t * n_tx + n] =
                    beta * std::polar(norm, scale * ArrayConfig::position_index(n, n_tx) * sin_rel);
            }
        }
        cache_.valid = true;
        return cache_;
    }

    double SurrogateProblem::objective(const cvec &w, const RotationState &rot, double beta_sm) const
    {
        if (!(beta_sm > 0.0))
            throw std::invalid_argument("objective: smoothing factor must be positive.");
        const int n_tx = cfg_.n_tx;
        if (w.size() != n_tx || rot.varphi.size() != n_tx)
            throw std::invalid_argument("objective: dimension mismatch.");
        const ArrayGeometry &geo = geometry(rot.phi_arr);
        const double p = cfg_.directivity_p;
        const double sqrt_g0 = std::sqrt(cfg_.boresight_gain());

        std::array<vec2, 64> small_bore;
        std::vector<vec2> large_bore;
        vec2 *bore = small_bore.data();
        if (n_tx > int(small_bore.size()))
        {
            large_bore.resize(n_tx);
            bore = large_bore.data();
        }
        for (int n = 0; n < n_tx; ++n)
            bore[n] = geo.rot_mat * vec2(std::sin(rot.varphi[n]), std::cos(rot.varphi[n]));

        auto response = [&](std::size_t t) {
            cplx s = 0.0;
            for (int n = 0; n < n_tx; ++n)
            {
                const double x = bore[n].dot(geo.dir[t * n_tx + n]);
                if (x <= 0.0)
                    continue;
                const double amp = sqrt_g0 * (p == 1.0 ? x : std::pow(x, p));
                s += std::conj(amp * geo.coeff[t * n_tx + n]) * w[n];
            }
            return s;
        };

        const double gamma = lb_.gamma();
        const std::size_t k_users = scene_.users.size();
        double leak = 0.0;
        for (std::size_t m = 0; m < region_.weights.size(); ++m)
            leak += region_.weights[m] * std::norm(response(k_users + m));
        const double eav_rate = std::log2(1.0 + gamma * std::max(leak, 0.0));

        std::array<double, 64> small_c;
        std::vector<double> c(k_users > small_c.size() ? k_users : 0);
        double *cp = c.empty() ? small_c.data() : c.data();
        for (std::size_t k = 0; k < k_users; ++k)
            cp[k] = std::log2(1.0 + gamma * std::norm(response(k))) - eav_rate;
        return softmin(std::span<const double>(cp, k_users), beta_sm);
    }

    SurrogateProblem::RotationGradient SurrogateProblem::rotation_gradient(const cvec &w, const RotationState &rot,
                                                                           double beta_sm) const
    {
        const int n_tx = cfg_.n_tx;
        if (w.size() != n_tx || rot.varphi.size() != n_tx)
            throw std::invalid_argument("rotation_gradient: dimension mismatch.");
        const ArrayGeometry &geo = geometry(rot.phi_arr);
        const double p = cfg_.directivity_p;
        const double sqrt_g0 = std::sqrt(cfg_.boresight_gain());
        const double gamma = lb_.gamma();
        const double scale = 2.0 * gamma / std::log(2.0);

        std::vector<vec2> bore(n_tx), bore_darr(n_tx), bore_dvar(n_tx);
        for (int n = 0; n < n_tx; ++n)
        {
            const double sn = std::sin(rot.varphi[n]), cs = std::cos(rot.varphi[n]);
            bore[n] = geo.rot_mat * vec2(sn, cs);
            bore_darr[n] = geo.rot_dot * vec2(sn, cs);
            bore_dvar[n] = geo.rot_mat * vec2(cs, -sn);
        }

        // s = h^H w and the partials of |s|^2 / 2 for one target
        struct Partials
        {
            cplx s;
            double d_arr;
            rvec d_var;
        };
        auto partials = [&](std::size_t t) {
            Partials out{0.0, 0.0, rvec::Zero(n_tx)};
            std::vector<cplx> dvar(n_tx, 0.0);
            cplx ds_arr = 0.0;
            for (int n = 0; n < n_tx; ++n)
            {
                const std::size_t i = t * n_tx + n;
                const vec2 &u = geo.dir[i];
                const double x = bore[n].dot(u);
                if (x <= 0.0)
                    continue;
                const double xp = (p == 1.0 ? x : std::pow(x, p));
                const double dxp = (p == 0.0) ? 0.0 : (p == 1.0 ? 1.0 : p * std::pow(x, p - 1.0));
                const cplx c = sqrt_g0 * geo.coeff[i];
                // boresight rotation plus the change of the exact direction
                const double zeta =
                    bore_darr[n].dot(u) - (bore[n].dot(geo.dpos[n]) - x * u.dot(geo.dpos[n])) / geo.dist[i];
                const cplx h = c * xp;
                const cplx dh_arr = c * cplx(dxp * zeta, -geo.dphase[i] * xp);
                const cplx dh_var = c * (dxp * bore_dvar[n].dot(u));
                out.s += std::conj(h) * w[n];
                ds_arr += std::conj(dh_arr) * w[n];
                dvar[n] = std::conj(dh_var) * w[n];
            }
            out.d_arr = (std::conj(out.s) * ds_arr).real();
            for (int n = 0; n < n_tx; ++n)
                out.d_var[n] = (std::conj(out.s) * dvar[n]).real();
            return out;
        };

        const std::size_t k_users = scene_.users.size();
        double leak = 0.0, leak_darr = 0.0;
        rvec leak_dvar = rvec::Zero(n_tx);
        for (std::size_t m = 0; m < region_.weights.size(); ++m)
        {
            const Partials pm = partials(k_users + m);
            const double mu = region_.weights[m];
            leak += mu * std::norm(pm.s);
            leak_darr += mu * pm.d_arr;
            leak_dvar += mu * pm.d_var;
        }
        const double leak_rate = std::log2(1.0 + gamma * leak);

        std::vector<double> c(k_users), d_arr(k_users);
        std::vector<rvec> d_var(k_users);
        for (std::size_t k = 0; k < k_users; ++k)
        {
            const Partials pk = partials(k);
            const double denom = 1.0 + gamma * std::norm(pk.s);
            c[k] = std::log2(denom) - leak_rate;
            d_arr[k] = scale * pk.d_arr / denom;
            d_var[k] = scale * pk.d_var / denom;
        }

        std::vector<double> omega;
        RotationGradient out;
        out.value = softmin(c, beta_sm, &omega);
        const double leak_denom = 1.0 + gamma * leak;
        out.d_phi_arr = -scale * leak_darr / leak_denom;
        out.d_varphi = -scale * leak_dvar / leak_denom;
        for (std::size_t k = 0; k < k_users; ++k)
        {
            out.d_phi_arr += omega[k] * d_arr[k];
            out.d_varphi += omega[k] * d_var[k];
        }
        return out;
    }

    // ------------------------------------------------------------------------
    // Beamformer block

    cvec euclidean_grad_w(const cvec &v, const ObjectiveContext &ctx, const LinkBudget &lb)
    {
        const double n = double(v.size());
        const double g = lb.gamma() / n;
        const double scale = g / std::log(2.0);

        const cvec sv = ctx.leakage_covariance * v;
        const double quad = std::max(v.dot(sv).real(), 0.0);
        const double leak_rate = std::log2(1.0 + g * quad);

        std::vector<double> c(ctx.user_channels.size());
        std::vector<cplx> proj(c.size());
        for (std::size_t k = 0; k < c.size(); ++k)
        {
            proj[k] = ctx.user_channels[k].dot(v);
            c[k] = std::log2(1.0 + g * std::norm(proj[k])) - leak_rate;
        }
        std::vector<double> omega;
        softmin(c, ctx.beta_sm, &omega);

        cvec grad = (-scale / (1.0 + g * quad)) * sv;
        for (std::size_t k = 0; k < c.size(); ++k)
            grad += (omega[k] * scale / (1.0 + g * std::norm(proj[k])) * proj[k]) * ctx.user_channels[k];
        return grad;
    }

    cvec riemannian_grad(const cvec &v, const cvec &egrad)
    {
        return transport(v, egrad);
    }

    cvec retract(const cvec &v, const cvec &tangent_step)
    {
        cvec out(v.size());
        for (Eigen::Index n = 0; n < v.size(); ++n)
        {
            const cplx z = v[n] + tangent_step[n];
            const double r = std::abs(z);
            out[n] = (r > 0.0) ? z / r : v[n];
        }
        return out;
    }

    cvec transport(const cvec &v_new, const cvec &d_old)
    {
        cvec out(d_old.size());
        for (Eigen::Index n = 0; n < d_old.size(); ++n)
            out[n] = d_old[n] - (d_old[n] * std::conj(v_new[n])).real() * v_new[n];
        return out;
    }

    // Real inner product <a, b> = Re{a^H b} on C^N viewed as R^2N.
    static double real_inner(const cvec &a, const cvec &b)
    {
        return a.dot(b).real();
    }

    cvec solve_w(const cvec &w_start, const ObjectiveContext &ctx, const LinkBudget &lb, const SolverSettings &settings,
                 std::vector<double> *trace)
    {
        const double root_n = std::sqrt(double(w_start.size()));
        auto to_w = [root_n](const cvec &v) -> cvec { return v / root_n; };
        auto value = [&](const cvec &v) { return softmin_objective(to_w(v), ctx, lb); };

        cvec v = retract(w_start * root_n, cvec::Zero(w_start.size()));
        double f = value(v);
        cvec grad = riemannian_grad(v, euclidean_grad_w(v, ctx, lb));
        cvec dir = grad;
        if (trace)
            trace->assign(1, f);

        for (int t = 0; t < settings.max_iter_inner; ++t)
        {
            const double grad_norm2 = grad.squaredNorm();
            if (grad_norm2 < 1e-20)
                break; // stationary

            // directional derivative of G along d is 2 Re{egrad^H d} = 2 <grad, d> for tangent d
            double slope = 2.0 * real_inner(grad, dir);
            if (!(slope > 0.0))
            {
                dir = grad;
                slope = 2.0 * grad_norm2;
            }

            cvec v_new;
            double f_new = f;
            bool accepted = false;
            for (int attempt = 0; attempt < 2 && !accepted; ++attempt)
            {
                double step = settings.step_init / dir.norm();
                for (int bt = 0; bt < settings.max_backtracks; ++bt)
                {
                    v_new = retract(v, step * dir);
                    f_new = value(v_new);
                    if (f_new >= f + settings.armijo_c * step * slope)
                    {
                        accepted = true;
                        break;
                    }
                    step *= settings.armijo_shrink;
                }
                if (!accepted)
                {
                    if (dir == grad)
                        break;
                    dir = grad; // fall back to steepest ascent once
                    slope = 2.0 * grad_norm2;
                }
            }
            if (!accepted)
                break;

            const double moved = (v_new - v).norm();
            const cvec grad_new = riemannian_grad(v_new, euclidean_grad_w(v_new, ctx, lb));
            const cvec dir_moved = transport(v_new, dir);
            const cvec grad_moved = transport(v_new, grad);
            const double kappa = std::max(0.0, real_inner(grad_new, grad_new - grad_moved) / grad_norm2);

            dir = grad_new + kappa * dir_moved;
            grad = grad_new;
            v = v_new;
            f = f_new;
            if (trace)
                trace->push_back(f);
            if (moved <= settings.tol)
                break;
        }
        return to_w(v);
    }

    // ------------------------------------------------------------------------
    // Rotation blocks

    double grad_phi_arr(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm)
    {
        return problem.rotation_gradient(sol.w, sol.rot, beta_sm).d_phi_arr;
    }

    rvec grad_varphi(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm)
    {
        return problem.rotation_gradient(sol.w, sol.rot, beta_sm).d_varphi;
    }

    std::vector<double> symmetric_grid(double bound, int points)
    {
        if (points < 1)
            throw std::invalid_argument("symmetric_grid: need at least one point.");
        if (points == 1)
            return {0.0};
        std::vector<double> grid(points);
        for (int i = 0; i < points; ++i)
            grid[i] = bound * (2.0 * i - (points - 1)) / double(points - 1);
        return grid;
    }

    namespace
    {
        // Box-constrained gradient ascent on x in [-bound, bound]^n with Armijo backtracking.
        // `value(x)` returns the objective, `gradient(x)` its gradient. The trial step is the
        // Barzilai-Borwein estimate from the last two iterates when the observed curvature is
        // concave, otherwise twice the last accepted step; plain doubling crawls along the
        // shallow ridges this objective has.
        template <class Value, class Gradient>
        rvec box_ascent(rvec x, double bound, const SolverSettings &settings, Value &&value, Gradient &&gradient)
        {
            x = x.cwiseMax(-bound).cwiseMin(bound);
            const Eigen::Index n = x.size();
            double f = value(x);
            rvec g = gradient(x);
            rvec x_prev, g_prev;
            double eta = -1.0;
            for (int it = 0; it < settings.max_iter_inner; ++it)
            {
                // components pushing against an active bound cannot move; left in, they
                // dominate the step scaling and stall the free coordinates
                rvec d = g;
                for (Eigen::Index i = 0; i < n; ++i)
                    if ((x[i] >= bound && d[i] > 0.0) || (x[i] <= -bound && d[i] < 0.0))
                        d[i] = 0.0;
                const double d_norm = d.norm();
                if (d_norm < settings.tol)
                    break;

                double step = (eta > 0.0) ? 2.0 * eta : settings.rotation_step / d_norm;
                if (x_prev.size() == n)
                {
                    const rvec s = x - x_prev;
                    const double curvature = -s.dot(g - g_prev);
                    if (curvature > 0.0)
                        step = s.squaredNorm() / curvature;
                }
                step = std::min(step, 2.0 * bound / d_norm + 1e-300);

                bool accepted = false;
                rvec x_new = x;
                double f_new = f;
                for (int bt = 0; bt < settings.max_backtracks; ++bt)
                {
                    x_new = (x + step * d).cwiseMax(-bound).cwiseMin(bound);
                    const rvec delta = x_new - x;
                    if (delta.isZero(0.0))
                        break;
                    f_new = value(x_new);
                    if (f_new >= f + settings.armijo_c * g.dot(delta))
                    {
                        accepted = true;
                        break;
                    }
                    step *= settings.armijo_shrink;
                }
                if (!accepted)
                    break;
                eta = step;
                const double gain = f_new - f;
                x_prev = x;
                g_prev = g;
                x = x_new;
                g = gradient(x);
                f = f_new;
                if (gain <= settings.tol * 1e-3)
                    break;
            }
            return x;
        }
    }

    double solve_phi_arr(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm,
                         const SolverSettings &settings)
    {
        const double bound = problem.config().phi_arr_max;
        RotationState rot = sol.rot;
        auto value = [&](const rvec &x) {
            rot.phi_arr = x[0];
            return problem.objective(sol.w, rot, beta_sm);
        };
        auto gradient = [&](const rvec &x) {
            rot.phi_arr = x[0];
            return rvec::Constant(1, problem.rotation_gradient(sol.w, rot, beta_sm).d_phi_arr);
        };
        const double x = box_ascent(rvec::Constant(1, sol.rot.phi_arr), bound, settings, value, gradient)[0];
        assert(std::abs(x) <= bound);
        return x;
    }

    double scan_phi_arr(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm, int points)
    {
        RotationState rot = sol.rot;
        double best_x = std::clamp(rot.phi_arr, -problem.config().phi_arr_max, problem.config().phi_arr_max);
        rot.phi_arr = best_x;
        double best_f = problem.objective(sol.w, rot, beta_sm);
        for (double x : symmetric_grid(problem.config().phi_arr_max, points))
        {
            rot.phi_arr = x;
            const double f = problem.objective(sol.w, rot, beta_sm);
            if (f > best_f)
            {
                best_f = f;
                best_x = x;
            }
        }
        return best_x;
    }

    rvec solve_varphi(const BeamformingSolution &sol, const SurrogateProblem &problem, double beta_sm,
                      const SolverSettings &settings)
    {
        const double bound = problem.config().varphi_max;
        const int n_tx = problem.config().n_tx;
        RotationState rot = sol.rot;
        rot.varphi = rot.varphi.cwiseMax(-bound).cwiseMin(bound);
        double f = problem.objective(sol.w, rot, beta_sm);

        // Stage 1: one greedy sweep over the elements. A grid value replaces the current
        // angle only if it is strictly better; exact ties go to the smaller |angle|.
        const auto grid = symmetric_grid(bound, settings.grid_points_init);
        for (int n = 0; n < n_tx; ++n)
        {
            double best_x = rot.varphi[n];
            double best_f = f;
            const double current = rot.varphi[n];
            for (double x : grid)
            {
                if (x == current)
                    continue;
                rot.varphi[n] = x;
                const double fx = problem.objective(sol.w, rot, beta_sm);
                if (fx > best_f || (fx == best_f && std::abs(x) < std::abs(best_x)))
                {
                    best_f = fx;
                    best_x = x;
                }
            }
            rot.varphi[n] = best_x;
            f = best_f;
        }

        // Stage 2: box-projected gradient ascent with Armijo backtracking
        auto value = [&](const rvec &x) {
            RotationState r = rot;
            r.varphi = x;
            return problem.objective(sol.w, r, beta_sm);
        };
        auto gradient = [&](const rvec &x) {
            RotationState r = rot;
            r.varphi = x;
            return problem.rotation_gradient(sol.w, r, beta_sm).d_varphi;
        };
        rot.varphi = box_ascent(rot.varphi, bound, settings, value, gradient);
        assert(rot.feasible(problem.config()));
        return rot.varphi;
    }

    // ------------------------------------------------------------------------
    // Alternating optimization

    BeamformingSolution initial_solution(const SurrogateProblem &problem)
    {
        const auto &cfg = problem.config();
        BeamformingSolution sol{cvec(cfg.n_tx), RotationState::zeros(cfg.n_tx)};
        const RotatedArray array(cfg, sol.rot);
        cvec mean = cvec::Zero(cfg.n_tx);
        for (const auto &u : problem.scene().users)
            mean += array.channel(u);
        mean /= double(problem.scene().users.size());
        const double amp = 1.0 / std::sqrt(double(cfg.n_tx));
        for (int n = 0; n < cfg.n_tx; ++n)
            sol.w[n] = (std::abs(mean[n]) > 0.0) ? std::polar(amp, std::arg(mean[n])) : cplx(amp, 0.0);
        return sol;
    }

    static void check_start(const BeamformingSolution &init, const ArrayConfig &cfg)
    {
        if (init.w.size() != cfg.n_tx)
            throw std::invalid_argument("ao_solve: beamformer length " + std::to_string(init.w.size()) +
                                        " does not match n_tx = " + std::to_string(cfg.n_tx));
        const double target = 1.0 / std::sqrt(double(cfg.n_tx));
        for (int n = 0; n < cfg.n_tx; ++n)
            if (std::abs(std::abs(init.w[n]) - target) > 1e-9)
                throw std::invalid_argument("ao_solve: constant-modulus constraint |w_n| = 1/sqrt(N_t) violated at n = " +
                                            std::to_string(n));
        init.rot.check_feasible(cfg);
    }

    AoResult ao_solve(const SurrogateProblem &problem, const SolverSettings &settings, const BeamformingSolution &init,
                      const BlockMask &mask)
    {
        settings.validate();
        check_start(init, problem.config());

        AoResult result;
        result.solution = init;
        auto &sol = result.solution;
        const auto &cfg = problem.config();

        double beta = settings.beta_sm_init;
        double previous = std::numeric_limits<double>::quiet_NaN();
        for (int t = 0; t < settings.max_iter_ao; ++t)
        {
            AoIteration rec;
            rec.iteration = t + 1;
            rec.beta_sm = beta;
            rec.before = problem.objective(sol.w, sol.rot, beta);

            const ObjectiveContext ctx = problem.context(sol.rot, beta);
            sol.w = solve_w(sol.w, ctx, problem.link(), settings);
            rec.after_w = problem.objective(sol.w, sol.rot, beta);

            if (mask.exhaustive_phi_arr)
                sol.rot.phi_arr = scan_phi_arr(sol, problem, beta, mask.exhaustive_points);
            else if (mask.optimize_phi_arr)
                sol.rot.phi_arr = solve_phi_arr(sol, problem, beta, settings);
            rec.after_phi = (mask.optimize_phi_arr || mask.exhaustive_phi_arr) ? problem.objective(sol.w, sol.rot, beta)
                                                                               : rec.after_w;

            if (mask.optimize_varphi)
                sol.rot.varphi = solve_varphi(sol, problem, beta, settings);
            const ObjectiveContext end_ctx = problem.context(sol.rot, beta);
            rec.objective = softmin_objective(sol.w, end_ctx, problem.link());
            rec.surrogate_min = surrogate_min_secrecy(sol.w, end_ctx, problem.link());
            rec.evaluated_secrecy =
                evaluate_true_secrecy(sol.w, sol.rot, cfg, problem.scene(), problem.scene().eavesdropper, problem.link());
            result.trace.push_back(rec);
            result.final_beta_sm = beta;

            const bool done = std::isfinite(previous) && std::abs(rec.objective - previous) <= settings.tol;
            previous = rec.objective;
            beta = std::min(beta * settings.beta_sm_growth, settings.beta_sm_max);
            if (done)
            {
                result.converged = true;
                break;
            }
        }
        return result;
    }
}
