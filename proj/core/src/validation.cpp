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

#include "rasec/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/Dense>

#include "rasec/random.hpp"

namespace rasec
{
    namespace
    {
        constexpr std::uint64_t validation_stream = 0x76616c;

        cvec random_unimodular(int n, Engine &rng)
        {
            std::uniform_real_distribution<double> phase(-pi, pi);
            cvec w(n);
            for (int i = 0; i < n; ++i)
                w[i] = std::polar(1.0 / std::sqrt(double(n)), phase(rng));
            return w;
        }

        RotationState random_rotation(const ArrayConfig &cfg, Engine &rng)
        {
            std::uniform_real_distribution<double> u(-0.8, 0.8);
            RotationState rot = RotationState::zeros(cfg.n_tx);
            rot.phi_arr = u(rng) * cfg.phi_arr_max;
            for (auto &v : rot.varphi)
                v = u(rng) * cfg.varphi_max;
            return rot;
        }

        ValidationCheck make_check(std::string name, double value, double threshold, std::string detail = {})
        {
            return {std::move(name), value, threshold, std::isfinite(value) && value <= threshold, std::move(detail)};
        }

        // noiseless echo mean a_r(theta) b^H(theta) X, stacked column-major
        cvec echo_mean(double theta, const cmat &x, const ArrayConfig &cfg)
        {
            const cmat m = receive_steering(theta, cfg.n_rx, cfg.spacing_in_wavelengths()) * sensing_response(theta, cfg).adjoint() * x;
            return Eigen::Map<const cvec>(m.data(), m.size());
        }
    }

    std::vector<ValidationCheck> check_gradients(const ExperimentConfig &cfg)
    {
        const TrialSetup setup = prepare_trial(cfg, 0);
        const SurrogateProblem problem(cfg.array, setup.scene, scheme_region(cfg, setup, Scheme::tra), cfg.link);
        Engine rng(derive_seed(setup.seed, {validation_stream}));
        BeamformingSolution sol{random_unimodular(cfg.array.n_tx, rng), random_rotation(cfg.array, rng)};
        const double beta = 20.0;
        const double h = 1e-6;

        std::vector<ValidationCheck> out;

        // beamformer: directional derivative along random tangent directions
        {
            const ObjectiveContext ctx = problem.context(sol.rot, beta);
            const cvec v = sol.w * std::sqrt(double(cfg.array.n_tx));
            const cvec rg = riemannian_grad(v, euclidean_grad_w(v, ctx, cfg.link));
            std::normal_distribution<double> nd;
            double worst = 0.0;
            for (int trial = 0; trial < 5; ++trial)
            {
                cvec d(v.size());
                for (auto &e : d)
                    e = {nd(rng), nd(rng)};
                d = riemannian_grad(v, d);
                auto g_at = [&](double t) {
                    cvec vt = v + t * d;
                    for (auto &e : vt)
                        e /= std::abs(e);
                    return softmin_objective(vt / std::sqrt(double(v.size())), ctx, cfg.link);
                };
                const double fd = (g_at(h) - g_at(-h)) / (2 * h);
                const double an = 2.0 * (rg.conjugate().cwiseProduct(d)).real().sum();
                worst = std::max(worst, std::abs(fd - an) / std::max(1e-12, std::abs(fd) + std::abs(an)));
            }
            out.push_back(make_check("gradient.beamformer", worst, 1e-4, "relative error of directional derivative"));
        }

        const auto grad = problem.rotation_gradient(sol.w, sol.rot, beta);
        {
            RotationState p = sol.rot, m = sol.rot;
            p.phi_arr += h;
            m.phi_arr -= h;
            const double fd = (problem.objective(sol.w, p, beta) - problem.objective(sol.w, m, beta)) / (2 * h);
            const double err = std::abs(fd - grad.d_phi_arr) / std::max(1e-12, std::abs(fd) + std::abs(grad.d_phi_arr));
            out.push_back(make_check("gradient.array_rotation", err, 1e-4, "relative error"));
        }
        {
            double worst = 0.0;
            for (int n = 0; n < cfg.array.n_tx; ++n)
            {
                RotationState p = sol.rot, m = sol.rot;
                p.varphi[n] += h;
                m.varphi[n] -= h;
                const double fd = (problem.objective(sol.w, p, beta) - problem.objective(sol.w, m, beta)) / (2 * h);
                const double an = grad.d_varphi[n];
                const double scale = std::max(1e-6 * grad.d_varphi.cwiseAbs().maxCoeff(), std::abs(fd) + std::abs(an));
                worst = std::max(worst, std::abs(fd - an) / std::max(1e-12, scale));
            }
            out.push_back(make_check("gradient.element_rotation", worst, 1e-4, "worst relative error over elements"));
        }
        return out;
    }

    ValidationCheck check_crb_closed_form(const ExperimentConfig &cfg, double theta)
    {
        const double range = cfg.eavesdropper.range;
        const cmat x = std::sqrt(cfg.sensing.sensing_power) * dft_codebook(cfg.sensing.n_beams, cfg.array.n_tx);
        const cplx beta = round_trip_gain(range, cfg.array.wavelength, cfg.sensing.rcs);
        const double h = 1e-6;
        const cvec q = echo_mean(theta, x, cfg.array);
        const cvec dq = (echo_mean(theta + h, x, cfg.array) - echo_mean(theta - h, x, cfg.array)) / (2 * h);

        // parameters (theta, Re beta, Im beta) for mean beta * q(theta)
        const double s2 = cfg.sensing.noise_power;
        Eigen::Matrix3d fim;
        const cplx cross = std::conj(beta) * dq.dot(q); // beta^* dq^H q
        fim(0, 0) = 2.0 / s2 * std::norm(beta) * dq.squaredNorm();
        fim(0, 1) = fim(1, 0) = 2.0 / s2 * cross.real();
        fim(0, 2) = fim(2, 0) = -2.0 / s2 * cross.imag();
        fim(1, 1) = fim(2, 2) = 2.0 / s2 * q.squaredNorm();
        fim(1, 2) = fim(2, 1) = 0.0;
        const double reference = fim.inverse()(0, 0);
        const double closed = crb(theta, range, cfg.sensing, cfg.array);
        const double rel = std::abs(closed - reference) / reference;
        char detail[128];
        std::snprintf(detail, sizeof detail, "closed form %.6g vs Fisher inverse %.6g rad^2", closed, reference);
        return make_check("crb.closed_form", rel, 1e-6, detail);
    }

    ValidationCheck check_estimator_efficiency(const ExperimentConfig &cfg, int n_realizations)
    {
        const auto &eav = cfg.eavesdropper;
        double se = 0.0;
        for (int i = 0; i < n_realizations; ++i)
        {
            const std::uint64_t seed =
                derive_seed(trial_seed(cfg.master_seed, i), {std::uint64_t(Stream::sensing_noise)});
            const EchoData echo = simulate_echoes(eav.azimuth, eav.range, cfg.sensing, cfg.array, seed);
            const double e = mle_estimate(echo, cfg.sensing, cfg.array) - eav.azimuth;
            se += e * e;
        }
        const double mse = se / n_realizations;
        const double bound = crb(eav.azimuth, eav.range, cfg.sensing, cfg.array);
        char detail[128];
        std::snprintf(detail, sizeof detail, "MSE %.6g, CRB %.6g rad^2 over %d realizations", mse, bound,
                      n_realizations);
        ValidationCheck c = make_check("estimator.mse_over_crb", mse / bound, 1.25, detail);
        c.passed = c.passed && mse / bound >= 0.8;
        return c;
    }

    std::vector<ValidationCheck> check_surrogate_bounds(const ExperimentConfig &cfg)
    {
        const TrialSetup setup = prepare_trial(cfg, 0);
        const SurrogateProblem problem(cfg.array, setup.scene, scheme_region(cfg, setup, Scheme::tra), cfg.link);
        Engine rng(derive_seed(setup.seed, {validation_stream, 1}));
        double jensen_gap = 0.0;  // most negative (surrogate - weighted rate)
        double bracket_gap = 0.0; // worst violation of min - log(K)/beta <= G <= min
        for (int i = 0; i < 20; ++i)
        {
            const cvec w = random_unimodular(cfg.array.n_tx, rng);
            const RotationState rot = random_rotation(cfg.array, rng);
            const double beta = 5.0 * std::pow(4.0, i % 5);
            const ObjectiveContext ctx = problem.context(rot, beta);
            jensen_gap = std::min(jensen_gap,
                                  surrogate_eav_rate(w, ctx, cfg.link) - weighted_eav_rate(w, ctx, cfg.link));
            const double g = softmin_objective(w, ctx, cfg.link);
            const double mn = surrogate_min_secrecy(w, ctx, cfg.link);
            const double lo = mn - std::log(double(ctx.user_channels.size())) / beta;
            bracket_gap = std::max({bracket_gap, g - mn, lo - g});
        }
        return {make_check("surrogate.jensen_upper_bound", -jensen_gap, 1e-12, "largest shortfall of the surrogate"),
                make_check("surrogate.softmin_bracket", bracket_gap, 1e-9, "largest bracket violation")};
    }

    std::vector<ValidationCheck> run_validation(const ExperimentConfig &cfg, int n_realizations)
    {
        std::vector<ValidationCheck> out = check_gradients(cfg);
        for (double deg : {-60.0, -20.0, 0.0, 35.0, 70.0})
        {
            ValidationCheck c = check_crb_closed_form(cfg, deg2rad(deg));
            char name[64];
            std::snprintf(name, sizeof name, "crb.closed_form@%+.0fdeg", deg);
            c.name = name;
            out.push_back(std::move(c));
        }
        out.push_back(check_estimator_efficiency(cfg, n_realizations));
        for (auto &c : check_surrogate_bounds(cfg))
            out.push_back(std::move(c));
        return out;
    }

    bool print_checks(std::ostream &out, const std::vector<ValidationCheck> &checks)
    {
        bool all = true;
        for (const auto &c : checks)
        {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%-4s %-32s value=%-12.6g bound=%-10.3g", c.passed ? "ok" : "FAIL",
                          c.name.c_str(), c.value, c.threshold);
            out << buf << c.detail << '\n';
            all = all && c.passed;
        }
        return all;
    }
}
