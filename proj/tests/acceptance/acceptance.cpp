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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rasec/experiment.hpp"
#include "rasec/random.hpp"
#include "rasec/report.hpp"

using namespace rasec;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    double mean_of(const std::vector<double> &v)
    {
        return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    }

    // mean min-secrecy per scheme (and sweep value), trials in record order
    std::map<std::pair<double, Scheme>, std::vector<double>> by_scheme(const std::vector<ResultRecord> &records)
    {
        std::map<std::pair<double, Scheme>, std::vector<double>> out;
        for (const auto &r : records)
            out[{r.sweep_value, r.scheme}].push_back(r.min_secrecy);
        return out;
    }

    std::vector<double> paired_gap(const std::vector<double> &a, const std::vector<double> &b)
    {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            d[i] = a[i] - b[i];
        return d;
    }

    // smallest |boresight . link direction| over every element and target
    double clip_margin(const SurrogateProblem &problem, const RotationState &rot)
    {
        const auto &cfg = problem.config();
        std::vector<PolarPosition> targets = problem.scene().users;
        for (double a : problem.region().sampled_angles)
            targets.push_back({problem.scene().eavesdropper.range, a});
        double margin = 1e300;
        for (int n = 0; n < cfg.n_tx; ++n)
        {
            const double m = ArrayConfig::position_index(n, cfg.n_tx) * cfg.spacing;
            const double cx = std::cos(rot.phi_arr) * m, cy = -std::sin(rot.phi_arr) * m;
            const double a = rot.phi_arr + rot.varphi[n];
            for (const auto &t : targets)
            {
                const double dx = t.range * std::sin(t.azimuth) - cx, dy = t.range * std::cos(t.azimuth) - cy;
                margin = std::min(margin, std::abs(std::sin(a) * dx + std::cos(a) * dy) / std::hypot(dx, dy));
            }
        }
        return margin;
    }

    Outcome gradients()
    {
        const auto cfg = ExperimentConfig::defaults();
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> ua(-cfg.array.phi_arr_max, cfg.array.phi_arr_max);
        std::uniform_real_distribution<double> uv(-cfg.array.varphi_max, cfg.array.varphi_max);
        std::uniform_real_distribution<double> utheta(deg2rad(40.0), deg2rad(60.0)), ulogcrb(-6.0, -3.0);
        std::uniform_int_distribution<int> uiter(0, 40);
        const double h = 1e-6;

        double worst_w = 0.0, worst_arr = 0.0, worst_var = 0.0;
        int points = 0, excluded = 0;
        for (int draw = 0; points < 100; ++draw)
        {
            const Scene scene = generate_scene(cfg, trial_seed(7, draw));
            const auto region = uncertainty_region(utheta(rng), std::pow(10.0, ulogcrb(rng)), cfg.n_angle_samples);
            const SurrogateProblem problem(cfg.array, scene, region, cfg.link);
            const double beta = std::min(cfg.solver.beta_sm_max,
                                         cfg.solver.beta_sm_init * std::pow(cfg.solver.beta_sm_growth, uiter(rng)));
            BeamformingSolution sol{oracle::to_eigen(oracle::random_unimodular(cfg.array.n_tx, rng)),
                                    RotationState::zeros(cfg.array.n_tx)};
            sol.rot.phi_arr = ua(rng);
            for (auto &v : sol.rot.varphi)
                v = uv(rng);
            if (clip_margin(problem, sol.rot) < 1e-4)
            {
                ++excluded;
                continue;
            }
            ++points;

            // beamformer gradient, taken in the unnormalized variable v = sqrt(N) w
            const auto ctx = problem.context(sol.rot, beta);
            const double root_n = std::sqrt(double(cfg.array.n_tx));
            const cvec v = sol.w * root_n;
            const cvec g = euclidean_grad_w(v, ctx, cfg.link);
            double err = 0.0, scale = 0.0;
            for (int n = 0; n < v.size(); ++n)
                for (const cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)})
                {
                    cvec a = v, b = v;
                    a[n] += h * dir;
                    b[n] -= h * dir;
                    const double fd = (softmin_objective(a / root_n, ctx, cfg.link) -
                                       softmin_objective(b / root_n, ctx, cfg.link)) / (2 * h);
                    err = std::max(err, std::abs(2.0 * (std::conj(g[n]) * dir).real() - fd));
                    scale = std::max(scale, std::abs(fd));
                }
            worst_w = std::max(worst_w, err / scale);

            RotationState a = sol.rot, b = sol.rot;
            a.phi_arr += h;
            b.phi_arr -= h;
            const double fd_arr = (problem.objective(sol.w, a, beta) - problem.objective(sol.w, b, beta)) / (2 * h);
            worst_arr = std::max(worst_arr, std::abs(grad_phi_arr(sol, problem, beta) - fd_arr) / std::abs(fd_arr));

            const rvec gv = grad_varphi(sol, problem, beta);
            err = scale = 0.0;
            for (int n = 0; n < cfg.array.n_tx; ++n)
            {
                RotationState c = sol.rot, d = sol.rot;
                c.varphi[n] += h;
                d.varphi[n] -= h;
                const double fd = (problem.objective(sol.w, c, beta) - problem.objective(sol.w, d, beta)) / (2 * h);
                err = std::max(err, std::abs(gv[n] - fd));
                scale = std::max(scale, std::abs(fd));
            }
            worst_var = std::max(worst_var, err / scale);
        }
        const double tol = 1e-5;
        return {worst_w <= tol && worst_arr <= tol && worst_var <= tol,
                fmt("max rel err w %.2e, phi_arr %.2e, varphi %.2e over %d points (%d near clip excluded)", worst_w,
                    worst_arr, worst_var, points, excluded)};
    }

    Outcome crb_validity()
    {
        const auto cfg = ExperimentConfig::defaults();
        const double theta = cfg.eavesdropper.azimuth, range = cfg.eavesdropper.range;
        const double bound = crb(theta, range, cfg.sensing, cfg.array);
        const double sd = std::sqrt(bound);

        const int trials = 1000;
        double sq = 0.0, sq_inlier = 0.0;
        int inside = 0;
        for (int t = 0; t < trials; ++t)
        {
            const auto seed = derive_seed(trial_seed(cfg.master_seed, t), {std::uint64_t(Stream::sensing_noise)});
            const auto echo = simulate_echoes(theta, range, cfg.sensing, cfg.array, seed);
            const double e = mle_estimate(echo, cfg.sensing, cfg.array) - theta;
            sq += e * e;
            if (std::abs(e) <= 3.0 * sd)
            {
                ++inside;
                sq_inlier += e * e;
            }
        }
        const double ratio = sq / trials / bound;
        const double coverage = double(inside) / trials;
        const double inlier_ratio = inside ? sq_inlier / inside / bound : 0.0;

        std::mt19937_64 rng(202);
        std::uniform_real_distribution<double> ua(deg2rad(-80.0), deg2rad(80.0));
        const cmat x = std::sqrt(cfg.sensing.sensing_power) * dft_codebook(cfg.sensing.n_beams, cfg.array.n_tx);
        double worst_fim = 0.0;
        for (int i = 0; i < 20; ++i)
        {
            const double a = ua(rng);
            const double closed = crb(a, range, cfg.sensing, cfg.array);
            worst_fim = std::max(worst_fim, std::abs(closed - oracle::fim_crb(a, range, cfg.sensing, cfg.array, x)) / closed);
        }
        return {ratio >= 0.5 && ratio <= 2.0 && coverage >= 0.99 && worst_fim <= 1e-4,
                fmt("MSE/CRB %.3f (need [0.5, 2]), within 3 sd %.1f%% (need 99%%), inlier MSE/CRB %.3f, "
                    "FIM oracle max rel err %.2e",
                    ratio, 100.0 * coverage, inlier_ratio, worst_fim)};
    }

    Outcome surrogate_inequalities()
    {
        const auto cfg = ExperimentConfig::defaults();
        std::mt19937_64 rng(303);
        std::uniform_real_distribution<double> ua(-cfg.array.phi_arr_max, cfg.array.phi_arr_max);
        std::uniform_real_distribution<double> uv(-cfg.array.varphi_max, cfg.array.varphi_max);
        std::uniform_real_distribution<double> utheta(deg2rad(30.0), deg2rad(70.0)), ulogcrb(-7.0, -2.0);
        std::uniform_real_distribution<double> ulogbeta(0.0, 4.0), uc(-5.0, 15.0);
        std::uniform_int_distribution<int> um(2, 31), uk(1, 6);

        int jensen_bad = 0;
        double jensen_worst = 1e300;
        for (int i = 0; i < 1000; ++i)
        {
            const Scene scene = generate_scene(cfg, trial_seed(11, i));
            const auto region = uncertainty_region(utheta(rng), std::pow(10.0, ulogcrb(rng)), um(rng));
            RotationState rot = RotationState::zeros(cfg.array.n_tx);
            rot.phi_arr = ua(rng);
            for (auto &v : rot.varphi)
                v = uv(rng);
            const auto ctx = build_context(cfg.array, rot, scene, region, 10.0);
            const cvec w = oracle::to_eigen(oracle::random_unimodular(cfg.array.n_tx, rng)) /
                           std::sqrt(double(cfg.array.n_tx));
            const double slack = surrogate_eav_rate(w, ctx, cfg.link) - weighted_eav_rate(w, ctx, cfg.link);
            jensen_worst = std::min(jensen_worst, slack);
            jensen_bad += slack < -1e-12;
        }

        int sandwich_bad = 0;
        for (int i = 0; i < 1000; ++i)
        {
            std::vector<double> c(uk(rng));
            for (auto &x : c)
                x = uc(rng);
            const double beta = std::pow(10.0, ulogbeta(rng));
            const double s = softmin(c, beta);
            const double lo = *std::min_element(c.begin(), c.end());
            const double upper = lo, lower = lo - std::log(double(c.size())) / beta;
            sandwich_bad += s > upper + 1e-12 || s < lower - 1e-12;
        }
        return {jensen_bad == 0 && sandwich_bad == 0,
                fmt("Jensen violations %d/1000 (min slack %.3e), softmin sandwich violations %d/1000", jensen_bad,
                    jensen_worst, sandwich_bad)};
    }

    Outcome ao_convergence()
    {
        const auto cfg = ExperimentConfig::defaults();
        int monotone = 0, plateau = 0, plateau_at_30 = 0;
        double worst_drop = 0.0;
        for (int t = 0; t < 50; ++t)
        {
            const auto setup = prepare_trial(cfg, t);
            AoResult ao;
            run_scheme(cfg, setup, Scheme::tra, nullptr, &ao);
            bool mono = true;
            for (const auto &it : ao.trace)
            {
                const double drop = std::max({it.before - it.after_w, it.after_w - it.after_phi,
                                              it.after_phi - it.objective});
                worst_drop = std::max(worst_drop, drop);
                mono = mono && drop <= 1e-9;
            }
            monotone += mono;

            // plateaued: stopped before iteration 30, or every step from 30 on moves less than 1e-4
            const auto &tr = ao.trace;
            bool flat = true;
            for (std::size_t i = 29; i < tr.size(); ++i)
                flat = flat && std::abs(tr[i].objective - tr[i - 1].objective) < 1e-4;
            plateau += flat;
            plateau_at_30 += tr.size() < 30 || std::abs(tr[29].objective - tr[28].objective) < 1e-4;
        }
        return {monotone == 50 && plateau >= 45,
                fmt("monotone %d/50 (largest in-iteration drop %.2e), plateaued by iteration 30 in %d/50 "
                    "(need 45; |delta| < 1e-4 at iteration 30 alone: %d/50)",
                    monotone, worst_drop, plateau, plateau_at_30)};
    }

    Outcome scheme_ordering(const std::vector<ResultRecord> &records)
    {
        auto s = by_scheme(records);
        const auto &tra = s[{0.0, Scheme::tra}], &era = s[{0.0, Scheme::era}], &gra = s[{0.0, Scheme::gra}],
                   &fpa = s[{0.0, Scheme::fpa}];
        const double m_tra = mean_of(tra), m_era = mean_of(era), m_gra = mean_of(gra), m_fpa = mean_of(fpa);

        const auto d = paired_gap(tra, fpa);
        std::mt19937_64 rng(505);
        std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
        std::vector<double> boot(10000);
        for (auto &b : boot)
        {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i)
                acc += d[pick(rng)];
            b = acc / double(d.size());
        }
        std::sort(boot.begin(), boot.end());
        const double lower = boot[std::size_t(0.025 * boot.size())];
        return {tra.size() == 200 && m_tra >= m_era && m_tra >= m_gra && m_era >= m_fpa && m_gra >= m_fpa && lower > 0.0,
                fmt("mean TRA %.4f, ERA %.4f, GRA %.4f, FPA %.4f; TRA-FPA bootstrap 2.5th percentile %.4f", m_tra, m_era,
                    m_gra, m_fpa, lower)};
    }

    ConfigMap study_map(int trials, const std::string &key, const std::string &values)
    {
        ConfigMap map;
        map.set("experiment.n_trials", std::to_string(trials));
        map.set("experiment.schemes", "TRA-ABF, TRA-ABF-PE");
        map.set("experiment.sweep_key", key);
        map.set("experiment.sweep_values", values);
        return map;
    }

    Outcome robustness_value()
    {
        auto s = by_scheme(run_sweep(study_map(200, "link.pt_dbm", "0, 20")));
        const double gap0 = mean_of(paired_gap(s[{0.0, Scheme::tra}], s[{0.0, Scheme::tra_pe}]));
        const double gap20 = mean_of(paired_gap(s[{20.0, Scheme::tra}], s[{20.0, Scheme::tra_pe}]));
        return {gap20 >= 0.0 && gap20 > gap0,
                fmt("TRA %.4f vs PE %.4f at 20 dBm; gap %.4f at 0 dBm, %.4f at 20 dBm", mean_of(s[{20.0, Scheme::tra}]),
                    mean_of(s[{20.0, Scheme::tra_pe}]), gap0, gap20)};
    }

    Outcome sensing_power_trend()
    {
        auto map = study_map(100, "sensing.ps_dbm", "10, 14, 18");
        map.set("link.pt_dbm", "5");
        auto s = by_scheme(run_sweep(map));
        std::vector<double> tra, gap;
        for (double ps : {10.0, 14.0, 18.0})
        {
            tra.push_back(mean_of(s[{ps, Scheme::tra}]));
            gap.push_back(mean_of(paired_gap(s[{ps, Scheme::tra}], s[{ps, Scheme::tra_pe}])));
        }
        return {tra[0] <= tra[1] && tra[1] <= tra[2] && gap[0] > gap[1] && gap[1] > gap[2],
                fmt("TRA mean %.4f / %.4f / %.4f, TRA-PE gap %.4f / %.4f / %.4f at 10 / 14 / 18 dBm", tra[0], tra[1],
                    tra[2], gap[0], gap[1], gap[2])};
    }

    Outcome beam_pattern()
    {
        const auto cfg = ExperimentConfig::defaults();
        int lower = 0;
        for (int t = 0; t < 100; ++t)
        {
            const auto setup = prepare_trial(cfg, t);
            BeamformingSolution tra, pe;
            run_scheme(cfg, setup, Scheme::tra, &tra);
            run_scheme(cfg, setup, Scheme::tra_pe, &pe);
            const auto region = scheme_region(cfg, setup, Scheme::tra);
            const double range = setup.scene.eavesdropper.range;
            lower += max_gain_over(cfg.array, tra, range, region.xi_lo, region.xi_hi) <=
                     max_gain_over(cfg.array, pe, range, region.xi_lo, region.xi_hi);
        }
        return {lower >= 80, fmt("proposed peak gain over the region <= PE in %d/100 trials", lower)};
    }

    Outcome rotation_error()
    {
        ConfigMap map;
        map.set("experiment.n_trials", "100");
        map.set("experiment.schemes", "TRA-ABF, FPA-ABF");
        map.set("experiment.rotation_error_bounds_deg", "0, 1, 2, 4");
        const auto records = rotation_error_study(ExperimentConfig::from_map(map));

        std::map<int, const ResultRecord *> fpa_zero;
        for (const auto &r : records)
            if (r.scheme == Scheme::fpa && r.sweep_value == 0.0)
                fpa_zero[r.trial] = &r;
        int mismatched = 0, fpa_count = 0;
        for (const auto &r : records)
        {
            if (r.scheme != Scheme::fpa)
                continue;
            ++fpa_count;
            const auto &z = *fpa_zero.at(r.trial);
            bool same = std::bit_cast<std::uint64_t>(r.min_secrecy) == std::bit_cast<std::uint64_t>(z.min_secrecy) &&
                        std::bit_cast<std::uint64_t>(r.phi_arr) == std::bit_cast<std::uint64_t>(z.phi_arr) &&
                        r.varphi.size() == z.varphi.size();
            for (std::size_t n = 0; same && n < r.varphi.size(); ++n)
                same = std::bit_cast<std::uint64_t>(r.varphi[n]) == std::bit_cast<std::uint64_t>(z.varphi[n]);
            mismatched += !same;
        }
        auto s = by_scheme(records);
        std::vector<double> tra;
        for (double b : {0.0, 1.0, 2.0, 4.0})
            tra.push_back(mean_of(s[{b, Scheme::tra}]));
        const bool nonincreasing = std::is_sorted(tra.rbegin(), tra.rend());
        return {fpa_count == 400 && mismatched == 0 && nonincreasing,
                fmt("FPA records differing from the error-free run %d/%d; TRA mean %.4f / %.4f / %.4f / %.4f at 0/1/2/4 deg",
                    mismatched, fpa_count, tra[0], tra[1], tra[2], tra[3])};
    }

    Outcome brute_force()
    {
        const auto base = ExperimentConfig::defaults();
        ArrayConfig small = base.array;
        small.n_tx = 4;
        ExperimentConfig scene_cfg = base;
        scene_cfg.array = small;
        std::mt19937_64 rng(1010);
        std::uniform_real_distribution<double> ua(-small.phi_arr_max, small.phi_arr_max);
        std::uniform_real_distribution<double> uv(-small.varphi_max, small.varphi_max);

        // beamformer: single user without leakage, where the 32-level grid brackets the optimum
        double worst_w = -1e300;
        for (int i = 0; i < 20; ++i)
        {
            Scene scene = generate_scene(scene_cfg, trial_seed(21, i));
            scene.users.resize(1);
            RotationState rot = RotationState::zeros(4);
            rot.phi_arr = ua(rng);
            for (auto &v : rot.varphi)
                v = uv(rng);
            const auto full = build_context(small, rot, scene, point_mass(deg2rad(50.0), 1e-6), 10.0);
            const auto ctx = make_context(full.user_channels, {cvec::Zero(4)}, {1.0}, 10.0);
            const cvec start = oracle::to_eigen(oracle::random_unimodular(4, rng)) / 2.0;
            const double found = softmin_objective(solve_w(start, ctx, base.link, base.solver), ctx, base.link);

            double best = -1e300;
            cvec probe(4);
            probe[0] = 0.5;
            for (int a = 0; a < 32; ++a)
                for (int b = 0; b < 32; ++b)
                    for (int c = 0; c < 32; ++c)
                    {
                        probe[1] = std::polar(0.5, 2 * pi * a / 32);
                        probe[2] = std::polar(0.5, 2 * pi * b / 32);
                        probe[3] = std::polar(0.5, 2 * pi * c / 32);
                        best = std::max(best, softmin_objective(probe, ctx, base.link));
                    }
            worst_w = std::max(worst_w, best - found);
        }

        // element rotations: full default scene shape at four elements
        SolverSettings nine = base.solver;
        nine.grid_points_init = 9;
        const auto grid = symmetric_grid(small.varphi_max, 9);
        double worst_var = -1e300;
        for (int i = 0; i < 20; ++i)
        {
            const auto setup = prepare_trial(scene_cfg, i);
            const SurrogateProblem problem(small, setup.scene, scheme_region(scene_cfg, setup, Scheme::tra), base.link);
            auto sol = initial_solution(problem);
            sol.w = solve_w(sol.w, problem.context(sol.rot, 10.0), base.link, base.solver);
            RotationState rot = sol.rot;
            rot.varphi = solve_varphi(sol, problem, 10.0, nine);
            const double found = problem.objective(sol.w, rot, 10.0);

            double best = -1e300;
            RotationState r = sol.rot;
            for (double a : grid)
                for (double b : grid)
                    for (double c : grid)
                        for (double d : grid)
                        {
                            r.varphi << a, b, c, d;
                            best = std::max(best, problem.objective(sol.w, r, 10.0));
                        }
            worst_var = std::max(worst_var, best - found);
        }
        return {worst_w <= 1e-4 && worst_var <= 5e-2,
                fmt("largest shortfall: solve_w %.2e vs 32-level grid (need 1e-4), solve_varphi %.2e vs 9^4 grid "
                    "(need 5e-2)",
                    worst_w, worst_var)};
    }

    std::string records_csv(const std::vector<ResultRecord> &records)
    {
        std::ostringstream out;
        write_records(out, records, OutputFormat::csv);
        write_summary(out, summarize(records), OutputFormat::csv);
        return out.str();
    }
}

int main()
{
    int failures = 0;
    auto run = [&](int id, const char *name, double budget_s, const std::function<Outcome()> &body)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            out = body();
        }
        catch (const std::exception &e)
        {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (budget_s > 0.0 && secs > budget_s)
        {
            out.pass = false;
            out.detail += fmt("; over the %.0f s budget", budget_s);
        }
        failures += !out.pass;
        std::printf("[%s] %2d %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs);
        std::fflush(stdout);
    };

    run(1, "gradient correctness", 30.0, gradients);
    run(2, "CRB validity", 120.0, crb_validity);
    run(3, "surrogate inequalities", 0.0, surrogate_inequalities);
    run(4, "AO monotonicity and convergence", 0.0, ao_convergence);

    // one default run feeds both the ordering check and the determinism check
    std::vector<ResultRecord> first;
    run(5, "scheme ordering", 900.0,
        [&]
        {
            first = run_experiment(ExperimentConfig::defaults());
            return scheme_ordering(first);
        });
    run(6, "robustness value", 0.0, robustness_value);
    run(7, "sensing-power trend", 0.0, sensing_power_trend);
    run(8, "beam-pattern property", 0.0, beam_pattern);
    run(9, "rotation-error robustness", 0.0, rotation_error);
    run(10, "brute-force equivalence", 0.0, brute_force);
    run(11, "determinism", 0.0,
        [&]
        {
            const auto a = records_csv(first.empty() ? run_experiment(ExperimentConfig::defaults()) : first);
            const auto b = records_csv(run_experiment(ExperimentConfig::defaults()));
            return Outcome{a == b, fmt("%zu bytes, %s", a.size(), a == b ? "identical" : "differ")};
        });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
