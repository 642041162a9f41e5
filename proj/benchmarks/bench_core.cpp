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

#include <benchmark/benchmark.h>

#include "rasec/experiment.hpp"

using namespace rasec;

namespace
{
    struct Fixture
    {
        ExperimentConfig cfg = ExperimentConfig::defaults();
        TrialSetup setup = prepare_trial(cfg, 0);
        SurrogateProblem problem{cfg.array, setup.scene, scheme_region(cfg, setup, Scheme::tra), cfg.link};
        BeamformingSolution init = initial_solution(problem);
    };

    const Fixture &fixture()
    {
        static const Fixture f;
        return f;
    }
}

static void objective_eval(benchmark::State &state)
{
    const auto &f = fixture();
    const auto ctx = f.problem.context(f.init.rot, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(softmin_objective(f.init.w, ctx, f.cfg.link));
}
BENCHMARK(objective_eval);

static void rotation_gradient(benchmark::State &state)
{
    const auto &f = fixture();
    RotationState rot = f.init.rot;
    for (auto _ : state)
    {
        rot.phi_arr = rot.phi_arr == 0.0 ? 1e-3 : 0.0; // defeat the geometry cache
        benchmark::DoNotOptimize(f.problem.rotation_gradient(f.init.w, rot, 10.0));
    }
}
BENCHMARK(rotation_gradient);

static void beamformer_block(benchmark::State &state)
{
    const auto &f = fixture();
    const auto ctx = f.problem.context(f.init.rot, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_w(f.init.w, ctx, f.cfg.link, f.cfg.solver));
}
BENCHMARK(beamformer_block)->Unit(benchmark::kMillisecond);

static void alternating_solve(benchmark::State &state)
{
    const auto &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(ao_solve(f.problem, f.cfg.solver, f.init));
}
BENCHMARK(alternating_solve)->Unit(benchmark::kMillisecond);

static void mle(benchmark::State &state)
{
    const auto &f = fixture();
    const auto echo = simulate_echoes(f.cfg.eavesdropper.azimuth, f.cfg.eavesdropper.range, f.cfg.sensing, f.cfg.array, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(mle_estimate(echo, f.cfg.sensing, f.cfg.array));
}
BENCHMARK(mle)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
