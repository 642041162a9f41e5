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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rasec/geometry.hpp"

using namespace rasec;

namespace
{
    ArrayConfig small_array(int n_tx, double p)
    {
        ArrayConfig cfg;
        cfg.n_tx = n_tx;
        cfg.directivity_p = p;
        return cfg;
    }
}

TEST_CASE("rotation matrix values and orthogonality")
{
    CHECK(rotation_matrix(0.0).isApprox(mat2::Identity(), 1e-15));
    const mat2 q = rotation_matrix(pi / 2);
    CHECK(q(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q(0, 1) == doctest::Approx(1.0));
    CHECK(q(1, 0) == doctest::Approx(-1.0));
    CHECK(std::abs(q(1, 1)) < 1e-15);

    const mat2 r = rotation_matrix(0.1);
    CHECK((r * r.transpose() - mat2::Identity()).norm() < 1e-14);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int i = 0; i < 100; ++i)
    {
        const double phi = u(rng);
        CHECK((rotation_matrix(phi) * rotation_matrix(-phi) - mat2::Identity()).norm() < 1e-13);
        const double h = 1e-6;
        const mat2 fd = (rotation_matrix(phi + h) - rotation_matrix(phi - h)) / (2 * h);
        CHECK((fd - rotation_matrix_derivative(phi)).norm() < 1e-9);
    }
}

TEST_CASE("element positions")
{
    ArrayConfig cfg = small_array(2, 1.0);
    const double d = cfg.spacing;
    auto pos = element_positions(cfg, 0.0);
    CHECK(pos[0].x() == doctest::Approx(-d / 2));
    CHECK(pos[1].x() == doctest::Approx(d / 2));
    CHECK(pos[0].y() == 0.0);

    pos = element_positions(cfg, pi / 2);
    CHECK(std::abs(pos[0].x()) < 1e-18);
    CHECK(pos[0].y() == doctest::Approx(d / 2));
    CHECK(pos[1].y() == doctest::Approx(-d / 2));

    cfg = small_array(8, 1.0);
    pos = element_positions(cfg, 0.0);
    for (int n = 0; n < 8; ++n)
        CHECK(pos[n].x() == doctest::Approx((n - 3.5) * cfg.spacing));
    pos = element_positions(cfg, 0.3);
    vec2 centroid = vec2::Zero();
    for (const auto &c : pos)
        centroid += c;
    CHECK(centroid.norm() < 1e-16);
}

TEST_CASE("steering vectors")
{
    for (int n : {1, 4, 8, 16})
    {
        const cvec a = transmit_steering(0.0, n);
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(a[i] - cplx(1.0 / std::sqrt(double(n)), 0.0)) < 1e-15);
    }
    const cvec r = receive_steering(0.0, 16);
    for (int i = 0; i < 16; ++i)
        CHECK(std::abs(r[i] - cplx(0.25, 0.0)) < 1e-15);

    const cvec a4 = transmit_steering(pi / 6, 4);
    const double ms[] = {-1.5, -0.5, 0.5, 1.5};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(a4[i] - std::polar(0.5, pi * ms[i] * 0.5)) < 1e-15);

    const cvec r2 = receive_steering(pi / 4, 2);
    CHECK(std::abs(std::arg(r2[0]) + pi * 0.5 * std::sin(pi / 4)) < 1e-14);
    CHECK(std::abs(std::arg(r2[1]) - pi * 0.5 * std::sin(pi / 4)) < 1e-14);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-pi / 2, pi / 2);
    for (int i = 0; i < 50; ++i)
    {
        const double angle = u(rng);
        CHECK(std::abs(transmit_steering(angle, 8).norm() - 1.0) < 1e-13);
        CHECK(std::abs(receive_steering(angle, 16).norm() - 1.0) < 1e-13);
        const auto ref = oracle::steering(angle, 8);
        CHECK((transmit_steering(angle, 8) - oracle::to_eigen(ref)).norm() < 1e-14);
    }
}

TEST_CASE("element gain")
{
    const vec2 up(0.0, 1.0);
    CHECK(element_gain(up, up, 1.0, 6.0) == 6.0);
    CHECK(element_gain(up, vec2(1.0, 0.0), 1.0, 6.0) == 0.0);
    CHECK(element_gain(up, vec2(0.0, -1.0), 1.0, 6.0) == 0.0);
    CHECK(element_gain(up, vec2(0.0, -1.0), 0.0, 2.0) == 0.0); // back half-plane even for p = 0
    CHECK(ArrayConfig().boresight_gain() == 6.0);

    // monotone nonincreasing in the off-boresight angle
    for (double p : {0.5, 1.0, 2.0})
    {
        double previous = 1e300;
        for (int i = 0; i <= 90; ++i)
        {
            const double a = deg2rad(i);
            const double g = element_gain(up, vec2(std::sin(a), std::cos(a)), p, 2 * (2 * p + 1));
            CHECK(g <= previous);
            previous = g;
        }
    }
}

TEST_CASE("front half-circle pattern carries the isotropic total power")
{
    // 2D convention: integral of G(theta) over the circle equals 2 pi (isotropic unit gain).
    // Informational for p = 1: G0 = 6 gives 6 * pi / 2 = 3 pi, i.e. 1.5x the isotropic total.
    const int steps = 200000;
    double total = 0.0;
    for (int i = 0; i < steps; ++i)
    {
        const double t = -pi / 2 + pi * (i + 0.5) / steps;
        total += 6.0 * std::pow(std::cos(t), 2.0) * (pi / steps);
    }
    CHECK(total == doctest::Approx(3.0 * pi).epsilon(1e-9));
    MESSAGE("2D pattern integral / isotropic total = " << total / (2 * pi));
}

TEST_CASE("channel vector against the entry-by-entry oracle")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(-0.26, 0.26), uz(-1.4, 1.4), ur(5.0, 60.0);
    for (double p : {0.0, 1.0, 2.0})
    {
        ArrayConfig cfg = small_array(8, p);
        oracle::Array ref{8, cfg.wavelength, cfg.spacing, p};
        for (int i = 0; i < 30; ++i)
        {
            RotationState rot{ua(rng), rvec(8)};
            std::vector<double> vp(8);
            for (int n = 0; n < 8; ++n)
                rot.varphi[n] = vp[n] = ua(rng);
            const PolarPosition target{ur(rng), uz(rng)};
            const cvec h = channel_vector(cfg, rot, target);
            const cvec o = oracle::to_eigen(oracle::channel(ref, rot.phi_arr, vp, target.range, target.azimuth));
            CHECK((h - o).norm() <= 1e-12 * o.norm() + 1e-300);
        }
    }
}

TEST_CASE("channel vector examples")
{
    ArrayConfig cfg = small_array(8, 0.0);
    const RotationState zero = RotationState::zeros(8);
    const PolarPosition user{35.0, 0.4};
    const cvec h = channel_vector(cfg, zero, user);
    const double beta = std::abs(path_gain(user.range, cfg.wavelength));
    for (int n = 0; n < 8; ++n)
        CHECK(std::abs(h[n]) == doctest::Approx(beta * std::sqrt(2.0) / std::sqrt(8.0)).epsilon(1e-12));

    // far-field broadside with p = 1: entries approach beta * sqrt(6) / sqrt(N_t)
    cfg = small_array(8, 1.0);
    const PolarPosition far{1e6, 0.0};
    const cvec hf = channel_vector(cfg, zero, far);
    const cplx b = path_gain(far.range, cfg.wavelength);
    for (int n = 0; n < 8; ++n)
        CHECK(std::abs(hf[n] - b * std::sqrt(6.0) / std::sqrt(8.0)) < 1e-9 * std::abs(b));

    // an element turned away from the target contributes exactly zero
    ArrayConfig wide = small_array(4, 1.0);
    wide.varphi_max = pi / 2;
    RotationState rot = RotationState::zeros(4);
    rot.varphi[2] = pi / 2; // boresight along +x
    const cvec hz = channel_vector(wide, rot, {30.0, deg2rad(-60.0)});
    CHECK(hz[2] == cplx(0.0, 0.0));
    CHECK(std::abs(hz[0]) > 0.0);

    CHECK_THROWS_AS(channel_vector(cfg, zero, {0.0, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(channel_vector(cfg, zero, {-3.0, 0.1}), std::invalid_argument);
}

TEST_CASE("channel is continuous in the rotation angles")
{
    ArrayConfig cfg;
    RotationState rot{0.05, rvec::Constant(8, -0.1)};
    const PolarPosition user{40.0, 0.3};
    const cvec h = channel_vector(cfg, rot, user);
    for (int k = 0; k <= 8; ++k)
    {
        RotationState r = rot;
        if (k == 8)
            r.phi_arr += 1e-7;
        else
            r.varphi[k] += 1e-7;
        const double change = (channel_vector(cfg, r, user) - h).norm() / h.norm();
        CHECK(change < 1e-5);
    }
}

TEST_CASE("channel jacobian matches finite differences")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ua(-0.25, 0.25), uz(-1.3, 1.3);
    for (double p : {0.0, 1.0, 1.5})
    {
        ArrayConfig cfg;
        cfg.directivity_p = p;
        for (int i = 0; i < 20; ++i)
        {
            RotationState rot{ua(rng), rvec(8)};
            for (auto &v : rot.varphi)
                v = ua(rng);
            const PolarPosition target{32.0, uz(rng)};
            const auto jac = RotatedArray(cfg, rot).jacobian(target);
            CHECK((jac.h - channel_vector(cfg, rot, target)).norm() < 1e-14 * jac.h.norm());

            const double h = 1e-6;
            RotationState a = rot, b = rot;
            a.phi_arr += h;
            b.phi_arr -= h;
            const cvec fd = (channel_vector(cfg, a, target) - channel_vector(cfg, b, target)) / (2 * h);
            CHECK((fd - jac.d_phi_arr).norm() <= 1e-6 * fd.norm() + 1e-15);
            for (int n = 0; n < 8; ++n)
            {
                RotationState c = rot, d = rot;
                c.varphi[n] += h;
                d.varphi[n] -= h;
                cvec fdn = (channel_vector(cfg, c, target) - channel_vector(cfg, d, target)) / (2 * h);
                CHECK(std::abs(fdn[n] - jac.d_varphi[n]) <= 1e-6 * std::abs(fdn[n]) + 1e-15);
                fdn[n] = 0.0;
                CHECK(fdn.norm() == 0.0); // h_m does not depend on varphi_n for m != n
            }
        }
    }
}

TEST_CASE("beam gain")
{
    ArrayConfig cfg;
    cfg.directivity_p = 0.0;
    const RotationState zero = RotationState::zeros(8);
    const double range = 30.0;
    const double beta2 = std::norm(path_gain(range, cfg.wavelength));

    // |w_n| = 1/sqrt(N_t): N_t entries of modulus |beta| sqrt(2)/sqrt(N_t) sum to 2 |beta|^2 in power
    const cvec w = cvec::Constant(8, 1.0 / std::sqrt(8.0));
    CHECK(beam_gain(cfg, zero, w, 0.0, range) == doctest::Approx(10 * std::log10(2.0 * beta2)).epsilon(1e-8));
    // an un-normalized all-ones weight reaches the N_t-scaled value
    const cvec ones = cvec::Ones(8);
    CHECK(beam_gain(cfg, zero, ones, 0.0, range) == doctest::Approx(10 * std::log10(2.0 * 8 * beta2)).epsilon(1e-8));

    // matched weights peak at the matched direction
    cfg.directivity_p = 1.0;
    const double target = 0.35;
    const cvec h = channel_vector(cfg, zero, {range, target});
    cvec wm(8);
    for (int n = 0; n < 8; ++n)
        wm[n] = std::polar(1.0 / std::sqrt(8.0), std::arg(h[n]));
    // co-phased weights add the entry magnitudes coherently
    const double coherent = h.cwiseAbs().sum() / std::sqrt(8.0);
    CHECK(beam_gain(cfg, zero, wm, target, range) == doctest::Approx(20 * std::log10(coherent)).epsilon(1e-10));
    CHECK(beam_gain(cfg, zero, wm, -target, range) < beam_gain(cfg, zero, wm, target, range) - 10.0);

    // every element clipped: floor value
    ArrayConfig wide = cfg;
    wide.varphi_max = pi / 2;
    RotationState away{0.0, rvec::Constant(8, pi / 2)};
    CHECK(beam_gain(wide, away, wm, deg2rad(-70.0), range) == beam_gain_floor_db);
}

TEST_CASE("rotation state feasibility")
{
    ArrayConfig cfg;
    RotationState rot = RotationState::zeros(8);
    CHECK(rot.feasible(cfg));
    rot.phi_arr = deg2rad(16.0);
    CHECK_FALSE(rot.feasible(cfg));
    CHECK_THROWS_WITH_AS(rot.check_feasible(cfg), doctest::Contains("phi_arr"), std::invalid_argument);
    rot.phi_arr = 0.0;
    rot.varphi[3] = -deg2rad(20.0);
    CHECK_THROWS_WITH_AS(rot.check_feasible(cfg), doctest::Contains("varphi[3]"), std::invalid_argument);
    rot.clamp_to(cfg);
    CHECK(rot.varphi[3] == doctest::Approx(-cfg.varphi_max));
    CHECK(rot.feasible(cfg));

    CHECK_THROWS(PolarPosition{30.0, pi / 2}.validate());
    CHECK_THROWS(PolarPosition{-1.0, 0.0}.validate());
    ArrayConfig bad;
    bad.varphi_max = 2.0;
    CHECK_THROWS(bad.validate());
    CHECK(ArrayConfig::at_carrier(28e9, 8, 16).spacing == doctest::Approx(ArrayConfig().wavelength / 2));
}
