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

// Reference implementations written directly from the model equations with plain
// std::complex loops. They share no code with the library and serve as test oracles.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "rasec/sensing.hpp"

namespace oracle
{
    using cd = std::complex<double>;
    using cvector = std::vector<cd>;
    constexpr double pi = 3.14159265358979323846;

    inline double index(int n, int count) { return n - (count - 1) / 2.0; }

    inline cvector steering(double angle, int count, double spacing_wl = 0.5)
    {
        cvector a(count);
        for (int n = 0; n < count; ++n)
            a[n] = std::exp(cd(0.0, 2.0 * pi * spacing_wl * index(n, count) * std::sin(angle))) / std::sqrt(double(count));
        return a;
    }

    struct Array
    {
        int n_tx = 8;
        double wavelength = 299792458.0 / 28e9;
        double spacing = 299792458.0 / 28e9 / 2.0;
        double p = 1.0;
    };

    /// Channel entry by entry: positions rotated by phi_arr, boresight [sin, cos] of
    /// (varphi_n + phi_arr), exact element-to-target direction for the gain.
    inline cvector channel(const Array &a, double phi_arr, const std::vector<double> &varphi, double range,
                           double azimuth)
    {
        const double qx = range * std::sin(azimuth), qy = range * std::cos(azimuth);
        const cd beta = a.wavelength / (4.0 * pi * range) * std::exp(cd(0.0, 2.0 * pi * range / a.wavelength));
        const double g0 = 2.0 * (2.0 * a.p + 1.0);
        cvector h(a.n_tx);
        for (int n = 0; n < a.n_tx; ++n)
        {
            const double m = index(n, a.n_tx);
            const double cx = std::cos(phi_arr) * m * a.spacing;
            const double cy = -std::sin(phi_arr) * m * a.spacing;
            const double dx = qx - cx, dy = qy - cy;
            const double dist = std::hypot(dx, dy);
            const double bx = std::sin(varphi[n] + phi_arr), by = std::cos(varphi[n] + phi_arr);
            const double proj = (bx * dx + by * dy) / dist;
            const double gain = proj > 0.0 ? g0 * std::pow(proj, 2.0 * a.p) : 0.0;
            const cd steer = std::exp(cd(0.0, 2.0 * pi * (a.spacing / a.wavelength) * m * std::sin(azimuth - phi_arr))) /
                             std::sqrt(double(a.n_tx));
            h[n] = beta * std::sqrt(gain) * steer;
        }
        return h;
    }

    /// sum_n conj(a_n) b_n
    inline cd inner(const cvector &a, const cvector &b)
    {
        cd s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += std::conj(a[i]) * b[i];
        return s;
    }

    inline double norm2(const cvector &a) { return std::real(inner(a, a)); }

    inline rasec::cvec to_eigen(const cvector &v)
    {
        rasec::cvec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = v[i];
        return out;
    }

    inline cvector from_eigen(const rasec::cvec &v) { return cvector(v.data(), v.data() + v.size()); }

    /// Log-sum-exp softmin evaluated in long double without a shift (for moderate beta).
    inline double softmin(const std::vector<double> &c, double beta)
    {
        long double s = 0.0L;
        for (double x : c)
            s += std::exp(-(long double)beta * x);
        return double(-std::log(s) / beta);
    }

    inline cvector random_unimodular(int n, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(-pi, pi);
        cvector w(n);
        for (auto &x : w)
            x = std::polar(1.0 / std::sqrt(double(n)), u(rng));
        return w;
    }

    inline cvector random_complex(int n, std::mt19937_64 &rng, double scale = 1.0)
    {
        std::normal_distribution<double> g(0.0, scale);
        cvector v(n);
        for (auto &x : v)
            x = cd(g(rng), g(rng));
        return v;
    }

    // b(theta) built entry by entry: sqrt(G0 cos^{2p} theta) times the transmit steering vector
    inline cvector expected_response(double theta, const rasec::ArrayConfig &cfg)
    {
        auto a = steering(theta, cfg.n_tx, cfg.spacing / cfg.wavelength);
        const double c = std::cos(theta);
        const double amp = c > 0.0 ? std::sqrt(cfg.boresight_gain() * std::pow(c, 2.0 * cfg.directivity_p)) : 0.0;
        for (auto &x : a)
            x *= amp;
        return a;
    }

    // CRB from a numerically differentiated 3x3 Fisher information over (theta, Re beta, Im beta)
    inline double fim_crb(double theta, double range, const rasec::SensingConfig &s, const rasec::ArrayConfig &cfg, const rasec::cmat &x)
    {
        const double lambda = cfg.wavelength;
        const cd beta = std::sqrt(lambda * lambda * s.rcs / (64.0 * std::pow(pi, 3) * std::pow(range, 4))) *
                                std::exp(cd(0.0, 4.0 * pi * range / lambda));
        auto mean = [&](double t, cd bt)
        {
            const auto b = expected_response(t, cfg);
            const auto ar = steering(t, cfg.n_rx);
            std::vector<cd> mu;
            mu.reserve(cfg.n_rx * x.cols());
            for (long l = 0; l < x.cols(); ++l)
            {
                cd bx = 0.0;
                for (int n = 0; n < cfg.n_tx; ++n)
                    bx += std::conj(b[n]) * x(n, l);
                for (int r = 0; r < cfg.n_rx; ++r)
                    mu.push_back(bt * ar[r] * bx);
            }
            return mu;
        };
        const double h = 1e-6;
        const auto plus = mean(theta + h, beta), minus = mean(theta - h, beta);
        const auto base = mean(theta, 1.0);
        const std::size_t n = base.size();
        std::vector<std::vector<cd>> d(3, std::vector<cd>(n));
        for (std::size_t i = 0; i < n; ++i)
        {
            d[0][i] = (plus[i] - minus[i]) / (2 * h);
            d[1][i] = base[i];
            d[2][i] = cd(0.0, 1.0) * base[i];
        }
        Eigen::Matrix3d j;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
            {
                cd acc = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    acc += std::conj(d[a][i]) * d[b][i];
                j(a, b) = 2.0 / s.noise_power * acc.real();
            }
        return j.inverse()(0, 0);
    }
}
