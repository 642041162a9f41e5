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

#include "rasec/sensing.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "rasec/random.hpp"

namespace rasec
{
    std::vector<double> SensingConfig::sin_uniform_grid(int points)
    {
        if (points < 1)
            throw std::invalid_argument("sin_uniform_grid: need at least one point.");
        std::vector<double> grid(points);
        for (int i = 0; i < points; ++i)
            grid[i] = std::asin(-1.0 + (2.0 * i + 1.0) / points);
        return grid;
    }

    void SensingConfig::validate(const ArrayConfig &cfg) const
    {
        if (n_beams < cfg.n_tx)
            throw std::invalid_argument("SensingConfig: n_beams (L = " + std::to_string(n_beams) +
                                        ") must be >= n_tx for the probing covariance (1/L) X X^H = (P_s/N_t) I to hold.");
        if (!(sensing_power > 0.0) || !(noise_power > 0.0) || !(rcs > 0.0))
            throw std::invalid_argument("SensingConfig: sensing power, noise power and RCS must be positive.");
        if (search_grid.empty())
            throw std::invalid_argument("SensingConfig: search grid is empty.");
        for (std::size_t i = 0; i < search_grid.size(); ++i)
        {
            if (!(std::abs(search_grid[i]) < pi / 2.0))
                throw std::invalid_argument("SensingConfig: search grid must lie inside (-pi/2, pi/2).");
            if (i > 0 && !(search_grid[i] > search_grid[i - 1]))
                throw std::invalid_argument("SensingConfig: search grid must be strictly increasing.");
        }
    }

    double codebook_angle(int l, int n_beams)
    {
        return std::asin(-1.0 + (2.0 * (l + 1) - 1.0) / n_beams);
    }

    cmat dft_codebook(int n_beams, int n_tx)
    {
        if (n_beams < n_tx)
            throw std::invalid_argument("dft_codebook: L = " + std::to_string(n_beams) + " < N_t = " + std::to_string(n_tx) +
                                        "; the probing covariance (1/L) X X^H = (P_s/N_t) I requires L >= N_t.");
        cmat book(n_tx, n_beams);
        for (int l = 0; l < n_beams; ++l)
            book.col(l) = transmit_steering(codebook_angle(l, n_beams), n_tx);
        return book;
    }

    // sqrt(G(theta)) in the reference configuration and its derivative
    static void pattern_amplitude(double theta, const ArrayConfig &cfg, double &amp, double &d_amp)
    {
        const double p = cfg.directivity_p;
        const double c = std::cos(theta);
        const double sqrt_g0 = std::sqrt(cfg.boresight_gain());
        if (c <= 0.0 || std::abs(theta) >= pi / 2.0) // cos(pi/2) rounds to a tiny positive value
        {
            amp = 0.0;
            d_amp = 0.0;
            return;
        }
        amp = sqrt_g0 * std::pow(c, p);
        d_amp = (p == 0.0) ? 0.0 : -sqrt_g0 * p * std::pow(c, p - 1.0) * std::sin(theta);
    }

    cvec sensing_response(double theta, const ArrayConfig &cfg)
    {
        double amp, d_amp;
        pattern_amplitude(theta, cfg, amp, d_amp);
        return amp * transmit_steering(theta, cfg.n_tx, cfg.spacing_in_wavelengths());
    }

    static cvec steering_derivative(double theta, int count, double spacing_wavelengths)
    {
        cvec a = transmit_steering(theta, count, spacing_wavelengths);
        const double k = 2.0 * pi * spacing_wavelengths * std::cos(theta);
        for (int n = 0; n < count; ++n)
            a[n] *= cplx(0.0, k * ArrayConfig::position_index(n, count));
        return a;
    }

    cvec sensing_response_derivative(double theta, const ArrayConfig &cfg)
    {
        double amp, d_amp;
        pattern_amplitude(theta, cfg, amp, d_amp);
        const double s = cfg.spacing_in_wavelengths();
        return d_amp * transmit_steering(theta, cfg.n_tx, s) + amp * steering_derivative(theta, cfg.n_tx, s);
    }

    cvec receive_steering_derivative(double theta, const ArrayConfig &cfg)
    {
        return steering_derivative(theta, cfg.n_rx, cfg.spacing_in_wavelengths());
    }

    cplx round_trip_gain(double range, double wavelength, double rcs)
    {
        const double mag = std::sqrt(wavelength * wavelength * rcs / (64.0 * pi * pi * pi * std::pow(range, 4)));
        return std::polar(mag, 4.0 * pi * range / wavelength);
    }

    EchoData simulate_echoes(double true_theta, double true_range, const SensingConfig &scfg,
                             const ArrayConfig &acfg, std::uint64_t seed)
    {
        EchoData echo;
        echo.x = std::sqrt(scfg.sensing_power) * dft_codebook(scfg.n_beams, acfg.n_tx);

        const cplx beta = round_trip_gain(true_range, acfg.wavelength, scfg.rcs);
        const cvec a_r = receive_steering(true_theta, acfg.n_rx, acfg.spacing_in_wavelengths());
        const cvec b = sensing_response(true_theta, acfg);
        // b^H X as a row
        const Eigen::RowVectorXcd bx = b.adjoint() * echo.x;
        echo.y = beta * (a_r * bx);

        Engine rng(seed);
        std::normal_distribution<double> gauss(0.0, std::sqrt(scfg.noise_power / 2.0));
        for (Eigen::Index l = 0; l < echo.y.cols(); ++l)
            for (Eigen::Index r = 0; r < echo.y.rows(); ++r)
            {
                const double re = gauss(rng);
                const double im = gauss(rng);
                echo.y(r, l) += cplx(re, im);
            }
        return echo;
    }

    MleStatistic::MleStatistic(const EchoData &echo, const ArrayConfig &cfg)
        : cfg_(&cfg), yx_(echo.y * echo.x.adjoint()), xx_(echo.x * echo.x.adjoint())
    {
    }

    double MleStatistic::operator()(double theta) const
    {
        const cvec b = sensing_response(theta, *cfg_);
        const double den = b.dot(xx_ * b).real();
        if (!(den > 0.0) || b.squaredNorm() == 0.0)
            return -1.0;
        const cvec a_r = receive_steering(theta, cfg_->n_rx, cfg_->spacing_in_wavelengths());
        const cplx num = a_r.dot(yx_ * b);
        return std::norm(num) / den;
    }

    // Golden-section maximization on [lo, hi]; returns the best point evaluated.
    static double golden_section_max(const MleStatistic &f, double lo, double hi, double x_best, double f_best)
    {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo, b = hi;
        double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 200 && (b - a) > 1e-12; ++it)
        {
            if (fc >= fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        const double x = (fc >= fd) ? c : d;
        const double fx = std::max(fc, fd);
        return fx > f_best ? x : x_best;
    }

    double mle_estimate(const EchoData &echo, const SensingConfig &scfg, const ArrayConfig &acfg)
    {
        const auto &grid = scfg.search_grid;
        if (grid.empty())
            throw std::invalid_argument("mle_estimate: empty search grid.");
        const MleStatistic stat(echo, acfg);

        std::ptrdiff_t best = -1;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double v = stat(grid[i]);
            if (v < 0.0)
                continue; // b(theta) = 0
            if (v > best_val)
            {
                best_val = v;
                best = std::ptrdiff_t(i);
            }
        }
        if (best < 0)
            throw std::domain_error("mle_estimate: no admissible grid point (sensing response vanishes everywhere).");

        const double theta = grid[best];
        if (!scfg.refine || grid.size() < 2)
            return theta;
        const double lo = grid[std::max<std::ptrdiff_t>(best - 1, 0)];
        const double hi = grid[std::min<std::ptrdiff_t>(best + 1, std::ptrdiff_t(grid.size()) - 1)];
        return golden_section_max(stat, lo, hi, theta, best_val);
    }

    double crb(double theta, double range, const SensingConfig &scfg, const ArrayConfig &acfg)
    {
        const cvec a_r = receive_steering(theta, acfg.n_rx, acfg.spacing_in_wavelengths());
        const cvec a_r_dot = receive_steering_derivative(theta, acfg);
        const cvec b = sensing_response(theta, acfg);
        const cvec b_dot = sensing_response_derivative(theta, acfg);

        const double b2 = b.squaredNorm();
        if (!(b2 > 0.0))
            throw std::domain_error("crb: sensing response b(theta) is zero; the bound is not finite.");

        const cplx ar_ard = a_r.dot(a_r_dot); // a_r^H a_r_dot
        const cplx bh_bd = b.dot(b_dot);      // b^H b_dot
        const double info = a_r_dot.squaredNorm() * b2 + b_dot.squaredNorm() + 2.0 * (ar_ard * bh_bd).real() -
                            std::norm(ar_ard * b2 + std::conj(bh_bd)) / b2;

        const double beta2 = std::norm(round_trip_gain(range, acfg.wavelength, scfg.rcs));
        const double scale = 2.0 * scfg.n_beams * scfg.sensing_power * beta2 / acfg.n_tx;
        const double value = scfg.noise_power / (scale * info);
        if (!std::isfinite(value) || !(value > 0.0))
            throw std::domain_error("crb: non-finite or non-positive bound.");
        return value;
    }

    SensingOutcome uncertainty_region(double theta_hat, double crb_value, int n_samples)
    {
        if (n_samples < 2)
            throw std::invalid_argument("uncertainty_region: need at least two samples.");
        if (!(crb_value > 0.0))
            throw std::invalid_argument("uncertainty_region: CRB must be positive.");

        SensingOutcome out;
        out.theta_hat = theta_hat;
        out.crb = crb_value;
        const double half_width = 3.0 * std::sqrt(crb_value);
        out.xi_lo = theta_hat - half_width;
        out.xi_hi = theta_hat + half_width;

        out.sampled_angles.resize(n_samples);
        out.weights.resize(n_samples);
        double total = 0.0;
        for (int m = 0; m < n_samples; ++m)
        {
            // position in [-1, 1]; the middle sample of an odd M sits exactly on theta_hat
            const double t = (2.0 * m - (n_samples - 1)) / double(n_samples - 1);
            const double offset = t * half_width;
            out.sampled_angles[m] = theta_hat + offset;
            out.weights[m] = std::exp(-offset * offset / (2.0 * crb_value));
            total += out.weights[m];
        }
        for (double &w : out.weights)
            w /= total;
        return out;
    }

    SensingOutcome point_mass(double theta_hat, double crb_value)
    {
        SensingOutcome out;
        out.theta_hat = theta_hat;
        out.crb = crb_value;
        const double half_width = 3.0 * std::sqrt(std::max(crb_value, 0.0));
        out.xi_lo = theta_hat - half_width;
        out.xi_hi = theta_hat + half_width;
        out.sampled_angles = {theta_hat};
        out.weights = {1.0};
        return out;
    }
}
