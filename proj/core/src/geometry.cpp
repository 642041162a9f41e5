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

#include "rasec/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace rasec
{
    ArrayConfig ArrayConfig::at_carrier(double carrier_hz, int n_tx, int n_rx)
    {
        ArrayConfig cfg;
        cfg.n_tx = n_tx;
        cfg.n_rx = n_rx;
        cfg.wavelength = speed_of_light / carrier_hz;
        cfg.spacing = cfg.wavelength / 2.0;
        return cfg;
    }

    void ArrayConfig::validate() const
    {
        if (n_tx < 1 || n_rx < 1)
            throw std::invalid_argument("ArrayConfig: n_tx and n_rx must be positive.");
        if (!(wavelength > 0.0) || !(spacing > 0.0))
            throw std::invalid_argument("ArrayConfig: wavelength and spacing must be positive.");
        if (!(directivity_p >= 0.0))
            throw std::invalid_argument("ArrayConfig: directivity factor p must be nonnegative.");
        if (!(phi_arr_max >= 0.0))
            throw std::invalid_argument("ArrayConfig: phi_arr_max must be nonnegative.");
        if (!(varphi_max >= 0.0) || varphi_max > pi / 2.0)
            throw std::invalid_argument("ArrayConfig: varphi_max must lie in [0, pi/2].");
    }

    void PolarPosition::validate() const
    {
        if (!(range > 0.0))
            throw std::invalid_argument("PolarPosition: range must be positive, got " + std::to_string(range));
        if (!(std::abs(azimuth) < pi / 2.0))
            throw std::invalid_argument("PolarPosition: azimuth must lie in (-pi/2, pi/2), got " + std::to_string(azimuth));
    }

    bool RotationState::feasible(const ArrayConfig &cfg, double slack) const
    {
        if (varphi.size() != cfg.n_tx)
            return false;
        if (std::abs(phi_arr) > cfg.phi_arr_max + slack)
            return false;
        return (varphi.array().abs() <= cfg.varphi_max + slack).all();
    }

    void RotationState::check_feasible(const ArrayConfig &cfg) const
    {
        if (varphi.size() != cfg.n_tx)
            throw std::invalid_argument("RotationState: varphi has " + std::to_string(varphi.size()) +
                                        " entries, expected n_tx = " + std::to_string(cfg.n_tx));
        if (std::abs(phi_arr) > cfg.phi_arr_max)
            throw std::invalid_argument("RotationState: |phi_arr| <= phi_arr_max violated (phi_arr = " +
                                        std::to_string(phi_arr) + ")");
        for (int n = 0; n < cfg.n_tx; ++n)
            if (std::abs(varphi[n]) > cfg.varphi_max)
                throw std::invalid_argument("RotationState: |varphi[" + std::to_string(n) +
                                            "]| <= varphi_max violated (varphi = " + std::to_string(varphi[n]) + ")");
    }

    void RotationState::clamp_to(const ArrayConfig &cfg)
    {
        phi_arr = std::clamp(phi_arr, -cfg.phi_arr_max, cfg.phi_arr_max);
        varphi = varphi.cwiseMax(-cfg.varphi_max).cwiseMin(cfg.varphi_max);
    }

    mat2 rotation_matrix(double phi_arr)
    {
        const double c = std::cos(phi_arr), s = std::sin(phi_arr);
        mat2 r;
        r << c, s,
            -s, c;
        return r;
    }

    mat2 rotation_matrix_derivative(double phi_arr)
    {
        const double c = std::cos(phi_arr), s = std::sin(phi_arr);
        mat2 r;
        r << -s, c,
            -c, -s;
        return r;
    }

    std::vector<vec2> element_positions(const ArrayConfig &cfg, double phi_arr)
    {
        const mat2 r = rotation_matrix(phi_arr);
        std::vector<vec2> out(cfg.n_tx);
        for (int n = 0; n < cfg.n_tx; ++n)
            out[n] = r * vec2(ArrayConfig::position_index(n, cfg.n_tx) * cfg.spacing, 0.0);
        return out;
    }

    static cvec ula_steering(double angle, int count, double spacing_wavelengths)
    {
        cvec a(count);
        const double norm = 1.0 / std::sqrt(double(count));
        const double k = 2.0 * pi * spacing_wavelengths * std::sin(angle);
        for (int n = 0; n < count; ++n)
            a[n] = std::polar(norm, k * ArrayConfig::position_index(n, count));
        return a;
    }

    cvec transmit_steering(double relative_angle, int n_tx, double spacing_wavelengths)
    {
        return ula_steering(relative_angle, n_tx, spacing_wavelengths);
    }

    cvec receive_steering(double angle, int n_rx, double spacing_wavelengths)
    {
        return ula_steering(angle, n_rx, spacing_wavelengths);
    }

    double element_gain(const vec2 &boresight, const vec2 &direction, double p, double g0)
    {
        const double x = boresight.dot(direction);
        if (x <= 0.0)
            return 0.0;
        return g0 * std::pow(x, 2.0 * p);
    }

    cplx path_gain(double range, double wavelength)
    {
        return std::polar(wavelength / (4.0 * pi * range), 2.0 * pi * range / wavelength);
    }

    RotatedArray::RotatedArray(const ArrayConfig &cfg, const RotationState &rot)
        : cfg_(&cfg), rot_(rot)
    {
        if (rot.varphi.size() != cfg.n_tx)
            throw std::invalid_argument("RotatedArray: varphi size does not match n_tx.");
        rot_mat_ = rotation_matrix(rot.phi_arr);
        rot_dot_ = rotation_matrix_derivative(rot.phi_arr);
        const int n_tx = cfg.n_tx;
        local_pos_.resize(n_tx);
        pos_.resize(n_tx);
        boresight_.resize(n_tx);
        bore_darr_.resize(n_tx);
        bore_dvar_.resize(n_tx);
        index_.resize(n_tx);
        for (int n = 0; n < n_tx; ++n)
        {
            index_[n] = ArrayConfig::position_index(n, n_tx);
            local_pos_[n] = vec2(index_[n] * cfg.spacing, 0.0);
            pos_[n] = rot_mat_ * local_pos_[n];
            const double s = std::sin(rot.varphi[n]), c = std::cos(rot.varphi[n]);
            const vec2 f(s, c), f_dot(c, -s);
            boresight_[n] = rot_mat_ * f;
            bore_darr_[n] = rot_dot_ * f;
            bore_dvar_[n] = rot_mat_ * f_dot;
        }
        phase_scale_ = 2.0 * pi * cfg.spacing_in_wavelengths();
        sqrt_g0_ = std::sqrt(cfg.boresight_gain());
    }

    ChannelVector RotatedArray::channel(const PolarPosition &target) const
    {
        if (!(target.range > 0.0))
            throw std::invalid_argument("channel_vector: target range must be positive.");
        const int n_tx = cfg_->n_tx;
        const double p = cfg_->directivity_p;
        const vec2 q = target.cartesian();
        const cplx beta = path_gain(target.range, cfg_->wavelength);
        const double sin_rel = std::sin(target.azimuth - rot_.phi_arr);
        const double norm = 1.0 / std::sqrt(double(n_tx));

        ChannelVector h(n_tx);
        for (int n = 0; n < n_tx; ++n)
        {
            const vec2 diff = q - pos_[n];
            const double x = boresight_[n].dot(diff) / diff.norm();
            if (x <= 0.0)
            {
                h[n] = 0.0;
                continue;
            }
            const double amp = sqrt_g0_ * (p == 1.0 ? x : std::pow(x, p));
            h[n] = beta * std::polar(amp * norm, phase_scale_ * index_[n] * sin_rel);
        }
        return h;
    }

    ChannelJacobian RotatedArray::jacobian(const PolarPosition &target) const
    {
        if (!(target.range > 0.0))
            throw std::invalid_argument("channel_vector: target range must be positive.");
        const int n_tx = cfg_->n_tx;
        const double p = cfg_->directivity_p;
        const vec2 q = target.cartesian();
        const cplx beta = path_gain(target.range, cfg_->wavelength);
        const double rel = target.azimuth - rot_.phi_arr;
        const double sin_rel = std::sin(rel), cos_rel = std::cos(rel);
        const double norm = 1.0 / std::sqrt(double(n_tx));

        ChannelJacobian out{ChannelVector::Zero(n_tx), cvec::Zero(n_tx), cvec::Zero(n_tx)};
        for (int n = 0; n < n_tx; ++n)
        {
            const vec2 diff = q - pos_[n];
            const double r = diff.norm();
            const vec2 u = diff / r;
            const double x = boresight_[n].dot(u);
            if (x <= 0.0)
                continue;

            const cplx a = std::polar(norm, phase_scale_ * index_[n] * sin_rel);
            const double xp = (p == 1.0 ? x : std::pow(x, p));
            out.h[n] = beta * sqrt_g0_ * xp * a;

            // d(f_bar . u)/d phi_arr: boresight rotation plus the change of the exact direction
            const vec2 dpos = rot_dot_ * local_pos_[n];
            const double zeta = bore_darr_[n].dot(u) - (boresight_[n].dot(dpos) - x * u.dot(dpos)) / r;
            const double dxp = (p == 0.0) ? 0.0 : p * std::pow(x, p - 1.0);

            const cplx phase_term = cplx(0.0, -phase_scale_ * index_[n] * cos_rel) * xp;
            out.d_phi_arr[n] = beta * sqrt_g0_ * a * (phase_term + dxp * zeta);
            out.d_varphi[n] = beta * sqrt_g0_ * a * (dxp * bore_dvar_[n].dot(u));
        }
        return out;
    }

    ChannelVector channel_vector(const ArrayConfig &cfg, const RotationState &rot, const PolarPosition &target)
    {
        return RotatedArray(cfg, rot).channel(target);
    }

    double beam_gain(const ArrayConfig &cfg, const RotationState &rot, const cvec &w, double eval_angle, double eval_range)
    {
        const ChannelVector h = channel_vector(cfg, rot, {eval_range, eval_angle});
        const double power = std::norm(h.dot(w)); // Eigen dot conjugates the first argument
        if (!(power > 0.0))
            return beam_gain_floor_db;
        return std::max(beam_gain_floor_db, 10.0 * std::log10(power));
    }
}
