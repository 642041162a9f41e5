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

#include "rasec/types.hpp"

namespace rasec
{
    /// Transmit/receive array geometry of the base station. The transmit ULA sits on a
    /// rotatable platform centered at the origin, broadside along +y before rotation;
    /// the receive ULA is fixed and colocated.
    struct ArrayConfig
    {
        int n_tx = 8;
        int n_rx = 16;
        double wavelength = speed_of_light / 28e9; // meters
        double spacing = speed_of_light / 28e9 / 2.0;
        double directivity_p = 1.0;
        double phi_arr_max = deg2rad(15.0); // array-level rotation bound
        double varphi_max = deg2rad(15.0);  // element-level rotation bound, in [0, pi/2]

        /// Half-wavelength ULA at the given carrier.
        static ArrayConfig at_carrier(double carrier_hz, int n_tx, int n_rx);

        double boresight_gain() const { return 2.0 * (2.0 * directivity_p + 1.0); }
        double spacing_in_wavelengths() const { return spacing / wavelength; }

        /// Normalized position index m_n = n - (N+1)/2 for 0-based n.
        static double position_index(int n, int count) { return n - 0.5 * (count - 1); }

        void validate() const; // throws std::invalid_argument
    };

    /// Polar position in the array plane; azimuth measured from +y toward +x.
    struct PolarPosition
    {
        double range = 1.0;
        double azimuth = 0.0;

        vec2 cartesian() const { return {range * std::sin(azimuth), range * std::cos(azimuth)}; }
        void validate() const;
    };

    /// Array-level rotation and per-element local pointing angles.
    struct RotationState
    {
        double phi_arr = 0.0;
        rvec varphi;

        static RotationState zeros(int n_tx) { return {0.0, rvec::Zero(n_tx)}; }

        bool feasible(const ArrayConfig &cfg, double slack = 0.0) const;
        void check_feasible(const ArrayConfig &cfg) const; // throws naming the violated bound
        void clamp_to(const ArrayConfig &cfg);
    };

    /// Complex LoS channel from the transmit array toward one position.
    using ChannelVector = cvec;

    /// Positions of the legitimate users and the eavesdropper for one realization.
    struct Scene
    {
        std::vector<PolarPosition> users;
        PolarPosition eavesdropper;
    };

    mat2 rotation_matrix(double phi_arr);
    mat2 rotation_matrix_derivative(double phi_arr);

    std::vector<vec2> element_positions(const ArrayConfig &cfg, double phi_arr);

    /// ULA steering vector, entry n = exp(j*2*pi*(d/lambda)*m_n*sin(angle)) / sqrt(N).
    /// The default spacing is half a wavelength.
    cvec transmit_steering(double relative_angle, int n_tx, double spacing_wavelengths = 0.5);
    cvec receive_steering(double angle, int n_rx, double spacing_wavelengths = 0.5);

    /// Element pattern g0 * [boresight . direction]_+^(2p). Zero whenever the projection is <= 0,
    /// including p = 0.
    double element_gain(const vec2 &boresight, const vec2 &direction, double p, double g0);

    /// Free-space path gain lambda/(4 pi r) * exp(j 2 pi r / lambda).
    cplx path_gain(double range, double wavelength);

    ChannelVector channel_vector(const ArrayConfig &cfg, const RotationState &rot, const PolarPosition &target);

    /// Channel plus its analytic partial derivatives. d_varphi[n] = d h_n / d varphi_n
    /// (h_n depends on no other element angle). Inactive elements have zero derivatives.
    struct ChannelJacobian
    {
        ChannelVector h;
        cvec d_phi_arr;
        cvec d_varphi;
    };

    /// Per-rotation cache of element positions and global boresights, shared by every
    /// target evaluated under the same rotation state.
    class RotatedArray
    {
    public:
        RotatedArray(const ArrayConfig &cfg, const RotationState &rot);

        ChannelVector channel(const PolarPosition &target) const;
        ChannelJacobian jacobian(const PolarPosition &target) const;

        const ArrayConfig &config() const { return *cfg_; }
        const RotationState &rotation() const { return rot_; }

    private:
        const ArrayConfig *cfg_;
        RotationState rot_;
        mat2 rot_mat_;
        mat2 rot_dot_;
        std::vector<vec2> local_pos_;   // c_bar_n
        std::vector<vec2> pos_;         // c_n
        std::vector<vec2> boresight_;   // f_bar_n = R f_n
        std::vector<vec2> bore_darr_;   // R_dot f_n
        std::vector<vec2> bore_dvar_;   // R f_dot_n
        std::vector<double> index_;     // m_n
        double phase_scale_;            // 2 pi d / lambda
        double sqrt_g0_;
    };

    /// 10 log10 |h^H w|^2 at the probe position, floored at beam_gain_floor_db.
    inline constexpr double beam_gain_floor_db = -200.0;
    double beam_gain(const ArrayConfig &cfg, const RotationState &rot, const cvec &w, double eval_angle, double eval_range);
}
