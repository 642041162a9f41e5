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

#include <cstdint>
#include <vector>

#include "rasec/geometry.hpp"

namespace rasec
{
    /// Beam-sweep sensing stage parameters.
    struct SensingConfig
    {
        int n_beams = 128;                         // L, must be >= n_tx
        double sensing_power = dbm_to_watt(10.0);  // P_s [W]
        double noise_power = dbm_to_watt(-107.0);  // sigma_s^2 [W]
        double rcs = db_to_linear(7.0);            // alpha [m^2]
        std::vector<double> search_grid = sin_uniform_grid(2048);
        bool refine = true;                        // golden-section refinement around the grid argmax

        /// `points` angles uniformly spaced in sin(theta) over (-1, 1), strictly increasing.
        static std::vector<double> sin_uniform_grid(int points);

        void validate(const ArrayConfig &cfg) const;
    };

    /// Estimated eavesdropper direction with its CRB-derived angular uncertainty region.
    struct SensingOutcome
    {
        double theta_hat = 0.0;
        double crb = 0.0;   // rad^2
        double xi_lo = 0.0; // theta_hat - 3 sqrt(crb)
        double xi_hi = 0.0; // theta_hat + 3 sqrt(crb)
        std::vector<double> sampled_angles;
        std::vector<double> weights; // Gaussian weights, sum to one
    };

    /// Stacked echoes Y (n_rx x L) and the probing matrix X (n_tx x L).
    struct EchoData
    {
        cmat y;
        cmat x;
    };

    double codebook_angle(int l, int n_beams); // 0-based beam index

    /// DFT codebook as an n_tx x L matrix whose columns are transmit steering vectors.
    /// Throws if L < n_tx, where the probing covariance is no longer a scaled identity.
    cmat dft_codebook(int n_beams, int n_tx);

    /// Effective transmit response b(theta) in the sensing reference configuration
    /// (phi_arr = 0 and all varphi_n = 0), and its derivative with respect to theta.
    cvec sensing_response(double theta, const ArrayConfig &cfg);
    cvec sensing_response_derivative(double theta, const ArrayConfig &cfg);
    cvec receive_steering_derivative(double theta, const ArrayConfig &cfg);

    /// Round-trip coefficient sqrt(lambda^2 alpha / (64 pi^3 r^4)) exp(j 4 pi r / lambda).
    cplx round_trip_gain(double range, double wavelength, double rcs);

    /// Echo model Y = beta_s a_r(theta) b^H(theta) X + N with unit probing symbols and
    /// CN(0, sigma_s^2) noise entries. Deterministic in `seed`.
    EchoData simulate_echoes(double true_theta, double true_range, const SensingConfig &scfg,
                             const ArrayConfig &acfg, std::uint64_t seed);

    /// Concentrated likelihood |a_r^H Y X^H b|^2 / (b^H X X^H b).
    class MleStatistic
    {
    public:
        MleStatistic(const EchoData &echo, const ArrayConfig &cfg);

        /// Returns a negative value where b(theta) vanishes (the point is not admissible).
        double operator()(double theta) const;

    private:
        const ArrayConfig *cfg_;
        cmat yx_;   // Y X^H
        cmat xx_;   // X X^H
    };

    /// Maximum-likelihood direction on the search grid (ties to the smaller angle),
    /// optionally refined by golden-section search over the neighbouring grid cells.
    double mle_estimate(const EchoData &echo, const SensingConfig &scfg, const ArrayConfig &acfg);

    /// Closed-form Cramer-Rao bound on the direction (rad^2). Throws std::domain_error
    /// if b(theta) = 0.
    double crb(double theta, double range, const SensingConfig &scfg, const ArrayConfig &acfg);

    /// +-3 sigma region around theta_hat sampled at M >= 2 uniform angles with
    /// normalized Gaussian weights (sigma^2 = crb_value).
    SensingOutcome uncertainty_region(double theta_hat, double crb_value, int n_samples);

    /// Point-estimate model: a single sample at theta_hat with unit weight.
    SensingOutcome point_mass(double theta_hat, double crb_value);
}
