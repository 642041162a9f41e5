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

#include <span>
#include <vector>

#include "rasec/geometry.hpp"
#include "rasec/sensing.hpp"

namespace rasec
{
    struct LinkBudget
    {
        double tx_power = dbm_to_watt(10.0);     // P_t [W]
        double noise_power = dbm_to_watt(-107.0); // sigma^2 [W]

        double gamma() const { return tx_power / noise_power; }
    };

    /// Channels and leakage covariance under one rotation state. Immutable once built;
    /// rebuild whenever (phi_arr, varphi) change.
    struct ObjectiveContext
    {
        std::vector<ChannelVector> user_channels;
        std::vector<ChannelVector> eav_channels; // one per sampled eavesdropper angle
        std::vector<double> weights;             // mu_m
        cmat leakage_covariance;                 // S = sum_m mu_m h_m h_m^H
        double beta_sm = 1.0;
    };

    /// Builds the context for the users of `scene` and the eavesdropper sampled at
    /// `region.sampled_angles` on the known eavesdropper range.
    ObjectiveContext build_context(const ArrayConfig &cfg, const RotationState &rot, const Scene &scene,
                                   const SensingOutcome &region, double beta_sm);

    /// Context from explicit channels; S is assembled from them.
    ObjectiveContext make_context(std::vector<ChannelVector> users, std::vector<ChannelVector> eavs,
                                  std::vector<double> weights, double beta_sm);

    cmat leakage_covariance(std::span<const ChannelVector> eavs, std::span<const double> weights);

    double user_rate(const cvec &w, const ChannelVector &h, const LinkBudget &lb);
    double weighted_eav_rate(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb);
    /// log2(1 + gamma w^H S w), an upper bound of the weighted eavesdropper rate.
    double surrogate_eav_rate(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb);

    /// Surrogate secrecy values c_k = R_k - R_e~ for every user.
    std::vector<double> surrogate_secrecy(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb);

    /// -(1/beta) log sum_k exp(-beta c_k), max-shift stabilized. If `omega` is given it
    /// receives the softmin weights (summing to one).
    double softmin(std::span<const double> c, double beta, std::vector<double> *omega = nullptr);

    /// Smoothed surrogate objective G(w, phi_arr, varphi) for a context built under the
    /// rotation of interest.
    double softmin_objective(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb);

    /// min_k (R_k - R_e~) without smoothing.
    double surrogate_min_secrecy(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb);

    /// [min_k R_k - R_e(true position)]_+ : the reported secrecy rate.
    double evaluate_true_secrecy(const cvec &w, const RotationState &rot, const ArrayConfig &cfg, const Scene &scene,
                                 const PolarPosition &true_eav, const LinkBudget &lb);
}
