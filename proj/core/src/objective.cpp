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

#include "rasec/objective.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rasec
{
    cmat leakage_covariance(std::span<const ChannelVector> eavs, std::span<const double> weights)
    {
        if (eavs.size() != weights.size())
            throw std::invalid_argument("leakage_covariance: channel and weight counts differ.");
        if (eavs.empty())
            throw std::invalid_argument("leakage_covariance: no eavesdropper samples.");
        const Eigen::Index n = eavs.front().size();
        cmat s = cmat::Zero(n, n);
        for (std::size_t m = 0; m < eavs.size(); ++m)
            s.noalias() += weights[m] * (eavs[m] * eavs[m].adjoint());
        // exact Hermitian symmetry
        return 0.5 * (s + s.adjoint());
    }

    ObjectiveContext make_context(std::vector<ChannelVector> users, std::vector<ChannelVector> eavs,
                                  std::vector<double> weights, double beta_sm)
    {
        if (users.empty())
            throw std::invalid_argument("make_context: need at least one user.");
        if (!(beta_sm > 0.0))
            throw std::invalid_argument("make_context: smoothing factor must be positive.");
        ObjectiveContext ctx;
        ctx.leakage_covariance = leakage_covariance(eavs, weights);
        ctx.user_channels = std::move(users);
        ctx.eav_channels = std::move(eavs);
        ctx.weights = std::move(weights);
        ctx.beta_sm = beta_sm;
        return ctx;
    }

    ObjectiveContext build_context(const ArrayConfig &cfg, const RotationState &rot, const Scene &scene,
                                   const SensingOutcome &region, double beta_sm)
    {
        const RotatedArray array(cfg, rot);
        std::vector<ChannelVector> users;
        users.reserve(scene.users.size());
        for (const auto &u : scene.users)
            users.push_back(array.channel(u));
        std::vector<ChannelVector> eavs;
        eavs.reserve(region.sampled_angles.size());
        for (double theta : region.sampled_angles)
            eavs.push_back(array.channel({scene.eavesdropper.range, theta}));
        return make_context(std::move(users), std::move(eavs), region.weights, beta_sm);
    }

    double user_rate(const cvec &w, const ChannelVector &h, const LinkBudget &lb)
    {
        return std::log2(1.0 + lb.gamma() * std::norm(h.dot(w)));
    }

    double weighted_eav_rate(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb)
    {
        double r = 0.0;
        for (std::size_t m = 0; m < ctx.eav_channels.size(); ++m)
            r += ctx.weights[m] * user_rate(w, ctx.eav_channels[m], lb);
        return r;
    }

    double surrogate_eav_rate(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb)
    {
        const cplx q = w.dot(ctx.leakage_covariance * w);
        return std::log2(1.0 + lb.gamma() * std::max(q.real(), 0.0));
    }

    std::vector<double> surrogate_secrecy(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb)
    {
        const double leak = surrogate_eav_rate(w, ctx, lb);
        std::vector<double> c(ctx.user_channels.size());
        for (std::size_t k = 0; k < c.size(); ++k)
            c[k] = user_rate(w, ctx.user_channels[k], lb) - leak;
        return c;
    }

    double softmin(std::span<const double> c, double beta, std::vector<double> *omega)
    {
        if (c.empty())
            throw std::invalid_argument("softmin: empty input.");
        const double lo = *std::min_element(c.begin(), c.end());
        double sum = 0.0;
        if (omega)
            omega->resize(c.size());
        for (std::size_t k = 0; k < c.size(); ++k)
        {
            const double e = std::exp(-beta * (c[k] - lo));
            sum += e;
            if (omega)
                (*omega)[k] = e;
        }
        if (omega)
            for (double &o : *omega)
                o /= sum;
        return lo - std::log(sum) / beta;
    }

    double softmin_objective(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb)
    {
        const auto c = surrogate_secrecy(w, ctx, lb);
        return softmin(c, ctx.beta_sm);
    }

    double surrogate_min_secrecy(const cvec &w, const ObjectiveContext &ctx, const LinkBudget &lb)
    {
        const auto c = surrogate_secrecy(w, ctx, lb);
        return *std::min_element(c.begin(), c.end());
    }

    double evaluate_true_secrecy(const cvec &w, const RotationState &rot, const ArrayConfig &cfg, const Scene &scene,
                                 const PolarPosition &true_eav, const LinkBudget &lb)
    {
        const RotatedArray array(cfg, rot);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto &u : scene.users)
            worst = std::min(worst, user_rate(w, array.channel(u), lb));
        const double leak = user_rate(w, array.channel(true_eav), lb);
        return std::max(worst - leak, 0.0);
    }
}
