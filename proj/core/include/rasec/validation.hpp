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

#include <iosfwd>
#include <string>
#include <vector>

#include "rasec/experiment.hpp"

namespace rasec
{
    /// Outcome of one numerical self-check.
    struct ValidationCheck
    {
        std::string name;
        double value = 0.0;     // measured discrepancy or ratio
        double threshold = 0.0; // pass bound
        bool passed = false;
        std::string detail;
    };

    /// Analytic gradients (beamformer, array rotation, element rotations) against central
    /// differences at a random feasible point of trial 0.
    std::vector<ValidationCheck> check_gradients(const ExperimentConfig &cfg);

    /// Closed-form CRB against the inverse of a Fisher matrix assembled from
    /// finite-difference derivatives of the noiseless echo.
    ValidationCheck check_crb_closed_form(const ExperimentConfig &cfg, double theta);

    /// Monte-Carlo MSE of the estimator divided by the CRB at the configured eavesdropper.
    ValidationCheck check_estimator_efficiency(const ExperimentConfig &cfg, int n_realizations);

    /// Jensen upper bound and softmin bracket at random beamformers.
    std::vector<ValidationCheck> check_surrogate_bounds(const ExperimentConfig &cfg);

    std::vector<ValidationCheck> run_validation(const ExperimentConfig &cfg, int n_realizations = 200);

    /// One line per check; returns true when all passed.
    bool print_checks(std::ostream &out, const std::vector<ValidationCheck> &checks);
}
