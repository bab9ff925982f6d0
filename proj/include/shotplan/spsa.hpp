// Copyright 2026 The shotplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shotplan/qsim.hpp"
#include "shotplan/rng.hpp"

namespace shotplan {

/// SPSA schedule and cost settings.
///
/// a0 == 0 requests auto-calibration: before iteration 0, ten probe gradient
/// estimates at the start point set a0 so the expected magnitude of the first
/// update is about kSpsaFirstStepTarget radians per component. Probe
/// evaluations are charged to shots_used like any other.
struct SpsaConfig {
    int maxiter = 100;
    double a0 = 0.0;              // step scale; 0 = calibrate from probes
    double c0 = 0.1;              // perturbation scale, radians
    double A = 10.0;              // stability offset (0.1 * default maxiter)
    double alpha = 0.602;         // step decay exponent
    double s_gamma = 0.101;       // perturbation decay exponent
    std::int64_t shots_per_eval = 1000;

    void validate(std::size_t group_count) const;

    friend bool operator==(const SpsaConfig&, const SpsaConfig&) = default;
};

/// First-update magnitude targeted by a0 calibration, radians.
inline constexpr double kSpsaFirstStepTarget = 0.16;
/// Probe gradient estimates used by the calibration (two evaluations each).
inline constexpr int kSpsaCalibrationProbes = 10;

struct SpsaResult {
    AnsatzParams final_params;
    std::int64_t shots_used = 0;
    double calibrated_a0 = 0.0;  // the a0 actually used
    // Per-iteration (params after update, midpoint objective value); filled
    // only when requested.
    std::vector<std::pair<AnsatzParams, double>> trace;
};

/// One stochastic objective evaluation and what it cost.
struct ObjectiveSample {
    double value = 0.0;
    std::int64_t shots = 0;
};

using Objective = std::function<ObjectiveSample(const AnsatzParams&)>;

/// Gain schedule: a_k = a0/(k+1+A)^alpha, c_k = c0/(k+1)^s_gamma.
std::pair<double, double> gain_sequences(const SpsaConfig& config, int k);

/// Minimizes the objective by simultaneous perturbation: per iteration one
/// Rademacher direction, two evaluations, and the update
/// theta_j -= a_k (y+ - y-) / (2 c_k Delta_j). Returns the last iterate.
/// Throws RunAborted (with exact shot accounting) on a non-finite objective.
SpsaResult spsa_minimize(const Objective& objective, const AnsatzParams& start,
                         const SpsaConfig& config, Rng& rng,
                         bool record_trace = false);

/// Shots one completed run consumes: 2*maxiter evaluations plus, when a0 is
/// auto-calibrated, 2*kSpsaCalibrationProbes probe evaluations.
std::int64_t nominal_run_shots(const SpsaConfig& config);

void to_json(nlohmann::json& j, const SpsaConfig& c);
void from_json(const nlohmann::json& j, SpsaConfig& c);

}  // namespace shotplan
