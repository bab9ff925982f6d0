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
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shotplan/bench.hpp"
#include "shotplan/metaplan.hpp"

namespace shotplan {

struct CampaignRun {
    TrialRecord trial;
    EnergyEstimate estimate;  // final estimation at plan.m; +inf if aborted
};

/// Executing a plan end to end: r runs, final estimation of each, selection
/// of the lowest final estimate.
struct CampaignResult {
    MetaPlan plan;
    std::vector<CampaignRun> runs;
    int selected_index = 0;
    double selected_energy = 0.0;       // the winning final estimate
    double selected_true_energy = 0.0;  // exact grading of the winner
    std::int64_t total_shots_spent = 0;
    std::int64_t probe_overhead = 0;  // calibration shots beyond the budget
};

/// Runs plan.r independent trials (trial i seeded with derive_seed(
/// master_seed, i)), each with optimization budget plan.n and a final
/// estimation of plan.m shots from the same per-trial stream. base_config
/// supplies the SPSA schedule; its shots_per_eval is overridden with
/// plan.n / (2 * maxiter). Aborted runs stay in the result with a +inf
/// estimate; selection takes the minimum final estimate, ties to the lowest
/// index.
CampaignResult run_campaign(const MetaPlan& plan, const Hamiltonian& h,
                            const SpsaConfig& base_config,
                            std::uint64_t master_seed, int workers = 1);

void to_json(nlohmann::json& j, const CampaignResult& r);
void from_json(const nlohmann::json& j, CampaignResult& r);

}  // namespace shotplan
