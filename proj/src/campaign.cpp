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

#include "shotplan/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "shotplan/errors.hpp"

namespace shotplan {

namespace {

CampaignRun execute_run(const SpsaConfig& config, const Hamiltonian& h,
                        const MetaPlan& plan, std::uint64_t seed) {
    Rng rng(seed);
    CampaignRun run;
    run.trial = run_trial(config, h, seed, rng);
    if (std::isfinite(run.trial.true_energy)) {
        run.estimate = final_estimate(run.trial.final_params, h, plan.m, rng);
    } else {
        run.estimate = EnergyEstimate{std::numeric_limits<double>::infinity(),
                                      0, std::nullopt};
    }
    return run;
}

}  // namespace

CampaignResult run_campaign(const MetaPlan& plan, const Hamiltonian& h,
                            const SpsaConfig& base_config,
                            std::uint64_t master_seed, int workers) {
    if (plan.r < 1) throw std::invalid_argument("plan has no repetitions");
    if (plan.n < 1 || plan.m < static_cast<std::int64_t>(h.group_count())) {
        throw std::invalid_argument("plan shot counts are infeasible");
    }

    SpsaConfig config = base_config;
    config.shots_per_eval =
        std::max<std::int64_t>(static_cast<std::int64_t>(h.group_count()),
                               plan.n / (2LL * config.maxiter));
    config.validate(h.group_count());

    CampaignResult result;
    result.plan = plan;
    result.runs.resize(static_cast<std::size_t>(plan.r));

    const auto run_range = [&](std::int64_t begin, std::int64_t step) {
        for (std::int64_t i = begin; i < plan.r; i += step) {
            result.runs[static_cast<std::size_t>(i)] = execute_run(
                config, h, plan, derive_seed(master_seed,
                                             static_cast<std::uint64_t>(i)));
        }
    };
    workers = std::clamp<int>(workers, 1, static_cast<int>(plan.r));
    if (workers == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(run_range, t, workers);
        }
        for (auto& th : pool) th.join();
    }

    const std::int64_t optimization_budget = 2LL * config.maxiter * config.shots_per_eval;
    result.selected_index = 0;
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        const auto& run = result.runs[i];
        result.total_shots_spent += run.trial.shots_used + run.estimate.shots_used;
        result.probe_overhead +=
            std::max<std::int64_t>(0, run.trial.shots_used - optimization_budget);
        if (run.estimate.value <
            result.runs[static_cast<std::size_t>(result.selected_index)].estimate.value) {
            result.selected_index = static_cast<int>(i);
        }
    }
    const auto& winner = result.runs[static_cast<std::size_t>(result.selected_index)];
    result.selected_energy = winner.estimate.value;
    result.selected_true_energy = winner.trial.true_energy;
    return result;
}

void to_json(nlohmann::json& j, const CampaignResult& r) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : r.runs) {
        runs.push_back({{"trial", run.trial}, {"estimate", run.estimate}});
    }
    j = nlohmann::json{
        {"plan", r.plan},
        {"runs", std::move(runs)},
        {"selected_index", r.selected_index},
        {"selected_energy", r.selected_energy},
        {"selected_true_energy", r.selected_true_energy},
        {"total_shots_spent", r.total_shots_spent},
        {"probe_overhead", r.probe_overhead},
    };
    if (!std::isfinite(r.selected_energy)) j["selected_energy"] = nullptr;
    if (!std::isfinite(r.selected_true_energy)) {
        j["selected_true_energy"] = nullptr;
    }
}

void from_json(const nlohmann::json& j, CampaignResult& r) {
    r.plan = j.at("plan").get<MetaPlan>();
    r.runs.clear();
    for (const auto& item : j.at("runs")) {
        CampaignRun run;
        run.trial = item.at("trial").get<TrialRecord>();
        run.estimate = item.at("estimate").get<EnergyEstimate>();
        r.runs.push_back(std::move(run));
    }
    r.selected_index = j.at("selected_index").get<int>();
    auto energy_or_inf = [&](const char* key) {
        return j.at(key).is_null() ? std::numeric_limits<double>::infinity()
                                   : j.at(key).get<double>();
    };
    r.selected_energy = energy_or_inf("selected_energy");
    r.selected_true_energy = energy_or_inf("selected_true_energy");
    r.total_shots_spent = j.at("total_shots_spent").get<std::int64_t>();
    r.probe_overhead = j.value("probe_overhead", std::int64_t{0});
}

}  // namespace shotplan
