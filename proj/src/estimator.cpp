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

#include "shotplan/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shotplan/errors.hpp"

namespace shotplan {

namespace {

std::vector<std::int64_t> allocate_by_shares(const std::vector<double>& shares,
                                             std::int64_t total) {
    const std::size_t k = shares.size();
    if (k == 0) throw std::invalid_argument("Hamiltonian has no groups");
    if (total < static_cast<std::int64_t>(k)) {
        throw std::invalid_argument("total shots below group count");
    }
    std::vector<std::int64_t> shots(k, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double quota = static_cast<double>(total) * shares[i];
        shots[i] = static_cast<std::int64_t>(std::floor(quota));
        assigned += shots[i];
        remainders.emplace_back(quota - std::floor(quota), i);
    }
    // Largest remainder first; index breaks ties deterministically.
    std::sort(remainders.begin(), remainders.end(), [](auto a, auto b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::int64_t left = total - assigned; left > 0; --left) {
        ++shots[remainders[(total - assigned - left) % k].second];
    }
    // Feasibility floor: every group measures at least once.
    for (std::size_t i = 0; i < k; ++i) {
        while (shots[i] == 0) {
            const auto donor = std::max_element(shots.begin(), shots.end());
            --(*donor);
            ++shots[i];
        }
    }
    return shots;
}

}  // namespace

std::vector<std::int64_t> allocate_shots(const Hamiltonian& h,
                                         std::int64_t total) {
    const std::size_t k = h.group_count();
    const double weight_sum = h.total_weight();
    std::vector<double> shares(k, k > 0 ? 1.0 / static_cast<double>(k) : 0.0);
    if (weight_sum > 0.0) {
        for (std::size_t i = 0; i < k; ++i) {
            shares[i] = h.groups[i].weight() / weight_sum;
        }
    }
    return allocate_by_shares(shares, total);
}

std::vector<std::int64_t> allocate_shots_equal(const Hamiltonian& h,
                                               std::int64_t total) {
    const std::size_t k = h.group_count();
    const std::vector<double> shares(
        k, k > 0 ? 1.0 / static_cast<double>(k) : 0.0);
    return allocate_by_shares(shares, total);
}

namespace {

/// Eigenvalue of a word on outcome b in its group basis: product of
/// (-1)^{bit q} over the word's non-identity factors.
double outcome_eigenvalue(const PauliWord& word, int b) {
    double e = 1.0;
    for (int q = 0; q < 2; ++q) {
        if (word.factors[q] != Pauli::I && ((b >> q) & 1)) e = -e;
    }
    return e;
}

double group_energy(const MeasurementGroup& group, const Counts& counts) {
    const std::int64_t total =
        std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    if (total < 1) {
        throw InsufficientData("no shots recorded for " +
                               std::string(basis_name(group.basis)));
    }
    double energy = 0.0;
    for (const auto& term : group.terms) {
        double expectation = 0.0;
        for (int b = 0; b < 4; ++b) {
            expectation += static_cast<double>(counts[b]) *
                           outcome_eigenvalue(term.word, b);
        }
        energy += term.coefficient * expectation / static_cast<double>(total);
    }
    return energy;
}

}  // namespace

double expectation_from_counts(const Counts& counts_z, const Counts& counts_x,
                               const Hamiltonian& h) {
    double energy = h.constant;
    for (const auto& group : h.groups) {
        const Counts& counts =
            group.basis == MeasurementBasis::Z ? counts_z : counts_x;
        energy += group_energy(group, counts);
    }
    return energy;
}

namespace {

EnergyEstimate sample_state(const Statevector& state, const Hamiltonian& h,
                            std::int64_t total_shots, Rng& rng) {
    const auto allocation = allocate_shots(h, total_shots);
    double energy = h.constant;
    for (std::size_t i = 0; i < h.groups.size(); ++i) {
        const auto probs = basis_probabilities(state, h.groups[i].basis);
        const Counts counts = sample_counts(probs, allocation[i], rng);
        energy += group_energy(h.groups[i], counts);
    }
    return EnergyEstimate{energy, total_shots, std::nullopt};
}

}  // namespace

EnergyEstimate estimate_energy(const AnsatzParams& params, const Hamiltonian& h,
                               std::int64_t total_shots, Rng& rng) {
    return sample_state(prepare_ansatz(params), h, total_shots, rng);
}

EnergyEstimate estimate_energy(const Statevector& state, const Hamiltonian& h,
                               std::int64_t total_shots, Rng& rng) {
    return sample_state(state, h, total_shots, rng);
}

EnergyEstimate final_estimate(const AnsatzParams& params, const Hamiltonian& h,
                              std::int64_t m, Rng& rng) {
    return final_estimate(prepare_ansatz(params), h, m, rng);
}

EnergyEstimate final_estimate(const Statevector& state, const Hamiltonian& h,
                              std::int64_t m, Rng& rng) {
    EnergyEstimate est = sample_state(state, h, m, rng);
    est.epsilon = accuracy_for_shots(h, m);
    return est;
}

void to_json(nlohmann::json& j, const EnergyEstimate& e) {
    j = nlohmann::json{{"value", e.value}, {"shots_used", e.shots_used}};
    if (e.epsilon) j["epsilon"] = *e.epsilon;
    if (!std::isfinite(e.value)) j["value"] = nullptr;  // aborted-run sentinel
}

void from_json(const nlohmann::json& j, EnergyEstimate& e) {
    e.value = j.at("value").is_null()
                  ? std::numeric_limits<double>::infinity()
                  : j.at("value").get<double>();
    e.shots_used = j.at("shots_used").get<std::int64_t>();
    e.epsilon = j.contains("epsilon")
                    ? std::optional<double>(j.at("epsilon").get<double>())
                    : std::nullopt;
}

}  // namespace shotplan
