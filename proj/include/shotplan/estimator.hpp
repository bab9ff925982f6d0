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
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shotplan/pauli.hpp"
#include "shotplan/qsim.hpp"

namespace shotplan {

struct EnergyEstimate {
    double value = 0.0;           // Hartree
    std::int64_t shots_used = 0;
    // Theoretical standard error, set only by final estimation.
    std::optional<double> epsilon;
};

/// Splits `total` shots across the Hamiltonian's groups proportionally to
/// their weights, largest-remainder rounded so the counts sum to `total` and
/// every group receives at least one shot. Requires total >= group count.
std::vector<std::int64_t> allocate_shots(const Hamiltonian& h,
                                         std::int64_t total);

/// Equal-share alternative to the weight-proportional default; same
/// largest-remainder rounding and floor.
std::vector<std::int64_t> allocate_shots_equal(const Hamiltonian& h,
                                               std::int64_t total);

/// Energy from measured counts: constant + sum_j c_j <O_j>, where each word's
/// expectation is the count-frequency average of its (-1)^{bits} eigenvalue
/// in the owning group's basis. Each group with terms needs >= 1 shot.
double expectation_from_counts(const Counts& counts_z, const Counts& counts_x,
                               const Hamiltonian& h);

/// One shot-limited energy evaluation of the ansatz state: prepare, allocate,
/// sample each group, reassemble. shots_used == total_shots exactly.
EnergyEstimate estimate_energy(const AnsatzParams& params, const Hamiltonian& h,
                               std::int64_t total_shots, Rng& rng);

/// Same sampling path for an explicitly given state.
EnergyEstimate estimate_energy(const Statevector& state, const Hamiltonian& h,
                               std::int64_t total_shots, Rng& rng);

/// Final estimation: identical sampling path with m shots, plus the
/// theoretical accuracy accuracy_for_shots(h, m) in `epsilon`.
EnergyEstimate final_estimate(const AnsatzParams& params, const Hamiltonian& h,
                              std::int64_t m, Rng& rng);
EnergyEstimate final_estimate(const Statevector& state, const Hamiltonian& h,
                              std::int64_t m, Rng& rng);

void to_json(nlohmann::json& j, const EnergyEstimate& e);
void from_json(const nlohmann::json& j, EnergyEstimate& e);

}  // namespace shotplan
