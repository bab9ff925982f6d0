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

#include <array>
#include <complex>
#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "shotplan/pauli.hpp"
#include "shotplan/rng.hpp"

namespace shotplan {

/// Dense 2-qubit state. Amplitude index b is read as bits (qubit1, qubit0),
/// i.e. bit k of b belongs to qubit k.
struct Statevector {
    std::array<std::complex<double>, 4> amp{};

    double norm() const;
};

/// The eight rotation angles of the Ry-Rz ansatz, radians.
struct AnsatzParams {
    std::array<double, 8> theta{};

    friend bool operator==(const AnsatzParams&, const AnsatzParams&) = default;
};

/// Prepares the trial state from |00>: Ry(t0) q0, Ry(t1) q1; Rz(t2) q0,
/// Rz(t3) q1; CNOT (control q0, target q1); Ry(t4) q0, Ry(t5) q1; Rz(t6) q0,
/// Rz(t7) q1. Ry(t) = exp(-i t Y/2), Rz(t) = exp(-i t Z/2).
Statevector prepare_ansatz(const AnsatzParams& params);

/// <psi|H|psi> via the dense 4x4 matrix. Requires |norm - 1| <= 1e-6.
double exact_expectation(const Statevector& state, const Hamiltonian& h);

/// Outcome probabilities of a projective measurement in the group basis.
/// Z basis: |amp_b|^2. X basis: probabilities after H (x) H.
std::array<double, 4> basis_probabilities(const Statevector& state,
                                          MeasurementBasis basis);

/// Measurement counts over the four outcomes b = 0..3.
using Counts = std::array<std::int64_t, 4>;

/// Multinomial draw of `shots` outcomes by per-shot inverse CDF. The method
/// consumes exactly one uniform per shot, so the counts are a pure function
/// of (probs, shots, seed).
Counts sample_counts(const std::array<double, 4>& probs, std::int64_t shots,
                     Rng& rng);

void to_json(nlohmann::json& j, const AnsatzParams& p);
void from_json(const nlohmann::json& j, AnsatzParams& p);

}  // namespace shotplan
