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

#include "shotplan/qsim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace shotplan {

namespace {

using Gate = std::array<std::array<std::complex<double>, 2>, 2>;

Gate ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{{c, -s}, {s, c}}};
}

Gate rz(double theta) {
    const std::complex<double> i{0.0, 1.0};
    return {{{std::exp(-i * (theta / 2.0)), 0.0},
             {0.0, std::exp(i * (theta / 2.0))}}};
}

const Gate kHadamard = {{{std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0},
                         {std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0}}};

void apply_single(Statevector& state, const Gate& g, int qubit) {
    const int mask = 1 << qubit;
    for (int b = 0; b < 4; ++b) {
        if (b & mask) continue;
        const auto a0 = state.amp[b];
        const auto a1 = state.amp[b | mask];
        state.amp[b] = g[0][0] * a0 + g[0][1] * a1;
        state.amp[b | mask] = g[1][0] * a0 + g[1][1] * a1;
    }
}

void check_normalized(const Statevector& state) {
    if (std::abs(state.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("state is not normalized");
    }
}

}  // namespace

double Statevector::norm() const {
    double sum = 0.0;
    for (const auto& a : amp) sum += std::norm(a);
    return std::sqrt(sum);
}

Statevector prepare_ansatz(const AnsatzParams& params) {
    const auto& t = params.theta;
    Statevector state;
    state.amp[0] = 1.0;
    apply_single(state, ry(t[0]), 0);
    apply_single(state, ry(t[1]), 1);
    apply_single(state, rz(t[2]), 0);
    apply_single(state, rz(t[3]), 1);
    // CNOT, control qubit 0, target qubit 1: b=1 <-> b=3.
    std::swap(state.amp[1], state.amp[3]);
    apply_single(state, ry(t[4]), 0);
    apply_single(state, ry(t[5]), 1);
    apply_single(state, rz(t[6]), 0);
    apply_single(state, rz(t[7]), 1);
    return state;
}

double exact_expectation(const Statevector& state, const Hamiltonian& h) {
    check_normalized(state);
    // <psi|H|psi> = constant + sum over non-identity words; each word is
    // applied directly instead of forming the dense matrix.
    std::complex<double> acc = 0.0;
    for (const auto& term : h.terms) {
        if (term.word.is_identity()) {
            acc += term.coefficient;
            continue;
        }
        Statevector applied = state;
        for (int q = 0; q < 2; ++q) {
            const int mask = 1 << q;
            switch (term.word.factors[q]) {
                case Pauli::I: break;
                case Pauli::X:
                    for (int b = 0; b < 4; ++b) {
                        if (!(b & mask)) std::swap(applied.amp[b], applied.amp[b | mask]);
                    }
                    break;
                case Pauli::Y:
                    for (int b = 0; b < 4; ++b) {
                        if (!(b & mask)) {
                            const auto a0 = applied.amp[b];
                            const auto a1 = applied.amp[b | mask];
                            applied.amp[b] = std::complex<double>{0, -1} * a1;
                            applied.amp[b | mask] = std::complex<double>{0, 1} * a0;
                        }
                    }
                    break;
                case Pauli::Z:
                    for (int b = 0; b < 4; ++b) {
                        if (b & mask) applied.amp[b] = -applied.amp[b];
                    }
                    break;
            }
        }
        std::complex<double> braket = 0.0;
        for (int b = 0; b < 4; ++b) {
            braket += std::conj(state.amp[b]) * applied.amp[b];
        }
        acc += term.coefficient * braket;
    }
    if (std::abs(acc.imag()) > 1e-10) {
        throw std::logic_error("expectation has a non-negligible imaginary part");
    }
    return acc.real();
}

std::array<double, 4> basis_probabilities(const Statevector& state,
                                          MeasurementBasis basis) {
    check_normalized(state);
    Statevector rotated = state;
    if (basis == MeasurementBasis::X) {
        apply_single(rotated, kHadamard, 0);
        apply_single(rotated, kHadamard, 1);
    }
    std::array<double, 4> probs{};
    for (int b = 0; b < 4; ++b) probs[b] = std::norm(rotated.amp[b]);
    return probs;
}

Counts sample_counts(const std::array<double, 4>& probs, std::int64_t shots,
                     Rng& rng) {
    if (shots < 0) throw std::invalid_argument("shots must be >= 0");
    double sum = 0.0;
    for (double p : probs) {
        if (p < -1e-12) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("probabilities must sum to 1");
    }
    std::array<double, 4> cum{};
    double running = 0.0;
    for (int b = 0; b < 4; ++b) {
        running += std::max(probs[b], 0.0);
        cum[b] = running;
    }
    Counts counts{};
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * sum;
        int b = 0;
        while (b < 3 && u >= cum[b]) ++b;
        ++counts[b];
    }
    return counts;
}

void to_json(nlohmann::json& j, const AnsatzParams& p) {
    j = p.theta;
}

void from_json(const nlohmann::json& j, AnsatzParams& p) {
    if (!j.is_array() || j.size() != 8) {
        throw std::invalid_argument("ansatz params must be 8 angles");
    }
    for (std::size_t i = 0; i < 8; ++i) p.theta[i] = j[i].get<double>();
}

}  // namespace shotplan
