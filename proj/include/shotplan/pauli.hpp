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
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace shotplan {

/// Chemical precision in Hartree, the accuracy unit used throughout.
inline constexpr double kChemicalPrecision = 0.0015;

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Two-qubit Pauli word. factors[0] acts on qubit 0 (the leftmost letter in
/// the string form), factors[1] on qubit 1. Bit k of a measurement outcome
/// reports qubit k, and the Z eigenvalue on qubit k is (-1)^{bit k}.
struct PauliWord {
    std::array<Pauli, 2> factors{Pauli::I, Pauli::I};

    bool is_identity() const {
        return factors[0] == Pauli::I && factors[1] == Pauli::I;
    }

    std::string str() const {
        return {static_cast<char>(factors[0]), static_cast<char>(factors[1])};
    }

    /// Parses e.g. "ZI"; anything but two letters from {I,X,Y,Z} is rejected.
    static PauliWord from_str(std::string_view s);

    friend bool operator==(const PauliWord&, const PauliWord&) = default;
};

struct PauliTerm {
    PauliWord word;
    double coefficient = 0.0;  // Hartree
};

enum class MeasurementBasis { Z, X };

std::string_view basis_name(MeasurementBasis basis);

/// Terms that are simultaneously diagonal in one measurement basis.
struct MeasurementGroup {
    MeasurementBasis basis = MeasurementBasis::Z;
    std::vector<PauliTerm> terms;

    /// sqrt of the summed squared coefficients of the non-identity terms;
    /// identity terms carry no variance and do not contribute.
    double weight() const;
};

/// Weighted sum of two-qubit Pauli words with its measurement grouping.
/// Identity coefficients are folded into `constant`; the groups partition the
/// non-identity terms. Immutable after construction.
struct Hamiltonian {
    std::vector<PauliTerm> terms;
    std::vector<MeasurementGroup> groups;
    double constant = 0.0;  // Hartree

    /// Builds the grouping: words over {I,Z} go to the Z group, words over
    /// {I,X} to the X group. Words measurable in neither basis (any Y, or
    /// mixed X/Z) are rejected; general commutation grouping is out of scope.
    static Hamiltonian from_terms(std::vector<PauliTerm> terms);

    std::size_t group_count() const { return groups.size(); }

    /// Sum of group weights, the sqrt-variance factor of the shot-cost
    /// formula.
    double total_weight() const;
};

/// The 2-qubit H2 Hamiltonian at 0.725 A bond distance.
Hamiltonian h2_hamiltonian();

/// Shots needed so the standard error of the grouped estimator is at most
/// epsilon: ceil((sum of group weights)^2 / epsilon^2). Per-group variance is
/// bounded by the diagonal sum of squared coefficients; cross-word
/// covariances average to zero over random states and are dropped.
std::int64_t shots_for_accuracy(const Hamiltonian& h, double epsilon);

/// Inverse of shots_for_accuracy up to the ceiling: the standard error
/// achievable with m shots.
double accuracy_for_shots(const Hamiltonian& h, std::int64_t m);

struct Spectrum {
    std::array<double, 4> eigenvalues{};  // ascending
    std::array<std::complex<double>, 4> ground_state{};
};

/// Dense diagonalization of the 4x4 Hermitian matrix assembled from the
/// terms. Also exposes the ground eigenvector (phase fixed so the largest
/// amplitude is real positive).
Spectrum exact_spectrum(const Hamiltonian& h);

/// JSON form: {"terms": [{"word": "ZI", "coeff": -1.05}, ...]}.
void to_json(nlohmann::json& j, const Hamiltonian& h);
void from_json(const nlohmann::json& j, Hamiltonian& h);

}  // namespace shotplan
