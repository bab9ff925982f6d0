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

#include "shotplan/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace shotplan {

namespace {

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("invalid Pauli letter '") +
                                        c + "'");
    }
}

bool diagonal_in(const PauliWord& w, MeasurementBasis basis) {
    const Pauli allowed = basis == MeasurementBasis::Z ? Pauli::Z : Pauli::X;
    return std::ranges::all_of(w.factors, [&](Pauli p) {
        return p == Pauli::I || p == allowed;
    });
}

}  // namespace

PauliWord PauliWord::from_str(std::string_view s) {
    if (s.size() != 2) {
        throw std::invalid_argument("Pauli word must have exactly 2 factors: '" +
                                    std::string(s) + "'");
    }
    return PauliWord{{pauli_from_char(s[0]), pauli_from_char(s[1])}};
}

std::string_view basis_name(MeasurementBasis basis) {
    return basis == MeasurementBasis::Z ? "Z-basis" : "X-basis";
}

double MeasurementGroup::weight() const {
    double sum_sq = 0.0;
    for (const auto& t : terms) {
        if (!t.word.is_identity()) sum_sq += t.coefficient * t.coefficient;
    }
    return std::sqrt(sum_sq);
}

Hamiltonian Hamiltonian::from_terms(std::vector<PauliTerm> terms) {
    Hamiltonian h;
    MeasurementGroup z_group{MeasurementBasis::Z, {}};
    MeasurementGroup x_group{MeasurementBasis::X, {}};
    for (const auto& t : terms) {
        if (!std::isfinite(t.coefficient)) {
            throw std::invalid_argument("non-finite coefficient for word " +
                                        t.word.str());
        }
        if (t.word.is_identity()) {
            h.constant += t.coefficient;
        } else if (diagonal_in(t.word, MeasurementBasis::Z)) {
            z_group.terms.push_back(t);
        } else if (diagonal_in(t.word, MeasurementBasis::X)) {
            x_group.terms.push_back(t);
        } else {
            throw std::invalid_argument(
                "word " + t.word.str() +
                " is diagonal in neither the Z nor the X basis; only "
                "Z-group/X-group Hamiltonians are supported");
        }
    }
    h.terms = std::move(terms);
    if (!z_group.terms.empty()) h.groups.push_back(std::move(z_group));
    if (!x_group.terms.empty()) h.groups.push_back(std::move(x_group));
    return h;
}

double Hamiltonian::total_weight() const {
    double sum = 0.0;
    for (const auto& g : groups) sum += g.weight();
    return sum;
}

Hamiltonian h2_hamiltonian() {
    // Bond distance 0.725 A.
    constexpr double c0 = -1.05016;
    constexpr double c1 = 0.40421;
    constexpr double c2 = 0.01135;
    constexpr double c3 = 0.18038;
    return Hamiltonian::from_terms({
        {PauliWord::from_str("II"), c0},
        {PauliWord::from_str("ZI"), c1},
        {PauliWord::from_str("IZ"), c1},
        {PauliWord::from_str("ZZ"), c2},
        {PauliWord::from_str("XX"), c3},
    });
}

std::int64_t shots_for_accuracy(const Hamiltonian& h, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    const double w = h.total_weight();
    const double raw = (w / epsilon) * (w / epsilon);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
}

double accuracy_for_shots(const Hamiltonian& h, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("shot count must be >= 1");
    const double w = h.total_weight();
    return w / std::sqrt(static_cast<double>(m));
}

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat2 factor_matrix(Pauli p) {
    const std::complex<double> i{0.0, 1.0};
    Mat2 m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -i, i, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace

Spectrum exact_spectrum(const Hamiltonian& h) {
    Eigen::Matrix4cd mat = Eigen::Matrix4cd::Zero();
    for (const auto& t : h.terms) {
        const Mat2 q0 = factor_matrix(t.word.factors[0]);
        const Mat2 q1 = factor_matrix(t.word.factors[1]);
        // Index b is bits (qubit1, qubit0).
        for (int row = 0; row < 4; ++row) {
            for (int col = 0; col < 4; ++col) {
                mat(row, col) += t.coefficient * q1(row >> 1, col >> 1) *
                                 q0(row & 1, col & 1);
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    Spectrum s;
    for (int i = 0; i < 4; ++i) s.eigenvalues[i] = solver.eigenvalues()(i);
    Eigen::Vector4cd ground = solver.eigenvectors().col(0);
    // Fix the global phase: largest amplitude real positive.
    int imax = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(ground(i)) > std::abs(ground(imax))) imax = i;
    }
    const std::complex<double> pivot = ground(imax);
    if (std::abs(pivot) > 0.0) ground *= std::abs(pivot) / pivot;
    for (int i = 0; i < 4; ++i) s.ground_state[i] = ground(i);
    return s;
}

void to_json(nlohmann::json& j, const Hamiltonian& h) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : h.terms) {
        terms.push_back({{"word", t.word.str()}, {"coeff", t.coefficient}});
    }
    j = nlohmann::json{{"terms", std::move(terms)}};
}

void from_json(const nlohmann::json& j, Hamiltonian& h) {
    std::vector<PauliTerm> terms;
    for (const auto& item : j.at("terms")) {
        const auto word = item.at("word").get<std::string>();
        const auto coeff = item.at("coeff").get<double>();
        terms.push_back({PauliWord::from_str(word), coeff});
    }
    h = Hamiltonian::from_terms(std::move(terms));
}

}  // namespace shotplan
