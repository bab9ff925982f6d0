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

#include <cmath>
#include <complex>

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace shotplan;

namespace {

// Arithmetic oracle on the published coefficients, independent of the
// grouping code.
constexpr double kC0 = -1.05016;
constexpr double kC1 = 0.40421;
constexpr double kC2 = 0.01135;
constexpr double kC3 = 0.18038;
const double kZWeight = std::sqrt(kC1 * kC1 + kC1 * kC1 + kC2 * kC2);
const double kTotalWeight = kZWeight + kC3;

}  // namespace

TEST_CASE("h2 hamiltonian layout and constants") {
    const Hamiltonian h = h2_hamiltonian();
    CHECK(h.terms.size() == 5);
    CHECK(h.constant == doctest::Approx(-1.05016).epsilon(1e-12));
    REQUIRE(h.groups.size() == 2);
    CHECK(h.groups[0].basis == MeasurementBasis::Z);
    CHECK(h.groups[0].terms.size() == 3);
    CHECK(h.groups[1].basis == MeasurementBasis::X);
    CHECK(h.groups[1].terms.size() == 1);
    CHECK(h.groups[0].weight() == doctest::Approx(0.571752).epsilon(1e-6));
    CHECK(h.groups[0].weight() == doctest::Approx(kZWeight).epsilon(1e-14));
    CHECK(h.groups[1].weight() == doctest::Approx(0.18038).epsilon(1e-12));
}

TEST_CASE("group weights ignore identity terms and term order") {
    const Hamiltonian reordered = Hamiltonian::from_terms({
        {PauliWord::from_str("XX"), kC3},
        {PauliWord::from_str("ZZ"), kC2},
        {PauliWord::from_str("II"), kC0},
        {PauliWord::from_str("IZ"), kC1},
        {PauliWord::from_str("ZI"), kC1},
    });
    const Hamiltonian h = h2_hamiltonian();
    CHECK(reordered.total_weight() == doctest::Approx(h.total_weight()).epsilon(1e-15));
    CHECK(reordered.constant == h.constant);
}

TEST_CASE("ungroupable words are rejected") {
    CHECK_THROWS_AS(Hamiltonian::from_terms({{PauliWord::from_str("XZ"), 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Hamiltonian::from_terms({{PauliWord::from_str("YI"), 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PauliWord::from_str("ZIZ"), std::invalid_argument);
    CHECK_THROWS_AS(PauliWord::from_str("Q?"), std::invalid_argument);
}

TEST_CASE("shots_for_accuracy matches the arithmetic oracle") {
    const Hamiltonian h = h2_hamiltonian();
    auto oracle = [&](double eps) {
        return static_cast<std::int64_t>(
            std::ceil(kTotalWeight * kTotalWeight / (eps * eps)));
    };
    CHECK(shots_for_accuracy(h, 0.0015) == 251424);
    CHECK(shots_for_accuracy(h, 0.0015) == oracle(0.0015));
    CHECK(shots_for_accuracy(h, 0.0075) == 10057);
    CHECK(shots_for_accuracy(h, 0.0075) == oracle(0.0075));
    CHECK(shots_for_accuracy(h, 1e6) == 1);
    CHECK_THROWS_AS(shots_for_accuracy(h, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(shots_for_accuracy(h, -1.0), std::invalid_argument);
}

TEST_CASE("accuracy_for_shots inverts the shot cost") {
    const Hamiltonian h = h2_hamiltonian();
    CHECK(accuracy_for_shots(h, 565703) == doctest::Approx(0.0010).epsilon(1e-3));
    CHECK(std::abs(accuracy_for_shots(h, 565703) - 0.0010) < 1e-6);
    const double eps = accuracy_for_shots(h, 251424);
    CHECK(eps <= 0.0015);
    CHECK(eps > 0.001499);
    for (int k = 1; k <= 5; ++k) {
        const double target = 0.0015 * k;
        CHECK(accuracy_for_shots(h, shots_for_accuracy(h, target)) <= target);
    }
    CHECK_THROWS_AS(accuracy_for_shots(h, 0), std::invalid_argument);
}

TEST_CASE("shot cost is monotone") {
    const Hamiltonian h = h2_hamiltonian();
    std::int64_t prev = shots_for_accuracy(h, 0.0001);
    for (double eps : {0.0005, 0.001, 0.005, 0.01, 0.1}) {
        const std::int64_t now = shots_for_accuracy(h, eps);
        CHECK(now <= prev);
        prev = now;
    }
    double prev_acc = accuracy_for_shots(h, 1);
    for (std::int64_t m : {10LL, 100LL, 10000LL, 1000000LL}) {
        const double now = accuracy_for_shots(h, m);
        CHECK(now <= prev_acc);
        prev_acc = now;
    }
}

TEST_CASE("exact_spectrum of h2") {
    const Hamiltonian h = h2_hamiltonian();
    const Spectrum s = exact_spectrum(h);
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.86711).epsilon(1e-4));
    for (int i = 0; i < 3; ++i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i + 1]);

    // Trace identity: non-identity Pauli words are traceless.
    double trace = 0.0;
    for (double e : s.eigenvalues) trace += e;
    CHECK(trace == doctest::Approx(4.0 * h.constant).epsilon(1e-10));

    // Ground eigenvector from the 2x2 block over span{|00>, |11>}:
    // [[c0+2c1+c2, c3], [c3, c0-2c1+c2]], an independent closed-form oracle.
    const double diag_00 = kC0 + 2 * kC1 + kC2;
    const double diag_11 = kC0 - 2 * kC1 + kC2;
    const double mid = 0.5 * (diag_00 + diag_11);
    const double half_gap = 0.5 * (diag_00 - diag_11);
    const double radius = std::sqrt(half_gap * half_gap + kC3 * kC3);
    const double ground_energy = mid - radius;
    CHECK(s.eigenvalues[0] == doctest::Approx(ground_energy).epsilon(1e-12));
    // Eigenvector (sin t, cos t) with tan(2t) = c3 / half_gap, lower branch.
    const double t = 0.5 * std::atan2(kC3, half_gap);
    const double amp_00 = -std::sin(t);
    const double amp_11 = std::cos(t);
    CHECK(std::abs(s.ground_state[0]) == doctest::Approx(std::abs(amp_00)).epsilon(1e-6));
    CHECK(std::abs(s.ground_state[3]) == doctest::Approx(std::abs(amp_11)).epsilon(1e-6));
    CHECK(std::abs(s.ground_state[0].real()) == doctest::Approx(0.10955).epsilon(1e-3));
    CHECK(std::abs(s.ground_state[3].real()) == doctest::Approx(0.99398).epsilon(1e-4));
    CHECK(std::abs(s.ground_state[1]) < 1e-9);
    CHECK(std::abs(s.ground_state[2]) < 1e-9);
    // Phase convention: largest amplitude real positive, so the |00>
    // component comes out negative.
    CHECK(s.ground_state[3].real() > 0.0);
    CHECK(s.ground_state[0].real() < 0.0);
}

TEST_CASE("identity-only hamiltonian spectrum") {
    const Hamiltonian h =
        Hamiltonian::from_terms({{PauliWord::from_str("II"), -1.05016}});
    const Spectrum s = exact_spectrum(h);
    for (double e : s.eigenvalues) {
        CHECK(e == doctest::Approx(-1.05016).epsilon(1e-12));
    }
    CHECK(h.group_count() == 0);
}

TEST_CASE("hamiltonian json round trip and validation") {
    const Hamiltonian h = h2_hamiltonian();
    nlohmann::json j = h;
    const auto back = j.get<Hamiltonian>();
    CHECK(back.terms.size() == h.terms.size());
    CHECK(back.constant == h.constant);
    CHECK(back.total_weight() == doctest::Approx(h.total_weight()).epsilon(1e-15));

    nlohmann::json bad = {{"terms", {{{"word", "ZIZ"}, {"coeff", 1.0}}}}};
    CHECK_THROWS_AS(bad.get<Hamiltonian>(), std::invalid_argument);
}
