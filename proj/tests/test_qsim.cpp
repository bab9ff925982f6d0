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

#include <doctest.h>

using namespace shotplan;

namespace {

constexpr double kPi = std::numbers::pi;

/// Fidelity |<a|b>|^2, the phase-free equality measure for states.
double fidelity(const Statevector& a, const Statevector& b) {
    std::complex<double> overlap = 0.0;
    for (int i = 0; i < 4; ++i) overlap += std::conj(a.amp[i]) * b.amp[i];
    return std::norm(overlap);
}

AnsatzParams params(std::initializer_list<double> v) {
    AnsatzParams p;
    std::size_t i = 0;
    for (double x : v) p.theta[i++] = x;
    return p;
}

}  // namespace

TEST_CASE("ansatz at zero angles is |00>") {
    const Statevector s = prepare_ansatz(AnsatzParams{});
    CHECK(std::abs(s.amp[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ansatz theta0=pi/2 gives a Bell state") {
    const Statevector s = prepare_ansatz(params({kPi / 2}));
    Statevector bell;
    bell.amp[0] = 1.0 / std::numbers::sqrt2;
    bell.amp[3] = 1.0 / std::numbers::sqrt2;
    CHECK(fidelity(s, bell) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ansatz output is normalized for arbitrary angles") {
    Rng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        AnsatzParams p;
        for (auto& t : p.theta) t = rng.uniform(-10.0, 10.0);
        CHECK(prepare_ansatz(p).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ansatz is 2pi-periodic in every angle up to global phase") {
    Rng rng(11);
    for (int component = 0; component < 8; ++component) {
        AnsatzParams p;
        for (auto& t : p.theta) t = rng.uniform(-kPi, kPi);
        AnsatzParams shifted = p;
        shifted.theta[component] += 2.0 * kPi;
        CHECK(fidelity(prepare_ansatz(p), prepare_ansatz(shifted)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact_expectation on reference states") {
    const Hamiltonian h = h2_hamiltonian();
    // <00|H|00> = c0 + 2 c1 + c2 (XX has no diagonal element there).
    Statevector zero;
    zero.amp[0] = 1.0;
    CHECK(exact_expectation(zero, h) == doctest::Approx(-0.23039).epsilon(1e-5));
    // Bell state: c0 + c2 + c3.
    Statevector bell;
    bell.amp[0] = 1.0 / std::numbers::sqrt2;
    bell.amp[3] = 1.0 / std::numbers::sqrt2;
    CHECK(exact_expectation(bell, h) == doctest::Approx(-0.85843).epsilon(1e-5));
    // Ground eigenvector reproduces the ground energy.
    const Spectrum spectrum = exact_spectrum(h);
    Statevector ground;
    ground.amp = spectrum.ground_state;
    CHECK(exact_expectation(ground, h) ==
          doctest::Approx(-1.86711).epsilon(1e-4));
    CHECK(exact_expectation(ground, h) ==
          doctest::Approx(spectrum.eigenvalues[0]).epsilon(1e-10));
}

TEST_CASE("exact_expectation rejects unnormalized states") {
    const Hamiltonian h = h2_hamiltonian();
    Statevector s;
    s.amp[0] = 0.9;
    CHECK_THROWS_AS(exact_expectation(s, h), std::invalid_argument);
}

TEST_CASE("expectation stays between the extreme eigenvalues") {
    const Hamiltonian h = h2_hamiltonian();
    const Spectrum spectrum = exact_spectrum(h);
    Rng rng(3);
    double best = 1e9;
    for (int rep = 0; rep < 500; ++rep) {
        AnsatzParams p;
        for (auto& t : p.theta) t = rng.uniform(-kPi, kPi);
        const double e = exact_expectation(prepare_ansatz(p), h);
        CHECK(e >= spectrum.eigenvalues[0] - 1e-9);
        CHECK(e <= spectrum.eigenvalues[3] + 1e-9);
        best = std::min(best, e);
    }
    CHECK(best < 0.0);
}

TEST_CASE("the ground state is reachable by the ansatz") {
    // Real amplitudes on |00>,|11> come from theta0 alone plus the CNOT:
    // cos(t/2)|00> + sin(t/2)|11>. Match it to the spectrum's eigenvector.
    const Hamiltonian h = h2_hamiltonian();
    const Spectrum spectrum = exact_spectrum(h);
    const double angle =
        2.0 * std::atan2(spectrum.ground_state[3].real(), spectrum.ground_state[0].real());
    const Statevector s = prepare_ansatz(params({angle}));
    CHECK(exact_expectation(s, h) ==
          doctest::Approx(spectrum.eigenvalues[0]).epsilon(1e-6));
}

TEST_CASE("basis probabilities") {
    const Hamiltonian h = h2_hamiltonian();
    Statevector zero;
    zero.amp[0] = 1.0;
    const auto pz = basis_probabilities(zero, MeasurementBasis::Z);
    CHECK(pz[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pz[1] + pz[2] + pz[3] == doctest::Approx(0.0).epsilon(1e-12));
    const auto px = basis_probabilities(zero, MeasurementBasis::X);
    for (double p : px) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

    Statevector ground;
    ground.amp = exact_spectrum(h).ground_state;
    const auto pg = basis_probabilities(ground, MeasurementBasis::Z);
    CHECK(std::abs(pg[0] - 0.01200) < 1e-4);
    CHECK(std::abs(pg[3] - 0.98800) < 1e-4);
    CHECK(pg[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pg[2] == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        AnsatzParams p;
        for (auto& t : p.theta) t = rng.uniform(-kPi, kPi);
        const Statevector s = prepare_ansatz(p);
        for (auto basis : {MeasurementBasis::Z, MeasurementBasis::X}) {
            const auto probs = basis_probabilities(s, basis);
            double sum = 0.0;
            for (double v : probs) sum += v;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("sample_counts: deterministic distributions and conservation") {
    Rng rng(1);
    const Counts all = sample_counts({1.0, 0.0, 0.0, 0.0}, 100, rng);
    CHECK(all[0] == 100);
    CHECK(all[1] + all[2] + all[3] == 0);

    const Counts none = sample_counts({0.25, 0.25, 0.25, 0.25}, 0, rng);
    for (auto c : none) CHECK(c == 0);

    for (int rep = 0; rep < 100; ++rep) {
        const Counts c = sample_counts({0.1, 0.2, 0.3, 0.4}, 1234, rng);
        CHECK(c[0] + c[1] + c[2] + c[3] == 1234);
    }
}

TEST_CASE("sample_counts: identical seed gives identical counts") {
    Rng a(42);
    Rng b(42);
    const std::array<double, 4> probs{0.3, 0.3, 0.2, 0.2};
    CHECK(sample_counts(probs, 5000, a) == sample_counts(probs, 5000, b));
}

TEST_CASE("sample_counts: binomial 5-sigma bound over 1000 seeds") {
    // (0.5, 0.5, 0, 0) at 10000 shots: first component within 5000 +- 250
    // (5 * sqrt(10000 * 0.25)) for at least 999 of 1000 seeds.
    int within = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(derive_seed(99, seed));
        const Counts c = sample_counts({0.5, 0.5, 0.0, 0.0}, 10000, rng);
        if (std::abs(c[0] - 5000) <= 250) ++within;
    }
    CHECK(within >= 999);
}

TEST_CASE("sample_counts rejects bad input") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_counts({0.5, 0.5, 0.0, -0.1}, 10, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_counts({0.5, 0.4, 0.0, 0.0}, 10, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_counts({1.0, 0.0, 0.0, 0.0}, -1, rng),
                    std::invalid_argument);
}
