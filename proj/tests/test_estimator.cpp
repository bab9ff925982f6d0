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

#include <cmath>
#include <numbers>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "shotplan/errors.hpp"

using namespace shotplan;

namespace {

constexpr double kC0 = -1.05016;
constexpr double kC1 = 0.40421;
constexpr double kC2 = 0.01135;
constexpr double kC3 = 0.18038;

AnsatzParams ground_params(const Hamiltonian& h) {
    const Spectrum spectrum = exact_spectrum(h);
    AnsatzParams p;
    p.theta[0] =
        2.0 * std::atan2(spectrum.ground_state[3].real(), spectrum.ground_state[0].real());
    return p;
}

}  // namespace

TEST_CASE("allocate_shots: weight-proportional with largest remainder") {
    const Hamiltonian h = h2_hamiltonian();
    // 1000 * 0.571752 / 0.752132 = 760.18 -> Z 760, X 240.
    const auto alloc = allocate_shots(h, 1000);
    REQUIRE(alloc.size() == 2);
    CHECK(alloc[0] == 760);
    CHECK(alloc[1] == 240);

    const auto minimal = allocate_shots(h, 2);
    CHECK(minimal[0] == 1);
    CHECK(minimal[1] == 1);

    const auto big = allocate_shots(h, 251424);
    CHECK(big[0] + big[1] == 251424);

    CHECK_THROWS_AS(allocate_shots(h, 1), std::invalid_argument);
}

TEST_CASE("allocate_shots conserves the total over many values") {
    const Hamiltonian h = h2_hamiltonian();
    for (std::int64_t total : {2LL, 3LL, 17LL, 999LL, 10000LL, 123457LL}) {
        for (const auto& alloc :
             {allocate_shots(h, total), allocate_shots_equal(h, total)}) {
            std::int64_t sum = 0;
            for (auto s : alloc) {
                CHECK(s >= 1);
                sum += s;
            }
            CHECK(sum == total);
        }
    }
}

TEST_CASE("weight-proportional allocation beats the equal split") {
    // Predicted estimator variance is sum_i w_i^2 / m_i; the proportional
    // rule is the continuous optimum, so up to rounding it can only do
    // better than equal shares.
    const Hamiltonian h = h2_hamiltonian();
    auto predicted_variance = [&](const std::vector<std::int64_t>& alloc) {
        double var = 0.0;
        for (std::size_t i = 0; i < alloc.size(); ++i) {
            const double w = h.groups[i].weight();
            var += w * w / static_cast<double>(alloc[i]);
        }
        return var;
    };
    for (std::int64_t total : {100LL, 1000LL, 251424LL}) {
        const double proportional = predicted_variance(allocate_shots(h, total));
        const double equal = predicted_variance(allocate_shots_equal(h, total));
        CHECK(proportional <= equal * (1.0 + 1e-9));
    }
    const auto equal = allocate_shots_equal(h, 1000);
    CHECK(equal[0] == 500);
    CHECK(equal[1] == 500);
}

TEST_CASE("expectation_from_counts on hand-computed count tables") {
    const Hamiltonian h = h2_hamiltonian();
    // Every shot lands on b=0 in both bases: all four word expectations are
    // +1, so E = c0 + 2 c1 + c2 + c3.
    const Counts all_zero{100, 0, 0, 0};
    CHECK(expectation_from_counts(all_zero, all_zero, h) ==
          doctest::Approx(-0.05001).epsilon(1e-5));

    // Z counts (12, 0, 0, 988): <ZI> = <IZ> = 0.012 - 0.988 = -0.976 and
    // <ZZ> = +1. X counts (500, 0, 0, 500) put every shot on even parity,
    // so <XX> = +1. Frequency arithmetic gives the energy directly.
    const Counts z_counts{12, 0, 0, 988};
    const Counts x_counts{500, 0, 0, 500};
    const double expected = kC0 + 2.0 * kC1 * (-0.976) + kC2 * 1.0 + kC3 * 1.0;
    CHECK(expectation_from_counts(z_counts, x_counts, h) ==
          doctest::Approx(expected).epsilon(1e-12));
    // Same Z table with X shots split across parities: <XX> = 0.
    const Counts x_mixed{250, 250, 250, 250};
    CHECK(expectation_from_counts(z_counts, x_mixed, h) ==
          doctest::Approx(expected - kC3).epsilon(1e-12));

    // Uniform counts in both bases: every expectation vanishes.
    const Counts uniform{25, 25, 25, 25};
    CHECK(expectation_from_counts(uniform, uniform, h) ==
          doctest::Approx(kC0).epsilon(1e-12));
}

TEST_CASE("expectation_from_counts is scale invariant per group") {
    const Hamiltonian h = h2_hamiltonian();
    const Counts z{12, 34, 5, 49};
    const Counts x{7, 3, 9, 1};
    const Counts z4{48, 136, 20, 196};
    const Counts x9{63, 27, 81, 9};
    CHECK(expectation_from_counts(z, x, h) ==
          doctest::Approx(expectation_from_counts(z4, x9, h)).epsilon(1e-12));
}

TEST_CASE("expectation_from_counts needs shots in every used group") {
    const Hamiltonian h = h2_hamiltonian();
    const Counts empty{0, 0, 0, 0};
    const Counts some{10, 0, 0, 0};
    CHECK_THROWS_AS(expectation_from_counts(empty, some, h), InsufficientData);
    CHECK_THROWS_AS(expectation_from_counts(some, empty, h), InsufficientData);
}

TEST_CASE("single-group hamiltonians use the whole allowance") {
    const Hamiltonian x_only =
        Hamiltonian::from_terms({{PauliWord::from_str("XX"), 0.5}});
    REQUIRE(x_only.group_count() == 1);
    const auto alloc = allocate_shots(x_only, 37);
    CHECK(alloc.size() == 1);
    CHECK(alloc[0] == 37);

    // The Z-basis counts are irrelevant for an X-only operator.
    const Counts x_counts{40, 10, 10, 40};  // <XX> = (80 - 20) / 100
    const Counts junk{1, 2, 3, 4};
    CHECK(expectation_from_counts(junk, x_counts, x_only) ==
          doctest::Approx(0.5 * 0.6).epsilon(1e-12));

    // Sampling path: |00> has <XX> = 0.
    Statevector zero;
    zero.amp[0] = 1.0;
    Rng rng(9);
    const EnergyEstimate est = estimate_energy(zero, x_only, 40000, rng);
    CHECK(est.shots_used == 40000);
    CHECK(std::abs(est.value) < 0.02);
}

TEST_CASE("estimate_energy: determinism and shot accounting") {
    const Hamiltonian h = h2_hamiltonian();
    AnsatzParams p;
    p.theta = {0.3, -1.2, 0.5, 2.2, -0.7, 0.1, 1.9, -2.4};

    Rng a(123);
    Rng b(123);
    const EnergyEstimate ea = estimate_energy(p, h, 5000, a);
    const EnergyEstimate eb = estimate_energy(p, h, 5000, b);
    CHECK(ea.value == eb.value);
    CHECK(ea.shots_used == 5000);
    CHECK(!ea.epsilon.has_value());

    Rng tiny(7);
    const EnergyEstimate coarse = estimate_energy(p, h, 2, tiny);
    CHECK(coarse.shots_used == 2);
    CHECK(std::isfinite(coarse.value));
}

TEST_CASE("estimate_energy concentrates near the exact energy") {
    // The accuracy bound at 10^6 shots is eps = 0.000752; 0.005 is ~6.6
    // sigma, so nearly every seed must land inside.
    const Hamiltonian h = h2_hamiltonian();
    const AnsatzParams p = ground_params(h);
    const double exact = exact_expectation(prepare_ansatz(p), h);
    int within = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(17, static_cast<std::uint64_t>(s)));
        const EnergyEstimate est = estimate_energy(p, h, 1000000, rng);
        if (std::abs(est.value - exact) <= 0.005) ++within;
    }
    CHECK(within >= static_cast<int>(0.99 * seeds));
}

TEST_CASE("estimate_energy converges to the exact expectation") {
    const Hamiltonian h = h2_hamiltonian();
    AnsatzParams p;
    p.theta = {1.1, 0.4, -0.2, 0.9, 2.2, -1.6, 0.3, 0.8};
    const double exact = exact_expectation(prepare_ansatz(p), h);
    int within = 0;
    for (int s = 0; s < 100; ++s) {
        Rng rng(derive_seed(31, static_cast<std::uint64_t>(s)));
        const EnergyEstimate est = estimate_energy(p, h, 10000000, rng);
        if (std::abs(est.value - exact) < 0.001) ++within;
    }
    CHECK(within >= 99);
}

TEST_CASE("final_estimate: epsilon and conservation") {
    const Hamiltonian h = h2_hamiltonian();
    const AnsatzParams p = ground_params(h);
    Rng rng(11);
    const EnergyEstimate est = final_estimate(p, h, 251424, rng);
    REQUIRE(est.epsilon.has_value());
    CHECK(*est.epsilon <= 0.0015);
    CHECK(*est.epsilon > 0.001499);
    CHECK(est.shots_used == 251424);
}

TEST_CASE("final_estimate coverage and empirical spread at the ground state") {
    const Hamiltonian h = h2_hamiltonian();
    const Spectrum spectrum = exact_spectrum(h);
    Statevector ground;
    ground.amp = spectrum.ground_state;
    const std::int64_t m = shots_for_accuracy(h, 0.0015);
    const int seeds = 1000;
    int within = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(23, static_cast<std::uint64_t>(s)));
        const EnergyEstimate est = final_estimate(ground, h, m, rng);
        if (std::abs(est.value - spectrum.eigenvalues[0]) <= 0.0015) ++within;
        sum += est.value;
        sum_sq += est.value * est.value;
    }
    // The theoretical bound is conservative, roughly 95% coverage in
    // practice; 90% is the hard floor.
    CHECK(within >= static_cast<int>(0.90 * seeds));
    // The empirical standard deviation must not exceed the bound.
    const double mean = sum / seeds;
    const double var = sum_sq / seeds - mean * mean;
    CHECK(std::sqrt(var) <= accuracy_for_shots(h, m));
}

TEST_CASE("energy estimate json round trip") {
    EnergyEstimate e{-1.23, 456, 0.0015};
    nlohmann::json j = e;
    const auto back = j.get<EnergyEstimate>();
    CHECK(back.value == e.value);
    CHECK(back.shots_used == e.shots_used);
    CHECK(back.epsilon == e.epsilon);

    EnergyEstimate plain{-0.5, 10, std::nullopt};
    nlohmann::json j2 = plain;
    CHECK(!j2.contains("epsilon"));
    CHECK(j2.get<EnergyEstimate>().epsilon == std::nullopt);
}
