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
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shotplan/estimator.hpp"
#include "shotplan/spsa.hpp"

namespace shotplan {

/// One full shot-limited optimization run, graded by the exact statevector
/// energy of its final parameters. Aborted runs carry true_energy = +inf.
struct TrialRecord {
    std::uint64_t seed = 0;
    SpsaConfig config;
    double calibrated_a0 = 0.0;
    std::int64_t shots_used = 0;
    AnsatzParams final_params;
    double true_energy = 0.0;  // Hartree; +inf marks an aborted run
    std::string timestamp;     // ISO 8601 UTC
};

/// Success counts of trials at one total-shots level, per accuracy level d.
struct SuccessSample {
    std::int64_t n = 0;       // total shots per run
    std::int64_t trials = 0;
    std::map<double, std::int64_t> successes;  // accuracy d -> count
};

/// Fitted p_s(n) = a (1 - e^{-b n}) + c at one accuracy level.
struct SuccessCurve {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double accuracy_d = 0.0;    // Hartree
    double fit_residual = 0.0;  // mean squared residual over the samples
    bool b_identifiable = true;
};

/// Runs SPSA with the shot-based objective at config.shots_per_eval; the
/// trial rng also drives the start point (uniform on [-pi, pi) per angle).
TrialRecord run_trial(const SpsaConfig& config, const Hamiltonian& h,
                      std::uint64_t seed);

/// Same, but on a caller-seeded rng so follow-up sampling (e.g. a final
/// estimation) can continue the trial's stream.
TrialRecord run_trial(const SpsaConfig& config, const Hamiltonian& h,
                      std::uint64_t seed, Rng& rng);

struct FractionEstimate {
    double p = 0.0;
    double stderr_ = 0.0;  // binomial sqrt(p(1-p)/N)
    std::int64_t trials = 0;
};

/// Fraction of records with |true_energy - e0| <= d.
FractionEstimate success_fraction(std::span<const TrialRecord> records,
                                  double d, double e0);

/// Groups records by their run's nominal shot count and counts successes at
/// every accuracy level. Output sorted by n ascending.
std::vector<SuccessSample> aggregate_samples(
    std::span<const TrialRecord> records, std::span<const double> levels,
    double e0);

/// Weighted least squares of the exponential success model. b is found by a
/// log-spaced grid over [1e-8, 1e-3] plus golden-section refinement; at each
/// b the (a, c) subproblem is linear least squares under a >= 0, c >= 0,
/// a + c <= 1. Weights are the per-sample trial counts.
SuccessCurve fit_success_curve(std::span<const SuccessSample> samples,
                               double d);

/// Same fit on raw (n, p, weight) points, for callers with fractional
/// success probabilities.
SuccessCurve fit_success_points(std::span<const double> ns,
                                std::span<const double> ps,
                                std::span<const double> weights, double d);

/// a (1 - e^{-b n}) + c, clamped to [0, 1].
double eval_curve(const SuccessCurve& curve, std::int64_t n);

void to_json(nlohmann::json& j, const TrialRecord& r);
void from_json(const nlohmann::json& j, TrialRecord& r);
void to_json(nlohmann::json& j, const SuccessSample& s);
void from_json(const nlohmann::json& j, SuccessSample& s);
void to_json(nlohmann::json& j, const SuccessCurve& c);
void from_json(const nlohmann::json& j, SuccessCurve& c);

}  // namespace shotplan
