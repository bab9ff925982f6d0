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
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shotplan/bench.hpp"
#include "shotplan/pauli.hpp"

namespace shotplan {

/// Optimal split of a shot budget B among r repetitions of (n optimization
/// shots + m final-estimation shots), for desired accuracy d.
struct MetaPlan {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t r = 0;
    std::int64_t B = 0;
    double d = 0.0;        // Hartree
    double p_s = 0.0;      // single-run success probability at n
    double P_max = 0.0;    // best-of-r success probability
    double sigma = 0.0;    // final-estimation standard error at m
    double Z = 0.0;        // d / sigma
    double gamma = 0.0;    // confidence the final estimate resolves d
    double P_reliable = 0.0;
    bool no_signal = false;  // curve gives zero success everywhere
};

/// Probability at least one of r independent runs succeeds: 1 - (1-p_s)^r.
double repeat_success(double p_s, std::int64_t r);

struct ReliabilityFactor {
    double sigma = 0.0;
    double z = 0.0;
    double gamma = 0.0;
};

/// sigma = accuracy_for_shots(h, m), Z = d/sigma, and the two-sided normal
/// confidence gamma = erf(Z/sqrt(2)) that an estimate lies within +-d.
ReliabilityFactor reliability_factor(const Hamiltonian& h, std::int64_t m,
                                     double d);

struct ReliableProbability {
    std::int64_t r = 0;
    double P = 0.0;
    double P_reliable = 0.0;
};

/// r = floor(B/(n+m)), P = repeat_success(p_s(n), r), discounted by gamma.
ReliableProbability reliable_probability(const SuccessCurve& curve,
                                         const Hamiltonian& h, std::int64_t B,
                                         double d, std::int64_t n,
                                         std::int64_t m);

/// `count` log-spaced integers covering [lo, hi], deduplicated ascending.
std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi,
                                              int count);

/// Exhaustive deterministic grid search: m over 200 log-spaced integers in
/// [group count, B-1], n over 400 log-spaced integers in [1, B-m] for each m.
/// Ties break toward smaller m, then smaller n.
MetaPlan optimize_plan(const SuccessCurve& curve, const Hamiltonian& h,
                       std::int64_t B, double d);

struct SurfaceCell {
    std::int64_t r = 0;
    std::int64_t m = 0;
    std::int64_t n = 0;  // floor(B/r) - m; infeasible when < 1
    double P = 0.0;
    double gamma = 0.0;
    double P_reliable = 0.0;
    bool feasible = false;
};

/// Reliable-probability surface over repetitions r in [1, max_r] and the
/// same log-spaced m axis as optimize_plan, with n = floor(B/r) - m.
/// max_r == 0 picks min(floor(B/(group count + 1)), 200).
std::vector<SurfaceCell> probability_surface(const SuccessCurve& curve,
                                             const Hamiltonian& h,
                                             std::int64_t B, double d,
                                             std::int64_t max_r = 0);

struct FrontierRow {
    std::int64_t B = 0;
    double d = 0.0;
    double P_reliable = 0.0;
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t r = 0;
};

/// Optimal plans over every (budget, curve) pair; each curve supplies its own
/// accuracy level d. Row order: budgets outer, curves inner.
std::vector<FrontierRow> budget_precision_frontier(
    std::span<const SuccessCurve> curves, const Hamiltonian& h,
    std::span<const std::int64_t> budgets);

void to_json(nlohmann::json& j, const MetaPlan& p);
void from_json(const nlohmann::json& j, MetaPlan& p);

}  // namespace shotplan
