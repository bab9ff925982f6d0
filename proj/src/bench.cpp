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

#include "shotplan/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shotplan/errors.hpp"
#include "shotplan/io.hpp"

namespace shotplan {

TrialRecord run_trial(const SpsaConfig& config, const Hamiltonian& h,
                      std::uint64_t seed) {
    Rng rng(seed);
    return run_trial(config, h, seed, rng);
}

TrialRecord run_trial(const SpsaConfig& config, const Hamiltonian& h,
                      std::uint64_t seed, Rng& rng) {
    config.validate(h.group_count());
    TrialRecord record;
    record.seed = seed;
    record.config = config;
    record.timestamp = iso_timestamp_utc();

    AnsatzParams start;
    for (auto& angle : start.theta) {
        angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }

    const Objective objective = [&](const AnsatzParams& params) {
        const EnergyEstimate est =
            estimate_energy(params, h, config.shots_per_eval, rng);
        return ObjectiveSample{est.value, est.shots_used};
    };

    try {
        const SpsaResult result =
            spsa_minimize(objective, start, config, rng);
        record.calibrated_a0 = result.calibrated_a0;
        record.shots_used = result.shots_used;
        record.final_params = result.final_params;
        record.true_energy =
            exact_expectation(prepare_ansatz(result.final_params), h);
    } catch (const RunAborted& aborted) {
        record.shots_used = aborted.shots_used;
        record.final_params = start;
        record.true_energy = std::numeric_limits<double>::infinity();
    }
    return record;
}

FractionEstimate success_fraction(std::span<const TrialRecord> records,
                                  double d, double e0) {
    if (records.empty()) throw std::invalid_argument("no records");
    if (!(d > 0.0)) throw std::invalid_argument("accuracy must be positive");
    std::int64_t hits = 0;
    for (const auto& r : records) {
        if (std::abs(r.true_energy - e0) <= d) ++hits;
    }
    FractionEstimate est;
    est.trials = static_cast<std::int64_t>(records.size());
    est.p = static_cast<double>(hits) / static_cast<double>(est.trials);
    est.stderr_ = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(est.trials));
    return est;
}

std::vector<SuccessSample> aggregate_samples(
    std::span<const TrialRecord> records, std::span<const double> levels,
    double e0) {
    std::map<std::int64_t, SuccessSample> by_n;
    for (const auto& r : records) {
        const std::int64_t n = nominal_run_shots(r.config);
        auto& sample = by_n[n];
        sample.n = n;
        sample.trials += 1;
        for (double d : levels) {
            sample.successes.try_emplace(d, 0);
            if (std::abs(r.true_energy - e0) <= d) ++sample.successes[d];
        }
    }
    std::vector<SuccessSample> out;
    out.reserve(by_n.size());
    for (auto& [n, sample] : by_n) out.push_back(std::move(sample));
    return out;
}

namespace {

struct LinearFit {
    double a = 0.0;
    double c = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

/// Weighted least squares of p ~ a*u + c under a >= 0, c >= 0, a + c <= 1.
/// The unconstrained 2x2 solve is used when feasible; otherwise the best
/// point on each boundary edge (a 1-D clamped solve) wins by SSE.
LinearFit solve_linear(std::span<const double> u, std::span<const double> p,
                       std::span<const double> w) {
    const std::size_t n = u.size();
    double sw = 0, swu = 0, swuu = 0, swp = 0, swup = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i];
        swu += w[i] * u[i];
        swuu += w[i] * u[i] * u[i];
        swp += w[i] * p[i];
        swup += w[i] * u[i] * p[i];
    }
    auto sse_of = [&](double a, double c) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = a * u[i] + c - p[i];
            sse += w[i] * r * r;
        }
        return sse;
    };
    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };

    LinearFit best;
    auto consider = [&](double a, double c) {
        if (a < 0.0 || c < 0.0 || a + c > 1.0 + 1e-12) return;
        const double sse = sse_of(a, c);
        if (sse < best.sse) best = LinearFit{a, c, sse};
    };

    const double det = sw * swuu - swu * swu;
    if (std::abs(det) > 1e-30 * std::max(1.0, sw * swuu)) {
        const double a = (sw * swup - swu * swp) / det;
        const double c = (swuu * swp - swu * swup) / det;
        consider(a, c);
    }
    // Edge a = 0.
    if (sw > 0) consider(0.0, clamp01(swp / sw));
    // Edge c = 0.
    if (swuu > 0) consider(clamp01(swup / swuu), 0.0);
    // Edge a + c = 1: minimize over a with residual a*(u-1) + (1-p).
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        num += w[i] * (u[i] - 1.0) * (p[i] - 1.0);
        den += w[i] * (u[i] - 1.0) * (u[i] - 1.0);
    }
    if (den > 0) {
        const double a = clamp01(num / den);
        consider(a, 1.0 - a);
    }
    consider(0.0, 0.0);
    return best;
}

}  // namespace

SuccessCurve fit_success_curve(std::span<const SuccessSample> samples,
                               double d) {
    const std::size_t n_pts = samples.size();
    std::vector<double> ns(n_pts), p(n_pts), w(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i) {
        if (samples[i].trials < 1) {
            throw std::invalid_argument("sample with no trials");
        }
        const auto it = samples[i].successes.find(d);
        if (it == samples[i].successes.end()) {
            throw std::invalid_argument("sample lacks the requested accuracy level");
        }
        ns[i] = static_cast<double>(samples[i].n);
        p[i] = static_cast<double>(it->second) / static_cast<double>(samples[i].trials);
        w[i] = static_cast<double>(samples[i].trials);
    }
    return fit_success_points(ns, p, w, d);
}

SuccessCurve fit_success_points(std::span<const double> ns,
                                std::span<const double> ps,
                                std::span<const double> weights, double d) {
    const std::size_t n_pts = ns.size();
    if (ps.size() != n_pts || weights.size() != n_pts) {
        throw std::invalid_argument("point arrays differ in length");
    }
    std::set<double> distinct(ns.begin(), ns.end());
    if (distinct.size() < 3) {
        throw InsufficientData("need >= 3 distinct n values to fit");
    }
    bool any_success = false;
    for (std::size_t i = 0; i < n_pts; ++i) {
        if (!(weights[i] > 0.0)) throw std::invalid_argument("weight must be > 0");
        if (ps[i] < 0.0 || ps[i] > 1.0) {
            throw std::invalid_argument("probability out of [0, 1]");
        }
        if (ps[i] > 0.0) any_success = true;
    }
    std::span<const double> p = ps;
    std::span<const double> w = weights;

    SuccessCurve curve;
    curve.accuracy_d = d;
    if (!any_success) {
        curve.b_identifiable = false;
        return curve;  // a = b = c = 0
    }

    std::vector<double> u(n_pts);
    auto linear_at = [&](double b) {
        for (std::size_t i = 0; i < n_pts; ++i) {
            u[i] = 1.0 - std::exp(-b * ns[i]);
        }
        return solve_linear(u, p, w);
    };

    // 1-D search on b: coarse log grid, then golden-section refinement
    // between the grid neighbours of the best cell.
    constexpr double kBLow = 1e-8;
    constexpr double kBHigh = 1e-3;
    constexpr int kBGrid = 200;
    double best_b = kBLow;
    LinearFit best_fit;
    std::vector<double> grid(kBGrid);
    for (int i = 0; i < kBGrid; ++i) {
        grid[i] = kBLow * std::pow(kBHigh / kBLow,
                                   static_cast<double>(i) / (kBGrid - 1));
    }
    int best_idx = 0;
    for (int i = 0; i < kBGrid; ++i) {
        const LinearFit fit = linear_at(grid[i]);
        if (fit.sse < best_fit.sse) {
            best_fit = fit;
            best_b = grid[i];
            best_idx = i;
        }
    }
    double lo = grid[std::max(0, best_idx - 1)];
    double hi = grid[std::min(kBGrid - 1, best_idx + 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    LinearFit f1 = linear_at(x1);
    LinearFit f2 = linear_at(x2);
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        if (f1.sse <= f2.sse) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = linear_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = linear_at(x2);
        }
    }
    const double refined = f1.sse <= f2.sse ? x1 : x2;
    const LinearFit fit = linear_at(refined);
    if (fit.sse <= best_fit.sse) {
        best_fit = fit;
        best_b = refined;
    }

    curve.a = best_fit.a;
    curve.b = best_b;
    curve.c = best_fit.c;
    double sq = 0.0;
    for (std::size_t i = 0; i < n_pts; ++i) {
        const double r = curve.a * (1.0 - std::exp(-curve.b * ns[i])) + curve.c - p[i];
        sq += r * r;
    }
    curve.fit_residual = sq / static_cast<double>(n_pts);
    return curve;
}

double eval_curve(const SuccessCurve& curve, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    const double p =
        curve.a * (1.0 - std::exp(-curve.b * static_cast<double>(n))) + curve.c;
    return std::clamp(p, 0.0, 1.0);
}

void to_json(nlohmann::json& j, const TrialRecord& r) {
    j = nlohmann::json{
        {"seed", r.seed},
        {"config", r.config},
        {"calibrated_a0", r.calibrated_a0},
        {"shots_used", r.shots_used},
        {"final_params", r.final_params},
        {"true_energy", r.true_energy},
        {"timestamp", r.timestamp},
    };
    if (!std::isfinite(r.true_energy)) j["true_energy"] = nullptr;
}

void from_json(const nlohmann::json& j, TrialRecord& r) {
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config").get<SpsaConfig>();
    r.calibrated_a0 = j.at("calibrated_a0").get<double>();
    r.shots_used = j.at("shots_used").get<std::int64_t>();
    r.final_params = j.at("final_params").get<AnsatzParams>();
    r.true_energy = j.at("true_energy").is_null()
                        ? std::numeric_limits<double>::infinity()
                        : j.at("true_energy").get<double>();
    r.timestamp = j.value("timestamp", "");
}

void to_json(nlohmann::json& j, const SuccessSample& s) {
    nlohmann::json successes = nlohmann::json::array();
    for (const auto& [d, count] : s.successes) {
        successes.push_back({{"d", d}, {"count", count}});
    }
    j = nlohmann::json{
        {"n", s.n}, {"trials", s.trials}, {"successes", std::move(successes)}};
}

void from_json(const nlohmann::json& j, SuccessSample& s) {
    s.n = j.at("n").get<std::int64_t>();
    s.trials = j.at("trials").get<std::int64_t>();
    s.successes.clear();
    for (const auto& item : j.at("successes")) {
        s.successes[item.at("d").get<double>()] =
            item.at("count").get<std::int64_t>();
    }
}

void to_json(nlohmann::json& j, const SuccessCurve& c) {
    j = nlohmann::json{
        {"a", c.a},
        {"b", c.b},
        {"c", c.c},
        {"accuracy_d", c.accuracy_d},
        {"fit_residual", c.fit_residual},
        {"b_identifiable", c.b_identifiable},
    };
}

void from_json(const nlohmann::json& j, SuccessCurve& c) {
    c.a = j.at("a").get<double>();
    c.b = j.at("b").get<double>();
    c.c = j.at("c").get<double>();
    c.accuracy_d = j.at("accuracy_d").get<double>();
    c.fit_residual = j.value("fit_residual", 0.0);
    c.b_identifiable = j.value("b_identifiable", true);
}

}  // namespace shotplan
