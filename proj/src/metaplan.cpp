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

#include "shotplan/metaplan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shotplan/errors.hpp"

namespace shotplan {

double repeat_success(double p_s, std::int64_t r) {
    if (!(p_s >= 0.0 && p_s <= 1.0)) {
        throw std::invalid_argument("probability out of [0, 1]");
    }
    if (r < 1) throw std::invalid_argument("repetitions must be >= 1");
    return 1.0 - std::pow(1.0 - p_s, static_cast<double>(r));
}

ReliabilityFactor reliability_factor(const Hamiltonian& h, std::int64_t m,
                                     double d) {
    if (!(d > 0.0)) throw std::invalid_argument("accuracy must be positive");
    ReliabilityFactor f;
    f.sigma = accuracy_for_shots(h, m);
    f.z = d / f.sigma;
    f.gamma = std::erf(f.z / std::sqrt(2.0));
    return f;
}

ReliableProbability reliable_probability(const SuccessCurve& curve,
                                         const Hamiltonian& h, std::int64_t B,
                                         double d, std::int64_t n,
                                         std::int64_t m) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (m < static_cast<std::int64_t>(h.group_count())) {
        throw std::invalid_argument("m below group count");
    }
    if (n + m > B) throw std::invalid_argument("n + m exceeds the budget");
    ReliableProbability out;
    out.r = B / (n + m);
    out.P = repeat_success(eval_curve(curve, n), out.r);
    out.P_reliable = reliability_factor(h, m, d).gamma * out.P;
    return out;
}

std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi,
                                              int count) {
    if (lo < 1 || hi < lo || count < 1) {
        throw std::invalid_argument("bad log grid bounds");
    }
    std::vector<std::int64_t> out;
    out.reserve(count);
    const double log_lo = std::log(static_cast<double>(lo));
    const double log_hi = std::log(static_cast<double>(hi));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0
                                    : static_cast<double>(i) /
                                          static_cast<double>(count - 1);
        const double v = std::exp(log_lo + t * (log_hi - log_lo));
        out.push_back(std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::llround(v)), lo, hi));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

constexpr int kMAxisPoints = 200;
constexpr int kNAxisPoints = 400;
constexpr std::int64_t kDefaultMaxSurfaceR = 200;

}  // namespace

MetaPlan optimize_plan(const SuccessCurve& curve, const Hamiltonian& h,
                       std::int64_t B, double d) {
    const auto groups = static_cast<std::int64_t>(h.group_count());
    if (B < 2 * groups) throw InfeasibleBudget("budget below 2 * group count");

    MetaPlan best;
    best.B = B;
    best.d = d;
    best.P_reliable = -1.0;
    // Ascending scans with a strictly-greater test give the smaller-m,
    // then smaller-n tie break.
    for (const std::int64_t m : log_spaced_integers(groups, B - 1, kMAxisPoints)) {
        const ReliabilityFactor rel = reliability_factor(h, m, d);
        for (const std::int64_t n : log_spaced_integers(1, B - m, kNAxisPoints)) {
            const std::int64_t r = B / (n + m);
            const double p_s = eval_curve(curve, n);
            const double P = repeat_success(p_s, r);
            const double P_rel = rel.gamma * P;
            if (P_rel > best.P_reliable) {
                best.n = n;
                best.m = m;
                best.r = r;
                best.p_s = p_s;
                best.P_max = P;
                best.sigma = rel.sigma;
                best.Z = rel.z;
                best.gamma = rel.gamma;
                best.P_reliable = P_rel;
            }
        }
    }
    best.no_signal = !(best.P_reliable > 0.0);
    if (best.no_signal) best.P_reliable = 0.0;
    return best;
}

std::vector<SurfaceCell> probability_surface(const SuccessCurve& curve,
                                             const Hamiltonian& h,
                                             std::int64_t B, double d,
                                             std::int64_t max_r) {
    const auto groups = static_cast<std::int64_t>(h.group_count());
    if (B < 2 * groups) throw InfeasibleBudget("budget below 2 * group count");
    if (max_r <= 0) {
        max_r = std::min(B / (groups + 1), kDefaultMaxSurfaceR);
    }
    max_r = std::max<std::int64_t>(max_r, 1);

    const auto m_axis = log_spaced_integers(groups, B - 1, kMAxisPoints);
    std::vector<SurfaceCell> cells;
    cells.reserve(static_cast<std::size_t>(max_r) * m_axis.size());
    for (std::int64_t r = 1; r <= max_r; ++r) {
        const std::int64_t per_repetition = B / r;
        for (const std::int64_t m : m_axis) {
            SurfaceCell cell;
            cell.r = r;
            cell.m = m;
            cell.n = per_repetition - m;
            cell.feasible = cell.n >= 1;
            if (cell.feasible) {
                const ReliabilityFactor rel = reliability_factor(h, m, d);
                cell.P = repeat_success(eval_curve(curve, cell.n), r);
                cell.gamma = rel.gamma;
                cell.P_reliable = rel.gamma * cell.P;
            } else {
                cell.P = cell.gamma = cell.P_reliable =
                    std::numeric_limits<double>::quiet_NaN();
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<FrontierRow> budget_precision_frontier(
    std::span<const SuccessCurve> curves, const Hamiltonian& h,
    std::span<const std::int64_t> budgets) {
    std::vector<FrontierRow> rows;
    rows.reserve(curves.size() * budgets.size());
    for (const std::int64_t B : budgets) {
        for (const auto& curve : curves) {
            const MetaPlan plan = optimize_plan(curve, h, B, curve.accuracy_d);
            rows.push_back(FrontierRow{plan.B, plan.d, plan.P_reliable, plan.n,
                                       plan.m, plan.r});
        }
    }
    return rows;
}

void to_json(nlohmann::json& j, const MetaPlan& p) {
    j = nlohmann::json{
        {"n", p.n},           {"m", p.m},
        {"r", p.r},           {"B", p.B},
        {"d", p.d},           {"p_s", p.p_s},
        {"P_max", p.P_max},   {"sigma", p.sigma},
        {"Z", p.Z},           {"gamma", p.gamma},
        {"P_reliable", p.P_reliable}, {"no_signal", p.no_signal},
    };
}

void from_json(const nlohmann::json& j, MetaPlan& p) {
    p.n = j.at("n").get<std::int64_t>();
    p.m = j.at("m").get<std::int64_t>();
    p.r = j.at("r").get<std::int64_t>();
    p.B = j.at("B").get<std::int64_t>();
    p.d = j.at("d").get<double>();
    p.p_s = j.at("p_s").get<double>();
    p.P_max = j.at("P_max").get<double>();
    p.sigma = j.at("sigma").get<double>();
    p.Z = j.at("Z").get<double>();
    p.gamma = j.at("gamma").get<double>();
    p.P_reliable = j.at("P_reliable").get<double>();
    p.no_signal = j.value("no_signal", false);
}

}  // namespace shotplan
