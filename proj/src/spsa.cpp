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

#include "shotplan/spsa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "shotplan/errors.hpp"

namespace shotplan {

void SpsaConfig::validate(std::size_t group_count) const {
    if (maxiter < 1) throw std::invalid_argument("maxiter must be >= 1");
    if (!(a0 >= 0.0)) throw std::invalid_argument("a0 must be >= 0");
    if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be > 0");
    if (!(A >= 0.0)) throw std::invalid_argument("A must be >= 0");
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must be in (0, 1]");
    }
    if (!(s_gamma > 0.0 && s_gamma < 1.0)) {
        throw std::invalid_argument("s_gamma must be in (0, 1)");
    }
    if (shots_per_eval < static_cast<std::int64_t>(group_count)) {
        throw std::invalid_argument("shots_per_eval below group count");
    }
}

std::pair<double, double> gain_sequences(const SpsaConfig& config, int k) {
    if (k < 0) throw std::invalid_argument("iteration index must be >= 0");
    const double a_k =
        config.a0 / std::pow(static_cast<double>(k) + 1.0 + config.A, config.alpha);
    const double c_k =
        config.c0 / std::pow(static_cast<double>(k) + 1.0, config.s_gamma);
    return {a_k, c_k};
}

std::int64_t nominal_run_shots(const SpsaConfig& config) {
    std::int64_t evals = 2LL * config.maxiter;
    if (config.a0 <= 0.0) evals += 2LL * kSpsaCalibrationProbes;
    return evals * config.shots_per_eval;
}

SpsaResult spsa_minimize(const Objective& objective, const AnsatzParams& start,
                         const SpsaConfig& config, Rng& rng,
                         bool record_trace) {
    SpsaResult result;
    result.final_params = start;
    auto& theta = result.final_params.theta;

    auto evaluate = [&](const AnsatzParams& p) {
        const ObjectiveSample sample = objective(p);
        result.shots_used += sample.shots;
        if (!std::isfinite(sample.value)) {
            throw RunAborted("objective returned non-finite value " +
                                 std::to_string(sample.value),
                             result.shots_used);
        }
        return sample.value;
    };

    auto perturbed = [&](const std::array<int, 8>& delta, double c, int sign) {
        AnsatzParams p;
        for (int j = 0; j < 8; ++j) {
            p.theta[j] = theta[j] + sign * c * delta[j];
        }
        return p;
    };

    std::array<int, 8> delta{};
    auto draw_delta = [&] {
        for (auto& d : delta) d = rng.rademacher();
    };

    double a0 = config.a0;
    if (a0 <= 0.0) {
        // Probe the gradient magnitude at the start point; with Rademacher
        // perturbations every component of one estimate has magnitude
        // |y+ - y-| / (2 c0).
        double mag_sum = 0.0;
        for (int p = 0; p < kSpsaCalibrationProbes; ++p) {
            draw_delta();
            const double y_plus = evaluate(perturbed(delta, config.c0, +1));
            const double y_minus = evaluate(perturbed(delta, config.c0, -1));
            mag_sum += std::abs(y_plus - y_minus) / (2.0 * config.c0);
        }
        const double mag = mag_sum / kSpsaCalibrationProbes;
        a0 = mag > 1e-12 ? kSpsaFirstStepTarget *
                               std::pow(1.0 + config.A, config.alpha) / mag
                         : kSpsaFirstStepTarget;
    }
    result.calibrated_a0 = a0;

    SpsaConfig resolved = config;
    resolved.a0 = a0;
    for (int k = 0; k < config.maxiter; ++k) {
        const auto [a_k, c_k] = gain_sequences(resolved, k);
        draw_delta();
        const double y_plus = evaluate(perturbed(delta, c_k, +1));
        const double y_minus = evaluate(perturbed(delta, c_k, -1));
        const double scale = a_k * (y_plus - y_minus) / (2.0 * c_k);
        for (int j = 0; j < 8; ++j) {
            theta[j] -= scale * delta[j];  // 1/Delta_j == Delta_j
        }
        if (record_trace) {
            result.trace.emplace_back(result.final_params,
                                      0.5 * (y_plus + y_minus));
        }
    }
    return result;
}

void to_json(nlohmann::json& j, const SpsaConfig& c) {
    j = nlohmann::json{
        {"maxiter", c.maxiter},   {"a0", c.a0},
        {"c0", c.c0},             {"A", c.A},
        {"alpha", c.alpha},       {"s_gamma", c.s_gamma},
        {"shots_per_eval", c.shots_per_eval},
    };
}

void from_json(const nlohmann::json& j, SpsaConfig& c) {
    c = SpsaConfig{};
    if (j.contains("maxiter")) c.maxiter = j.at("maxiter").get<int>();
    if (j.contains("a0")) c.a0 = j.at("a0").get<double>();
    if (j.contains("c0")) c.c0 = j.at("c0").get<double>();
    c.A = j.contains("A") ? j.at("A").get<double>() : 0.1 * c.maxiter;
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("s_gamma")) c.s_gamma = j.at("s_gamma").get<double>();
    if (j.contains("shots_per_eval")) {
        c.shots_per_eval = j.at("shots_per_eval").get<std::int64_t>();
    }
}

}  // namespace shotplan
