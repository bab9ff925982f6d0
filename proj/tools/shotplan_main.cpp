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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shotplan/campaign.hpp"
#include "shotplan/errors.hpp"
#include "shotplan/io.hpp"
#include "shotplan/version.hpp"

namespace {

using namespace shotplan;

constexpr int kExitOk = 0;
constexpr int kExitInvalidArguments = 2;
constexpr int kExitInsufficientData = 3;
constexpr int kExitInfeasibleBudget = 4;

struct AppConfig {
    Hamiltonian hamiltonian;
    SpsaConfig spsa;
    std::vector<std::int64_t> n_schedule;
    int trials = 200;
    std::vector<double> accuracy_levels;
    std::vector<std::int64_t> budgets;
    std::vector<double> precisions;
    nlohmann::json effective;  // digest source
};

nlohmann::json default_config_json() {
    return nlohmann::json{
        {"hamiltonian", "h2"},
        {"spsa", SpsaConfig{}},
        {"bench",
         {{"n_schedule",
           {3520, 14080, 56320, 225280, 901120, 3604480}},
          {"trials", 200}}},
        {"accuracy_levels", {"ChPx1", "ChPx2", "ChPx3", "ChPx4", "ChPx5"}},
        {"budgets", {100000, 300000, 1000000, 3000000, 10000000}},
        {"precisions", {"ChPx1", "ChPx2", "ChPx3", "ChPx4", "ChPx5"}},
    };
}

double precision_entry(const nlohmann::json& v) {
    return v.is_string() ? parse_precision(v.get<std::string>())
                         : v.get<double>();
}

AppConfig load_config(const std::string& path) {
    nlohmann::json doc = default_config_json();
    if (!path.empty()) {
        const nlohmann::json user = read_json_file(path);
        doc.merge_patch(user);
    }
    AppConfig cfg;
    const auto& ham = doc.at("hamiltonian");
    if (ham.is_string()) {
        const auto name = ham.get<std::string>();
        if (name == "h2") {
            cfg.hamiltonian = h2_hamiltonian();
        } else {
            cfg.hamiltonian =
                read_json_file(name).get<Hamiltonian>();  // treat as a path
        }
    } else {
        cfg.hamiltonian = ham.get<Hamiltonian>();
    }
    cfg.spsa = doc.at("spsa").get<SpsaConfig>();
    cfg.n_schedule =
        doc.at("bench").at("n_schedule").get<std::vector<std::int64_t>>();
    cfg.trials = doc.at("bench").at("trials").get<int>();
    for (const auto& v : doc.at("accuracy_levels")) {
        cfg.accuracy_levels.push_back(precision_entry(v));
    }
    cfg.budgets = doc.at("budgets").get<std::vector<std::int64_t>>();
    for (const auto& v : doc.at("precisions")) {
        cfg.precisions.push_back(precision_entry(v));
    }
    std::sort(cfg.accuracy_levels.begin(), cfg.accuracy_levels.end());
    cfg.effective = std::move(doc);
    return cfg;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device entropy;
    const std::uint64_t chosen =
        (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
    std::cout << "seed: " << chosen << "\n";
    return chosen;
}

std::vector<SuccessCurve> load_curves(const std::string& path) {
    const nlohmann::json doc = read_json_file(path);
    return doc.at("curves").get<std::vector<SuccessCurve>>();
}

const SuccessCurve& curve_for_precision(const std::vector<SuccessCurve>& curves,
                                        double d) {
    for (const auto& c : curves) {
        if (std::abs(c.accuracy_d - d) <= 1e-12) return c;
    }
    throw std::invalid_argument("no fitted curve for the requested precision");
}

int cmd_exact(const AppConfig& cfg, const std::string& out, bool as_json) {
    const Spectrum spectrum = exact_spectrum(cfg.hamiltonian);
    nlohmann::json payload{
        {"eigenvalues", spectrum.eigenvalues},
        {"ground_energy", spectrum.eigenvalues[0]},
        {"constant", cfg.hamiltonian.constant},
    };
    nlohmann::json ground = nlohmann::json::array();
    for (const auto& amp : spectrum.ground_state) {
        ground.push_back({amp.real(), amp.imag()});
    }
    payload["ground_state"] = std::move(ground);
    if (as_json || !out.empty()) {
        const FileMeta meta = make_meta(0, cfg.effective);
        if (as_json) {
            std::cout << nlohmann::json{{"meta", meta}, {"spectrum", payload}}
                             .dump(2)
                      << "\n";
        }
        if (!out.empty()) write_json_file(out, meta, "spectrum", payload);
    } else {
        std::cout << "eigenvalues (Hartree):";
        for (double e : spectrum.eigenvalues) std::cout << ' ' << e;
        std::cout << "\nground energy: " << spectrum.eigenvalues[0]
                  << "\nground state:";
        for (const auto& amp : spectrum.ground_state) {
            std::cout << " (" << amp.real() << (std::signbit(amp.imag()) ? "-" : "+")
                      << std::abs(amp.imag()) << "i)";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_bench(const AppConfig& cfg, const std::string& out,
              std::optional<std::uint64_t> seed_opt, int trials_override,
              int workers) {
    const std::uint64_t master = resolve_seed(seed_opt);
    const int trials = trials_override > 0 ? trials_override : cfg.trials;

    // One flat trial list, seeded by global index so workers cannot change
    // the outcome.
    struct Task {
        SpsaConfig config;
        std::uint64_t index;
    };
    std::vector<Task> tasks;
    for (const std::int64_t n_target : cfg.n_schedule) {
        SpsaConfig run_cfg = cfg.spsa;
        const std::int64_t evals =
            2LL * run_cfg.maxiter +
            (run_cfg.a0 <= 0.0 ? 2LL * kSpsaCalibrationProbes : 0LL);
        run_cfg.shots_per_eval = std::max<std::int64_t>(
            static_cast<std::int64_t>(cfg.hamiltonian.group_count()),
            n_target / evals);
        for (int t = 0; t < trials; ++t) {
            tasks.push_back(Task{run_cfg, tasks.size()});
        }
    }

    std::vector<TrialRecord> records(tasks.size());
    const auto run_range = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < tasks.size(); i += step) {
            records[i] = run_trial(tasks[i].config, cfg.hamiltonian,
                                   derive_seed(master, tasks[i].index));
        }
    };
    workers = std::clamp<int>(workers, 1, 64);
    if (workers == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(run_range, static_cast<std::size_t>(t), workers);
        }
        for (auto& th : pool) th.join();
    }

    // Variational sanity: the batch mean of graded energies sits above the
    // exact ground energy.
    const double e0 = exact_spectrum(cfg.hamiltonian).eigenvalues[0];
    double mean = 0.0;
    for (const auto& r : records) mean += r.true_energy;
    mean /= static_cast<double>(records.size());
    if (!(mean > e0)) {
        throw std::logic_error("benchmark batch violates the variational bound");
    }

    append_trial_records(out, make_meta(master, cfg.effective), records);
    std::cout << "wrote " << records.size() << " trial records to " << out
              << "\n";
    return kExitOk;
}

int cmd_fit(const AppConfig& cfg, const std::string& records_path,
            const std::string& out) {
    const auto records = read_trial_records(records_path);
    if (records.empty()) throw InsufficientData("no trial records");
    const double e0 = exact_spectrum(cfg.hamiltonian).eigenvalues[0];
    const auto samples =
        aggregate_samples(records, cfg.accuracy_levels, e0);
    std::vector<SuccessCurve> curves;
    for (const double d : cfg.accuracy_levels) {
        curves.push_back(fit_success_curve(samples, d));
    }
    // Curves plus the success aggregates they were fit to.
    std::ofstream file(out, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + out);
    file << nlohmann::json{{"meta", make_meta(0, cfg.effective)},
                           {"samples", samples},
                           {"curves", curves}}
                .dump(2)
         << '\n';
    std::cout << "fitted " << curves.size() << " curves from "
              << records.size() << " records to " << out << "\n";
    return kExitOk;
}

int cmd_plan(const AppConfig& cfg, const std::string& curves_path,
             double budget, const std::string& precision,
             const std::string& out, const std::string& surface_out,
             std::int64_t max_r) {
    const auto curves = load_curves(curves_path);
    const double d = parse_precision(precision);
    const std::int64_t B = static_cast<std::int64_t>(std::llround(budget));
    const SuccessCurve& curve = curve_for_precision(curves, d);
    const MetaPlan plan = optimize_plan(curve, cfg.hamiltonian, B, d);
    const FileMeta meta = make_meta(0, cfg.effective);
    write_json_file(out, meta, "plan", plan);
    std::cout << "plan: n=" << plan.n << " m=" << plan.m << " r=" << plan.r
              << " P_reliable=" << plan.P_reliable << "\n";
    if (!surface_out.empty()) {
        const auto cells =
            probability_surface(curve, cfg.hamiltonian, B, d, max_r);
        write_surface_csv(surface_out, meta, cells);
        std::cout << "surface: " << cells.size() << " cells to " << surface_out
                  << "\n";
    }
    return kExitOk;
}

int cmd_run(const AppConfig& cfg, const std::string& plan_path,
            const std::string& out, std::optional<std::uint64_t> seed_opt,
            int workers) {
    const std::uint64_t master = resolve_seed(seed_opt);
    const nlohmann::json plan_doc = read_json_file(plan_path);
    const MetaPlan plan = plan_doc.at("plan").get<MetaPlan>();
    const CampaignResult result =
        run_campaign(plan, cfg.hamiltonian, cfg.spsa, master, workers);
    write_json_file(out, make_meta(master, cfg.effective), "campaign", result);
    std::cout << "campaign: selected run " << result.selected_index
              << " energy " << result.selected_energy << " (true "
              << result.selected_true_energy << "), spent "
              << result.total_shots_spent << " shots\n";
    return kExitOk;
}

int cmd_frontier(const AppConfig& cfg, const std::string& curves_path,
                 const std::string& out) {
    const auto all_curves = load_curves(curves_path);
    std::vector<SuccessCurve> selected;
    for (const double d : cfg.precisions) {
        selected.push_back(curve_for_precision(all_curves, d));
    }
    const auto rows =
        budget_precision_frontier(selected, cfg.hamiltonian, cfg.budgets);
    write_frontier_csv(out, make_meta(0, cfg.effective), rows);
    std::cout << "frontier: " << rows.size() << " rows to " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shot-budget meta-optimization for SPSA-driven VQE"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file")
        ->check(CLI::ExistingFile);

    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "Master seed (omit for entropy)");
    int workers = 1;
    app.add_option("--workers", workers, "Concurrent trial workers")
        ->check(CLI::PositiveNumber);

    auto* exact = app.add_subcommand("exact", "Exact spectrum and ground state");
    std::string exact_out;
    bool exact_json = false;
    exact->add_option("--out", exact_out, "Write the spectrum JSON here");
    exact->add_flag("--json", exact_json, "Print JSON to stdout");

    auto* bench =
        app.add_subcommand("bench", "Sample optimizer trials over the n-schedule");
    std::string bench_out;
    int bench_trials = 0;
    bench->add_option("--out", bench_out, "JSONL output path")->required();
    bench->add_option("--trials", bench_trials, "Trials per schedule point");

    auto* fit = app.add_subcommand("fit", "Fit success curves from records");
    std::string fit_records, fit_out;
    fit->add_option("--records", fit_records, "Trial records JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    fit->add_option("--out", fit_out, "Curves JSON output path")->required();

    auto* plan = app.add_subcommand("plan", "Optimal (n, m, r) for a budget");
    std::string plan_curves, plan_precision = "ChPx1", plan_out, plan_surface;
    double plan_budget = 0.0;
    std::int64_t plan_max_r = 0;
    plan->add_option("--curves", plan_curves, "Fitted curves JSON")
        ->required()
        ->check(CLI::ExistingFile);
    plan->add_option("--budget", plan_budget, "Total shot budget B")
        ->required();
    plan->add_option("--precision", plan_precision,
                     "Accuracy d (Hartree or ChPxK)");
    plan->add_option("--out", plan_out, "Plan JSON output path")->required();
    plan->add_option("--surface", plan_surface,
                     "Also write the (r, m) surface CSV here");
    plan->add_option("--max-r", plan_max_r, "Surface repetition cap");

    auto* run = app.add_subcommand("run", "Execute a plan as a campaign");
    std::string run_plan, run_out;
    run->add_option("--plan", run_plan, "Plan JSON")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", run_out, "Campaign JSON output path")->required();

    auto* frontier =
        app.add_subcommand("frontier", "Budget/precision frontier CSV");
    std::string frontier_curves, frontier_out;
    frontier->add_option("--curves", frontier_curves, "Fitted curves JSON")
        ->required()
        ->check(CLI::ExistingFile);
    frontier->add_option("--out", frontier_out, "Frontier CSV output path")
        ->required();

    try {
        app.parse(argc, argv);
        const AppConfig cfg = load_config(config_path);
        if (exact->parsed()) return cmd_exact(cfg, exact_out, exact_json);
        if (bench->parsed()) {
            return cmd_bench(cfg, bench_out, seed, bench_trials, workers);
        }
        if (fit->parsed()) return cmd_fit(cfg, fit_records, fit_out);
        if (plan->parsed()) {
            return cmd_plan(cfg, plan_curves, plan_budget, plan_precision,
                            plan_out, plan_surface, plan_max_r);
        }
        if (run->parsed()) return cmd_run(cfg, run_plan, run_out, seed, workers);
        if (frontier->parsed()) {
            return cmd_frontier(cfg, frontier_curves, frontier_out);
        }
        return kExitInvalidArguments;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidArguments;
    } catch (const InsufficientData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInsufficientData;
    } catch (const InfeasibleBudget& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasibleBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidArguments;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
