#include <CLI11.hpp>

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <queue>
#include <sstream>
#include <thread>

#include "iafeas/bounds.hpp"
#include "iafeas/crosscheck.hpp"
#include "iafeas/dof_search.hpp"
#include "iafeas/exact.hpp"
#include "iafeas/feasibility.hpp"
#include "iafeas/report.hpp"
#include "iafeas/scenario.hpp"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;

struct Options {
    std::string scenario_text;
    std::uint64_t seed = iafeas::RandomSeed{}.value;
    int trials = 3;
    bool json = false;
    double tol = 1e-9;
    bool exact = false;
    std::string h_text;
    int reps = 5;
    int max_edges = 20;
    int parallel = 1;
    int max_iters = 5000;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

mpz_class parse_grid(const Options& opt) {
    if (opt.h_text.empty()) return iafeas::default_exact_grid();
    mpz_class h;
    if (h.set_str(opt.h_text, 10) != 0 || h < 1)
        throw CLI::ValidationError("--h", "expected a positive decimal integer");
    return h;
}

struct FeasibilityOutcome {
    iafeas::json report;
    int exit_code = kExitFeasible;
    std::string human;
};

FeasibilityOutcome run_feasibility(const std::string& text, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const iafeas::Scenario scenario = iafeas::parse_scenario(text);
    const iafeas::BoundsReport bounds = iafeas::bounds_report(scenario, opt.max_edges);
    const iafeas::Verdict verdict =
        iafeas::feasibility_test(scenario, iafeas::RandomSeed{opt.seed}, opt.trials,
                                 iafeas::FeasibilityOptions{opt.tol, 1e-8});

    FeasibilityOutcome outcome;
    outcome.report = iafeas::feasibility_report(scenario, verdict, bounds);
    outcome.exit_code = verdict.indeterminate ? kExitIndeterminate
                        : verdict.feasible    ? kExitFeasible
                                              : kExitInfeasible;

    std::ostringstream human;
    human << "scenario      " << iafeas::to_string(scenario) << "\n"
          << "s             " << verdict.s << "\n"
          << "proper        " << (bounds.proper_global ? "yes" : "no");
    if (bounds.subsets && bounds.proper_global)
        human << (bounds.subsets->proper ? " (all equation subsets)" : " (improper subset exists)");
    human << "\n";
    if (bounds.symmetric_outer)
        human << "outer bound   total streams <= " << *bounds.symmetric_outer << "\n";
    human << "verdict       "
          << (verdict.indeterminate ? "indeterminate"
              : verdict.feasible    ? "feasible"
                                    : "infeasible")
          << (verdict.degenerate ? " (degenerate: some channel forced to zero)" : "") << "\n"
          << "trials        " << verdict.per_trial.size() << " run";
    for (const auto& t : verdict.per_trial)
        human << "\n  sigma_min/sigma_max " << (t.sigma_max > 0 ? t.sigma_min / t.sigma_max : 0.0)
              << "  residual " << t.residual;
    human << "\nseed          " << opt.seed << "\nruntime_ms    " << elapsed_ms(start);
    outcome.human = human.str();
    return outcome;
}

int emit(const FeasibilityOutcome& outcome, bool json_mode) {
    if (json_mode)
        std::cout << outcome.report.dump() << "\n";
    else
        std::cout << outcome.human << "\n";
    return outcome.exit_code;
}

int run_batch(const Options& opt) {
    std::ifstream file(opt.scenario_text);
    if (!file) {
        std::cerr << "error: cannot open batch file '" << opt.scenario_text << "'\n";
        return kExitUsage;
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }

    std::vector<iafeas::json> reports(lines.size());
    auto work = [&](std::size_t index) {
        try {
            Options line_opt = opt;
            line_opt.seed = iafeas::derive_seed(iafeas::RandomSeed{opt.seed}, index).value;
            reports[index] = run_feasibility(lines[index], line_opt).report;
        } catch (const std::exception& e) {
            reports[index] = iafeas::error_report_json(lines[index], e.what());
        }
    };

    const int workers = std::max(1, opt.parallel);
    if (workers == 1 || lines.size() <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i) work(i);
    } else {
        std::mutex mu;
        std::size_t next = 0;
        auto worker = [&]() {
            while (true) {
                std::size_t index;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= lines.size()) return;
                    index = next++;
                }
                work(index);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& report : reports) std::cout << report.dump() << "\n";
    return kExitFeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generic feasibility of linear interference alignment for K-user MIMO "
                 "interference channels: randomized rank test, exact-arithmetic variant, "
                 "necessary-condition screens and DoF maximization."};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_scenario = true) {
        if (with_scenario)
            cmd->add_option("scenario", opt.scenario_text,
                            "scenario text, e.g. \"(5x11,4)^3\" or "
                            "\"(2x2,1)^2|edges=(1,2)\"");
        cmd->add_option("--seed", opt.seed, "random seed (default fixed for reproducibility)");
        cmd->add_option("--trials", opt.trials, "independent test pipelines, all must agree");
        cmd->add_flag("--json", opt.json, "machine-readable output");
        cmd->add_option("--tol", opt.tol, "relative sigma_min threshold");
        cmd->add_option("--max-edges", opt.max_edges, "edge budget for subset properness");
        return cmd;
    };

    auto* cmd_test = add_common(app.add_subcommand(
        "test", "decide generic alignment feasibility (exit 0 feasible, 1 infeasible)"));
    cmd_test->add_flag("--exact", opt.exact, "use the exact-arithmetic variant");
    cmd_test->add_option("--h", opt.h_text, "integer grid size for the exact variant");
    cmd_test->add_option("--reps", opt.reps, "repetitions of the exact variant");

    auto* cmd_s = add_common(app.add_subcommand("s", "print the dimension margin s"));
    auto* cmd_bounds =
        add_common(app.add_subcommand("bounds", "necessary-condition screens only"));
    auto* cmd_proper =
        add_common(app.add_subcommand("proper", "subset properness (exponential in edges)"));

    auto* cmd_dofmax = add_common(app.add_subcommand(
        "dofmax", "maximize total streams; use '?' in stream slots to search, e.g. \"(7x13,?)^3\""));
    bool no_pruning = false;
    cmd_dofmax->add_flag("--no-pruning", no_pruning, "disable the necessary-bound screens");

    auto* cmd_exact =
        add_common(app.add_subcommand("exact", "exact-arithmetic feasibility test"));
    cmd_exact->add_option("--h", opt.h_text, "integer grid size (decimal)");
    cmd_exact->add_option("--reps", opt.reps, "repetitions (any surjective witness => feasible)");

    auto* cmd_crosscheck = add_common(app.add_subcommand(
        "crosscheck", "advisory leakage-minimization corroboration of the verdict"));
    cmd_crosscheck->add_option("--max-iters", opt.max_iters, "iteration cap per seed");

    auto* cmd_batch = app.add_subcommand("batch", "newline-delimited JSON for a scenario file");
    cmd_batch->add_option("file", opt.scenario_text, "file with one scenario per line")
        ->required();
    cmd_batch->add_option("--seed", opt.seed, "base seed; each line derives its own");
    cmd_batch->add_option("--trials", opt.trials, "trials per scenario");
    cmd_batch->add_option("--tol", opt.tol, "relative sigma_min threshold");
    cmd_batch->add_option("--max-edges", opt.max_edges, "edge budget for subset properness");
    cmd_batch->add_option("--parallel", opt.parallel, "worker count (output order preserved)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const iafeas::RandomSeed seed{opt.seed};
        if (app.got_subcommand(cmd_test)) {
            if (opt.exact) {
                const iafeas::Scenario scenario = iafeas::parse_scenario(opt.scenario_text);
                const iafeas::ExactVerdict verdict = iafeas::exact_feasibility_test(
                    scenario, parse_grid(opt), opt.reps, seed);
                const iafeas::json report = iafeas::exact_report_json(scenario, verdict, seed);
                std::cout << (opt.json ? report.dump()
                                       : std::string("exact verdict  ") +
                                             (verdict.feasible ? "feasible" : "infeasible"))
                          << "\n";
                return verdict.feasible ? kExitFeasible : kExitInfeasible;
            }
            return emit(run_feasibility(opt.scenario_text, opt), opt.json);
        }
        if (app.got_subcommand(cmd_s)) {
            const iafeas::Scenario scenario = iafeas::parse_scenario(opt.scenario_text);
            const long long s = iafeas::compute_s(scenario);
            if (opt.json)
                std::cout << iafeas::json{{"scenario", iafeas::to_string(scenario)}, {"s", s}}
                                 .dump()
                          << "\n";
            else
                std::cout << s << "\n";
            return kExitFeasible;
        }
        if (app.got_subcommand(cmd_bounds)) {
            const iafeas::Scenario scenario = iafeas::parse_scenario(opt.scenario_text);
            const iafeas::BoundsReport bounds = iafeas::bounds_report(scenario, opt.max_edges);
            if (opt.json) {
                std::cout << iafeas::bounds_report_json(scenario, bounds).dump() << "\n";
            } else {
                std::cout << "s " << bounds.s << (bounds.proper_global ? " (proper)" : " (improper)")
                          << "\n";
                for (const auto& c : bounds.pairwise)
                    std::cout << "pair (" << c.user_a + 1 << "," << c.user_b + 1 << "): d_sum "
                              << c.lhs << " vs bound " << c.bound << (c.ok ? " ok" : " VIOLATED")
                              << "\n";
                std::cout << "per-edge strict sum bound: " << (bounds.simple_ok ? "ok" : "VIOLATED")
                          << "\n";
                if (bounds.symmetric_outer)
                    std::cout << "symmetric outer bound: " << *bounds.symmetric_outer
                              << (*bounds.symmetric_outer_ok ? " ok" : " VIOLATED") << "\n";
                if (bounds.subsets)
                    std::cout << "subset properness: "
                              << (bounds.subsets->proper ? "proper" : "improper") << "\n";
            }
            return kExitFeasible;
        }
        if (app.got_subcommand(cmd_proper)) {
            const iafeas::Scenario scenario = iafeas::parse_scenario(opt.scenario_text);
            const iafeas::SubsetProperness subsets =
                iafeas::proper_subsets(scenario, opt.max_edges);
            if (opt.json) {
                std::cout << iafeas::properness_report_json(scenario, subsets,
                                                            iafeas::compute_s(scenario))
                                 .dump()
                          << "\n";
            } else {
                std::cout << (subsets.proper ? "proper" : "improper") << " ("
                          << subsets.subsets_checked << " subsets checked)\n";
                if (subsets.witness) {
                    std::cout << "violating subset:";
                    for (const auto& [k, l] : *subsets.witness)
                        std::cout << " (" << k + 1 << "," << l + 1 << ")";
                    std::cout << "\n";
                }
            }
            return kExitFeasible;
        }
        if (app.got_subcommand(cmd_dofmax)) {
            const iafeas::ScenarioPattern pattern =
                iafeas::parse_scenario_pattern(opt.scenario_text);
            std::vector<std::pair<int, int>> antennas;
            for (const auto& u : pattern.users)
                antennas.emplace_back(u.tx_antennas, u.rx_antennas);
            iafeas::DofOptions dof_opt;
            dof_opt.use_pruning = !no_pruning;
            dof_opt.trials = opt.trials;
            dof_opt.fixed_streams.assign(pattern.streams.begin(), pattern.streams.end());
            const iafeas::DofResult result =
                iafeas::max_dof(antennas, pattern.edges, seed, dof_opt);
            if (opt.json) {
                std::cout << iafeas::dof_report_json(result, seed, opt.trials).dump() << "\n";
            } else {
                std::cout << "max total streams " << result.max_total << "\n";
                for (const auto& tuple : result.argmax_tuples) {
                    std::cout << "  (";
                    for (std::size_t i = 0; i < tuple.size(); ++i)
                        std::cout << (i ? "," : "") << tuple[i];
                    std::cout << ")\n";
                }
                std::cout << result.tuples_tested << " tested, " << result.tuples_pruned
                          << " pruned\n";
            }
            return kExitFeasible;
        }
        if (app.got_subcommand(cmd_exact)) {
            const iafeas::Scenario scenario = iafeas::parse_scenario(opt.scenario_text);
            const iafeas::ExactVerdict verdict =
                iafeas::exact_feasibility_test(scenario, parse_grid(opt), opt.reps, seed);
            if (opt.json)
                std::cout << iafeas::exact_report_json(scenario, verdict, seed).dump() << "\n";
            else
                std::cout << "exact verdict  " << (verdict.feasible ? "feasible" : "infeasible")
                          << " (" << verdict.feasible_claims.size() << " repetitions run)\n";
            return verdict.feasible ? kExitFeasible : kExitInfeasible;
        }
        if (app.got_subcommand(cmd_crosscheck)) {
            const iafeas::Scenario scenario = iafeas::parse_scenario(opt.scenario_text);
            const iafeas::Verdict verdict =
                iafeas::feasibility_test(scenario, seed, opt.trials);
            std::vector<iafeas::RandomSeed> seeds;
            for (int i = 0; i < 10; ++i) seeds.push_back(iafeas::derive_seed(seed, 0xcc00 + i));
            const iafeas::CorroborationReport report =
                iafeas::corroborate(scenario, verdict, seeds, opt.max_iters);
            if (opt.json) {
                std::cout << iafeas::crosscheck_report_json(scenario, verdict, report).dump()
                          << "\n";
            } else {
                std::cout << "verdict " << (verdict.feasible ? "feasible" : "infeasible") << "\n";
                for (const auto& run : report.runs)
                    std::cout << "  seed " << run.seed << ": leakage " << run.final_leakage
                              << " after " << run.iterations << " iterations\n";
                std::cout << "corroboration: ";
                switch (report.status) {
                    case iafeas::CorroborationReport::Status::Corroborated:
                        std::cout << "corroborated (leakage vanished)\n";
                        break;
                    case iafeas::CorroborationReport::Status::Consistent:
                        std::cout << "consistent (no seed aligned)\n";
                        break;
                    case iafeas::CorroborationReport::Status::Mismatch:
                        std::cout << "mismatch (advisory only; the verdict stands)\n";
                        break;
                    case iafeas::CorroborationReport::Status::Skipped:
                        std::cout << "skipped\n";
                        break;
                }
            }
            return kExitFeasible;
        }
        if (app.got_subcommand(cmd_batch)) return run_batch(opt);
    } catch (const iafeas::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const iafeas::EdgeBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
