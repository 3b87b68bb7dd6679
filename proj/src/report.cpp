#include "iafeas/report.hpp"

namespace iafeas {

namespace {

json edge_json(const Edge& e) {
    return json::array({e.first + 1, e.second + 1});
}

json witness_json(const std::optional<std::vector<Edge>>& witness) {
    if (!witness) return nullptr;
    json arr = json::array();
    for (const Edge& e : *witness) arr.push_back(edge_json(e));
    return arr;
}

} // namespace

json feasibility_report(const Scenario& scenario, const Verdict& verdict,
                        const BoundsReport& bounds, double runtime_ms) {
    json report;
    report["scenario"] = to_string(scenario);
    report["s"] = verdict.s;
    report["proper_global"] = bounds.proper_global;
    report["proper_subsets"] =
        bounds.subsets ? json(bounds.subsets->proper) : json(nullptr);
    report["bounds"] = {
        {"pairwise", bounds.pairwise_ok},
        {"simple", bounds.simple_ok},
        {"symmetric_outer",
         bounds.symmetric_outer ? json(*bounds.symmetric_outer) : json(nullptr)},
    };
    report["feasible"] = verdict.indeterminate ? json(nullptr) : json(verdict.feasible);
    report["trials"] = verdict.trials;
    json trials = json::array();
    for (const TrialEvidence& t : verdict.per_trial)
        trials.push_back({{"sigma_min", t.sigma_min}, {"residual", t.residual}});
    report["per_trial"] = trials;
    report["seed"] = verdict.seed.value;
    report["degenerate"] = verdict.degenerate;
    report["runtime_ms"] = runtime_ms < 0.0 ? json(nullptr) : json(runtime_ms);
    return report;
}

json bounds_report_json(const Scenario& scenario, const BoundsReport& bounds) {
    json pairwise = json::array();
    for (const PairwiseCheck& c : bounds.pairwise)
        pairwise.push_back({{"users", json::array({c.user_a + 1, c.user_b + 1})},
                            {"lhs", c.lhs},
                            {"bound", c.bound},
                            {"ok", c.ok}});
    json simple = json::array();
    for (const auto& c : bounds.simple)
        simple.push_back({{"edge", edge_json(c.edge)}, {"ok", c.ok}});
    return {
        {"scenario", to_string(scenario)},
        {"s", bounds.s},
        {"proper_global", bounds.proper_global},
        {"pairwise", pairwise},
        {"pairwise_ok", bounds.pairwise_ok},
        {"simple", simple},
        {"simple_ok", bounds.simple_ok},
        {"symmetric_outer",
         bounds.symmetric_outer ? json(*bounds.symmetric_outer) : json(nullptr)},
        {"symmetric_outer_ok",
         bounds.symmetric_outer_ok ? json(*bounds.symmetric_outer_ok) : json(nullptr)},
        {"proper_subsets", bounds.subsets ? json(bounds.subsets->proper) : json(nullptr)},
        {"witness", bounds.subsets ? witness_json(bounds.subsets->witness) : json(nullptr)},
    };
}

json properness_report_json(const Scenario& scenario, const SubsetProperness& subsets,
                            long long s) {
    return {
        {"scenario", to_string(scenario)},
        {"s", s},
        {"proper_global", s >= 0},
        {"proper_subsets", subsets.proper},
        {"witness", witness_json(subsets.witness)},
        {"subsets_checked", subsets.subsets_checked},
    };
}

json dof_report_json(const DofResult& result, RandomSeed seed, int trials) {
    json tuples = json::array();
    for (const auto& tuple : result.argmax_tuples) tuples.push_back(tuple);
    return {
        {"max_total", result.max_total},
        {"argmax_tuples", tuples},
        {"tuples_tested", result.tuples_tested},
        {"tuples_pruned", result.tuples_pruned},
        {"seed", seed.value},
        {"trials", trials},
    };
}

json exact_report_json(const Scenario& scenario, const ExactVerdict& verdict,
                       RandomSeed seed) {
    json claims = json::array();
    for (bool claim : verdict.feasible_claims) claims.push_back(claim);
    return {
        {"scenario", to_string(scenario)},
        {"s", verdict.s},
        {"feasible", verdict.feasible},
        {"feasible_claims", claims},
        {"repetitions", verdict.repetitions},
        {"h_used", verdict.h_used.get_str()},
        {"theoretical_h", verdict.theoretical_h.get_str()},
        {"seed", seed.value},
    };
}

json crosscheck_report_json(const Scenario& scenario, const Verdict& verdict,
                            const CorroborationReport& report) {
    const char* status = nullptr;
    switch (report.status) {
        case CorroborationReport::Status::Corroborated: status = "corroborated"; break;
        case CorroborationReport::Status::Consistent: status = "consistent"; break;
        case CorroborationReport::Status::Mismatch: status = "mismatch"; break;
        case CorroborationReport::Status::Skipped: status = "skipped"; break;
    }
    json runs = json::array();
    for (const auto& run : report.runs)
        runs.push_back({{"seed", run.seed},
                        {"converged", run.converged},
                        {"final_leakage", run.final_leakage},
                        {"iterations", run.iterations}});
    return {
        {"scenario", to_string(scenario)},
        {"feasible", verdict.indeterminate ? json(nullptr) : json(verdict.feasible)},
        {"status", status},
        {"runs", runs},
    };
}

json error_report_json(const std::string& input, const std::string& message) {
    return {{"input", input}, {"error", message}};
}

} // namespace iafeas
