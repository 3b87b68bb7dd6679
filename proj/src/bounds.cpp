#include "iafeas/bounds.hpp"

#include <algorithm>
#include <set>

#include "iafeas/feasibility.hpp"

namespace iafeas {

std::vector<PairwiseCheck> pairwise_bound(const Scenario& scenario) {
    std::set<Edge> edges(scenario.edges.begin(), scenario.edges.end());
    std::vector<PairwiseCheck> checks;
    for (const auto& [k, l] : scenario.edges) {
        if (k > l) continue; // visit each unordered pair once
        if (!edges.count({l, k})) continue; // bound needs interference both ways
        const UserConfig& a = scenario.users[k];
        const UserConfig& b = scenario.users[l];
        PairwiseCheck c;
        c.user_a = k;
        c.user_b = l;
        c.lhs = a.streams + b.streams;
        c.bound = std::min(
            std::min<long long>(a.tx_antennas + b.tx_antennas, a.rx_antennas + b.rx_antennas),
            std::min<long long>(std::max(a.rx_antennas, b.tx_antennas),
                                std::max(b.rx_antennas, a.tx_antennas)));
        c.ok = c.lhs <= c.bound;
        checks.push_back(c);
    }
    return checks;
}

double symmetric_outer_bound(int tx_antennas, int rx_antennas, int user_count) {
    if (tx_antennas < 1 || rx_antennas < 1 || user_count < 1)
        throw std::invalid_argument("symmetric_outer_bound: arguments must be >= 1");
    const long long lo = std::min(tx_antennas, rx_antennas);
    const long long hi = std::max(tx_antennas, rx_antennas);
    const long long ratio = hi / lo;
    if (user_count <= ratio) return static_cast<double>(user_count) * static_cast<double>(lo);
    return static_cast<double>(user_count) * static_cast<double>(hi) /
           static_cast<double>(ratio + 1);
}

namespace {

struct SubsetCounter {
    const Scenario& scenario;
    const std::vector<Edge>& edges;
    std::vector<int> rx_uses;   // how many selected edges touch each receiver
    std::vector<int> tx_uses;
    long long equations = 0;
    long long variables = 0;

    explicit SubsetCounter(const Scenario& s)
        : scenario(s),
          edges(s.edges),
          rx_uses(s.users.size(), 0),
          tx_uses(s.users.size(), 0) {}

    long long rx_vars(int k) const {
        const UserConfig& u = scenario.users[k];
        return static_cast<long long>(u.streams) * (u.rx_antennas - u.streams);
    }
    long long tx_vars(int l) const {
        const UserConfig& u = scenario.users[l];
        return static_cast<long long>(u.streams) * (u.tx_antennas - u.streams);
    }

    void push(int edge_index) {
        const auto& [k, l] = edges[edge_index];
        equations +=
            static_cast<long long>(scenario.users[k].streams) * scenario.users[l].streams;
        if (rx_uses[k]++ == 0) variables += rx_vars(k);
        if (tx_uses[l]++ == 0) variables += tx_vars(l);
    }

    void pop(int edge_index) {
        const auto& [k, l] = edges[edge_index];
        equations -=
            static_cast<long long>(scenario.users[k].streams) * scenario.users[l].streams;
        if (--rx_uses[k] == 0) variables -= rx_vars(k);
        if (--tx_uses[l] == 0) variables -= tx_vars(l);
    }

    bool violated() const { return equations > variables; }
};

/// Preorder DFS over increasing index sequences visits subsets in
/// lexicographic order, so the first violation found is the
/// lexicographically first witness.
bool dfs(SubsetCounter& counter, int first, std::vector<int>& stack,
         std::uint64_t& checked, std::vector<int>& witness) {
    const int n = static_cast<int>(counter.edges.size());
    for (int i = first; i < n; ++i) {
        counter.push(i);
        stack.push_back(i);
        ++checked;
        if (counter.violated()) {
            witness = stack;
            return true;
        }
        if (dfs(counter, i + 1, stack, checked, witness)) return true;
        stack.pop_back();
        counter.pop(i);
    }
    return false;
}

} // namespace

SubsetProperness proper_subsets(const Scenario& scenario, int max_edges) {
    const int n = static_cast<int>(scenario.edges.size());
    if (n > max_edges)
        throw EdgeBudgetExceeded("proper_subsets: " + std::to_string(n) +
                                 " edges exceed the budget of " + std::to_string(max_edges) +
                                 " (enumeration is exponential); raise the budget explicitly");

    SubsetProperness result;
    SubsetCounter counter(scenario);
    std::vector<int> stack;
    std::vector<int> witness;
    if (dfs(counter, 0, stack, result.subsets_checked, witness)) {
        result.proper = false;
        std::vector<Edge> edges;
        for (int i : witness) edges.push_back(scenario.edges[i]);
        result.witness = std::move(edges);
    }
    return result;
}

BoundsReport bounds_report(const Scenario& scenario, int max_edges) {
    BoundsReport report;
    report.s = compute_s(scenario);
    report.proper_global = report.s >= 0;

    report.pairwise = pairwise_bound(scenario);
    report.pairwise_ok = std::all_of(report.pairwise.begin(), report.pairwise.end(),
                                     [](const PairwiseCheck& c) { return c.ok; });

    report.simple = validate(scenario).edge_sum_bounds;
    report.simple_ok = std::all_of(report.simple.begin(), report.simple.end(),
                                   [](const ValidationReport::EdgeCheck& c) { return c.ok; });

    if (scenario.symmetric() && scenario.fully_connected()) {
        const UserConfig& u = scenario.users.front();
        report.symmetric_outer =
            symmetric_outer_bound(u.tx_antennas, u.rx_antennas, scenario.user_count());
        long long total = 0;
        for (const UserConfig& user : scenario.users) total += user.streams;
        report.symmetric_outer_ok = static_cast<double>(total) <= *report.symmetric_outer;
    }

    try {
        report.subsets = proper_subsets(scenario, max_edges);
    } catch (const EdgeBudgetExceeded&) {
        report.subsets = std::nullopt;
    }
    return report;
}

} // namespace iafeas
