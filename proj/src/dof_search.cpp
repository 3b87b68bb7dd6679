#include "iafeas/dof_search.hpp"

#include <algorithm>
#include <stdexcept>

#include "iafeas/bounds.hpp"

namespace iafeas {

namespace {

/// Enumerates tuples with the given total in increasing lexicographic order.
bool next_tuple_with_sum(std::vector<int>& tuple, const std::vector<int>& caps, int total,
                         bool first) {
    const int n = static_cast<int>(tuple.size());
    auto fill_suffix_min = [&](int from, int remaining) -> bool {
        // Smallest lexicographic completion: push the load as far right as
        // possible, i.e. give the leftmost slots as little as we can.
        int capacity = 0;
        for (int i = from; i < n; ++i) capacity += caps[i];
        if (remaining > capacity || remaining < 0) return false;
        for (int i = from; i < n; ++i) {
            int tail_capacity = 0;
            for (int j = i + 1; j < n; ++j) tail_capacity += caps[j];
            const int value = std::max(0, remaining - tail_capacity);
            tuple[i] = value;
            remaining -= value;
        }
        return true;
    };

    if (first) return fill_suffix_min(0, total);

    // Find the rightmost position we can increment while a valid suffix exists.
    for (int i = n - 2; i >= 0; --i) {
        int used = 0;
        for (int j = 0; j < i; ++j) used += tuple[j];
        for (int value = tuple[i] + 1; value <= caps[i]; ++value) {
            std::vector<int> saved = tuple;
            tuple[i] = value;
            if (fill_suffix_min(i + 1, total - used - value)) return true;
            tuple = saved;
        }
    }
    return false;
}

std::uint64_t tuple_salt(const std::vector<int>& tuple) {
    std::uint64_t salt = 0x9e3779b97f4a7c15ull;
    for (int d : tuple) salt = salt * 0x100000001b3ull + static_cast<std::uint64_t>(d + 1);
    return salt;
}

bool passes_screens(const Scenario& normalized) {
    if (normalized.edges.empty()) return true; // trivially feasible
    if (compute_s(normalized) < 0) return false;
    const auto pairwise = pairwise_bound(normalized);
    if (!std::all_of(pairwise.begin(), pairwise.end(),
                     [](const PairwiseCheck& c) { return c.ok; }))
        return false;
    const auto checks = validate(normalized).edge_sum_bounds;
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationReport::EdgeCheck& c) { return c.ok; });
}

} // namespace

DofResult max_dof(const std::vector<std::pair<int, int>>& antennas,
                  const std::vector<Edge>& edges, RandomSeed seed,
                  const DofOptions& options) {
    const int n = static_cast<int>(antennas.size());
    if (n == 0) throw std::invalid_argument("max_dof: need at least one user");
    if (n > options.max_users)
        throw std::invalid_argument("max_dof: user count " + std::to_string(n) +
                                    " exceeds the cap of " + std::to_string(options.max_users));
    if (!options.fixed_streams.empty() &&
        static_cast<int>(options.fixed_streams.size()) != n)
        throw std::invalid_argument("max_dof: fixed_streams length mismatch");

    std::vector<int> caps(n);
    std::vector<int> floors(n, 0);
    for (int j = 0; j < n; ++j) {
        const auto& [m, nj] = antennas[j];
        if (m < 1 || nj < 1) throw std::invalid_argument("max_dof: antennas must be >= 1");
        caps[j] = std::min(m, nj);
        if (!options.fixed_streams.empty() && options.fixed_streams[j]) {
            const int fixed = *options.fixed_streams[j];
            if (fixed < 0) throw std::invalid_argument("max_dof: negative fixed stream count");
            caps[j] = fixed;
            floors[j] = fixed;
        }
    }

    DofResult result;
    int total_cap = 0;
    int total_floor = 0;
    for (int j = 0; j < n; ++j) {
        total_cap += caps[j];
        total_floor += floors[j];
    }

    auto evaluate = [&](const std::vector<int>& tuple) -> bool {
        Scenario raw;
        for (int j = 0; j < n; ++j)
            raw.users.push_back({antennas[j].first, antennas[j].second, tuple[j]});
        raw.edges = edges;
        const Scenario normalized = normalize(raw);

        if (options.use_pruning && !passes_screens(normalized)) {
            ++result.tuples_pruned;
            return false;
        }
        ++result.tuples_tested;
        const Verdict verdict = feasibility_test(
            normalized, derive_seed(seed, tuple_salt(tuple)), options.trials);
        return verdict.feasible;
    };

    for (int total = total_cap; total >= total_floor; --total) {
        std::vector<int> tuple(n, 0);
        bool have = next_tuple_with_sum(tuple, caps, total, /*first=*/true);
        bool any_feasible = false;
        while (have) {
            bool respects_floor = true;
            for (int j = 0; j < n; ++j)
                if (tuple[j] < floors[j]) respects_floor = false;
            if (respects_floor && evaluate(tuple)) {
                any_feasible = true;
                result.argmax_tuples.push_back(tuple);
            }
            have = next_tuple_with_sum(tuple, caps, total, /*first=*/false);
        }
        if (any_feasible) {
            result.max_total = total;
            return result;
        }
    }
    result.max_total = 0;
    return result;
}

} // namespace iafeas
