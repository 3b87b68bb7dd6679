#ifndef IAFEAS_DOF_SEARCH_HPP
#define IAFEAS_DOF_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "iafeas/feasibility.hpp"
#include "iafeas/scenario.hpp"

namespace iafeas {

struct DofResult {
    int max_total = 0;
    /// All feasible tuples of maximal total, in the original user indexing
    /// (zero means the user stays silent), in increasing lexicographic order.
    std::vector<std::vector<int>> argmax_tuples;
    std::uint64_t tuples_tested = 0;
    std::uint64_t tuples_pruned = 0;
};

struct DofOptions {
    bool use_pruning = true;
    int max_users = 5; // enumeration is prod(min(M_j,N_j)+1) tuples
    int trials = 3;
    /// Per-user stream constraints; nullopt entries are search slots.
    std::vector<std::optional<int>> fixed_streams;
};

/// Exhaustive stream-tuple search: tuples are enumerated in decreasing total
/// order (lexicographic within equal totals), screened by the necessary
/// bounds when pruning is on, and decided by the feasibility test. The first
/// total with a feasible tuple is maximal; every feasible tuple of that total
/// is reported. Pruning never changes the result, only the work.
DofResult max_dof(const std::vector<std::pair<int, int>>& antennas,
                  const std::vector<Edge>& edges, RandomSeed seed,
                  const DofOptions& options = {});

} // namespace iafeas

#endif
