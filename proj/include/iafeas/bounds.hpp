#ifndef IAFEAS_BOUNDS_HPP
#define IAFEAS_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "iafeas/scenario.hpp"

namespace iafeas {

/// Two-user cooperative bound, applied to every pair interfering in both
/// directions:
///   d_a + d_b <= min{ M_a+M_b, N_a+N_b, max(N_a, M_b), max(N_b, M_a) }.
struct PairwiseCheck {
    int user_a = 0;
    int user_b = 0;
    long long lhs = 0;
    long long bound = 0;
    bool ok = true;
};

std::vector<PairwiseCheck> pairwise_bound(const Scenario& scenario);

/// Total-stream outer bound for the symmetric fully-populated case:
///   sum d <= K min(M,N)        when K <= R,
///   sum d <= K max(M,N)/(R+1)  when K >  R,  R = floor(max(M,N)/min(M,N)).
double symmetric_outer_bound(int tx_antennas, int rx_antennas, int user_count);

/// Subset counting refuses to run past this many edges by default; the
/// enumeration is exponential.
class EdgeBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SubsetProperness {
    bool proper = true;
    /// Lexicographically first violating subset (edges in sorted order),
    /// present only when improper.
    std::optional<std::vector<Edge>> witness;
    std::uint64_t subsets_checked = 0;
};

/// Checks every nonempty subset E of the edge set: the equation count
/// sum_{(k,l) in E} d_k d_l may not exceed the variable count
/// sum_{k in R(E)} d_k (N_k - d_k) + sum_{l in T(E)} d_l (M_l - d_l),
/// with projections taken of E itself so free variables never count.
/// Throws EdgeBudgetExceeded when #edges > max_edges.
SubsetProperness proper_subsets(const Scenario& scenario, int max_edges = 20);

struct BoundsReport {
    long long s = 0;
    bool proper_global = true; // s >= 0
    std::vector<PairwiseCheck> pairwise;
    bool pairwise_ok = true;
    std::vector<ValidationReport::EdgeCheck> simple; // strict d_k + d_l < N_k + M_l
    bool simple_ok = true;
    std::optional<double> symmetric_outer;  // only for symmetric scenarios
    std::optional<bool> symmetric_outer_ok; // sum d <= bound
    std::optional<SubsetProperness> subsets; // absent when the edge budget is exceeded
};

BoundsReport bounds_report(const Scenario& scenario, int max_edges = 20);

} // namespace iafeas

#endif
