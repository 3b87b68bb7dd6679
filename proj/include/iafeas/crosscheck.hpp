#ifndef IAFEAS_CROSSCHECK_HPP
#define IAFEAS_CROSSCHECK_HPP

#include <map>
#include <vector>

#include "iafeas/feasibility.hpp"
#include "iafeas/linalg.hpp"
#include "iafeas/scenario.hpp"

namespace iafeas {

struct LeakageTrace {
    int iterations = 0;
    /// Total interference power in the decoded subspaces, one entry per
    /// recorded step starting at iteration 0; non-increasing.
    std::vector<double> leakage_per_iter;
    /// Stopped before max_iters: leakage < 1e-9 or relative decrease < 1e-12.
    bool converged = false;
};

struct LeakageResult {
    std::map<int, ComplexMatrix> decoders;
    std::map<int, ComplexMatrix> precoders;
    LeakageTrace trace;
};

/// i.i.d. standard complex Gaussian channel for every edge.
std::map<Edge, ComplexMatrix> random_channels(const Scenario& scenario, RandomSeed seed);

/// Alternating interference-leakage minimization on the given channels:
/// decoders pick the least-excited d_k directions of the interference
/// covariance at each receiver, precoders the same in the reciprocal network,
/// so the total leakage sum_{(k,l)} ||U_k^T H_kl V_l||_F^2 never increases.
/// Reaching max_iters without either stop criterion leaves converged false;
/// that is evidence, not an error.
LeakageResult min_leakage_solve(const Scenario& scenario,
                                const std::map<Edge, ComplexMatrix>& channels, int max_iters,
                                RandomSeed seed);

/// Advisory cross-examination of a verdict: run the leakage solver on fresh
/// random channels for each seed and report agreement. Never overrides the
/// verdict; alternating minimization can stall in local minima, so it is not
/// itself a feasibility test.
struct CorroborationReport {
    enum class Status { Corroborated, Consistent, Mismatch, Skipped };
    struct SeedRun {
        std::uint64_t seed = 0;
        bool converged = false;
        double final_leakage = 0.0;
        int iterations = 0;
    };
    Status status = Status::Skipped;
    std::vector<SeedRun> runs;
};

CorroborationReport corroborate(const Scenario& scenario, const Verdict& verdict,
                                const std::vector<RandomSeed>& seeds, int max_iters = 5000);

} // namespace iafeas

#endif
