#ifndef IAFEAS_FEASIBILITY_HPP
#define IAFEAS_FEASIBILITY_HPP

#include <map>
#include <vector>

#include "iafeas/inverse_ia.hpp"
#include "iafeas/scenario.hpp"

namespace iafeas {

/// Dimension margin of the alignment system:
///
///   s = sum_{k in Phi_R} (N_k d_k - d_k^2)
///     + sum_{l in Phi_T} (M_l d_l - d_l^2)
///     - sum_{(k,l) in Phi} d_k d_l
///
/// Negative s means fewer solution-variety dimensions than channel
/// dimensions, which already settles infeasibility. Free users contribute
/// nothing.
long long compute_s(const Scenario& scenario);

/// The matrix of the tangent map
///   (Udot, Vdot) -> { Udot_k^T H_kl V_l + U_k^T H_kl Vdot_l }  over edges,
/// acting on the stacked column-major vectorizations of the perturbations.
/// Row blocks follow the sorted edge order (d_k d_l rows each, column-major
/// order of the d_k x d_l residual). Column blocks list the decoder
/// perturbations of Phi_R first, then the precoder perturbations of Phi_T.
struct ThetaMatrix {
    enum class Role { Decoder, Precoder };
    struct Range {
        int offset = 0;
        int size = 0;
    };

    ComplexMatrix matrix;
    std::map<Edge, Range> row_partition;
    std::map<std::pair<Role, int>, Range> col_partition;
};

/// Assembles the theta matrix from a triple on the solution variety. For
/// edge (k,l), the decoder block K_{d_l d_k} (I_{d_k} kron V_l^T H_kl^T)
/// lands in the column partition of user k and the precoder block
/// I_{d_l} kron U_k^T H_kl in the partition of user l.
ThetaMatrix build_theta_matrix(const Scenario& scenario, const AlignmentTriple& triple);

struct TrialEvidence {
    double sigma_min = 0.0; // smallest singular value of the theta matrix
    double sigma_max = 0.0;
    double residual = 0.0;  // least-squares residual against a random unit target
    bool pass = false;
};

struct SurjectivityResult {
    bool pass = false;
    bool indeterminate = false; // criteria kept disagreeing after a retry
    std::vector<TrialEvidence> evidence;
};

struct SurjectivityOptions {
    double sigma_rel_tol = 1e-9; // pass requires sigma_min > tol * sigma_max
    double residual_tol = 1e-8;  // pass requires least-squares residual <= this
};

/// Two-criterion surjectivity check: sigma_min relative to sigma_max, and the
/// least-squares residual against a random target. Both must agree in every
/// trial; one disagreement is retried with fresh randomness before the result
/// is declared indeterminate. A matrix with more rows than columns fails
/// outright.
SurjectivityResult surjectivity_test(const ThetaMatrix& theta, const SurjectivityOptions& opt,
                                     int trials, RandomSeed seed);

inline SurjectivityResult surjectivity_test(const ThetaMatrix& theta, double sigma_rel_tol,
                                            int trials, RandomSeed seed) {
    return surjectivity_test(theta, SurjectivityOptions{sigma_rel_tol, 1e-8}, trials, seed);
}

struct Verdict {
    long long s = 0;
    bool feasible = false;
    bool indeterminate = false;
    int trials = 0; // configured trial count
    std::vector<TrialEvidence> per_trial;
    RandomSeed seed;
    bool degenerate = false; // some channel was forced to zero
};

struct FeasibilityOptions {
    double sigma_rel_tol = 1e-9;
    double residual_tol = 1e-8;
};

/// The randomized feasibility test. s < 0 short-circuits to infeasible with
/// no trials run; an empty interference set is trivially feasible. Otherwise
/// each trial runs the full pipeline -- sample (U,V), solve the inverse
/// problem, assemble theta, test surjectivity -- and the verdict is feasible
/// only when every trial passes.
Verdict feasibility_test(const Scenario& scenario, RandomSeed seed, int trials = 3,
                         const FeasibilityOptions& options = {});

} // namespace iafeas

#endif
