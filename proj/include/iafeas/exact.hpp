#ifndef IAFEAS_EXACT_HPP
#define IAFEAS_EXACT_HPP

#include <vector>

#include "iafeas/inverse_ia.hpp"
#include "iafeas/rational.hpp"
#include "iafeas/scenario.hpp"

namespace iafeas {

/// Quantities sizing the integer grid of the exact test:
///   degree     D = sum_{(k,l)} d_k d_l,
///   components Q = D (2D-1)^(2T) with T = sum ((M_l-d_l) d_k + (N_k-d_k) d_l),
///   h          = 8 Q T.
/// These grow astronomically; they are reported so the guarantee regime is
/// explicit, while practical runs use a much smaller grid.
struct MilnorBound {
    mpz_class degree;
    mpz_class components;
    mpz_class h;
};

MilnorBound milnor_h(const Scenario& scenario);

/// Exact rank by fraction-free (Bareiss) elimination over the Gaussian
/// rationals: denominators are cleared row-wise, then the elimination runs
/// over the Gaussian integers with exact divisions.
int exact_rank(const RationalMatrix& matrix);

/// Exact counterpart of the theta matrix, built from a canonical triple.
/// Entries are scaled by h (a per-edge row-block scaling that cannot change
/// surjectivity), so every entry is a Gaussian integer.
RationalMatrix build_theta_exact(const Scenario& scenario, const CanonicalTriple& triple);

struct ExactVerdict {
    long long s = 0;
    std::vector<bool> feasible_claims; // one entry per executed repetition
    int repetitions = 0;               // configured repetition count
    mpz_class h_used;
    mpz_class theoretical_h;
    bool feasible = false;
};

/// The exact-arithmetic variant of the feasibility test. One repetition
/// samples a canonical triple on grid h, assembles the exact theta matrix and
/// declares surjectivity iff its exact rank equals the row count. Any
/// surjective repetition settles feasibility (remaining repetitions are
/// skipped); infeasible is only reported after all repetitions fail, so an
/// infeasible answer can be wrong only for feasible systems, with probability
/// vanishing geometrically in the repetition count once h reaches the
/// theoretical bound. s < 0 and stream counts exceeding their antenna slots
/// short-circuit to infeasible without any rank computation.
ExactVerdict exact_feasibility_test(const Scenario& scenario, const mpz_class& h,
                                    int repetitions, RandomSeed seed);

/// Default practical grid: 2^20.
mpz_class default_exact_grid();

} // namespace iafeas

#endif
