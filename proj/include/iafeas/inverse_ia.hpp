#ifndef IAFEAS_INVERSE_IA_HPP
#define IAFEAS_INVERSE_IA_HPP

#include <map>

#include "iafeas/linalg.hpp"
#include "iafeas/rational.hpp"
#include "iafeas/scenario.hpp"

namespace iafeas {

/// Channels, decoders and precoders satisfying U_k^T H_kl V_l = 0 on every
/// edge. Channels are normalized to unit Frobenius norm; an edge whose
/// nullspace is empty gets H_kl = 0 and sets the degenerate flag.
struct AlignmentTriple {
    std::map<Edge, ComplexMatrix> channels;  // H_kl, N_k x M_l
    std::map<int, ComplexMatrix> decoders;   // U_k,  N_k x d_k, k in Phi_R
    std::map<int, ComplexMatrix> precoders;  // V_l,  M_l x d_l, l in Phi_T
    double residual = 0.0;                   // max over edges of ||U_k^T H_kl V_l||_F
    bool degenerate = false;                 // some H_kl forced to zero
};

struct DecodersPrecoders {
    std::map<int, ComplexMatrix> decoders;
    std::map<int, ComplexMatrix> precoders;
};

/// Unitary decoders/precoders for the members of the projections; users with
/// more streams than antennas get a generic full-row-rank Gaussian matrix
/// instead (the rank test still answers correctly for such inputs). Free
/// users are skipped.
DecodersPrecoders sample_decoders_precoders(const Scenario& scenario, RandomSeed seed);

/// Solves the inverse alignment problem: for each edge, H_kl is a random
/// unit-norm element of the nullspace of (V_l kron U_k)^T, obtained as a
/// Gaussian combination of the orthonormal nullspace basis. Deterministic
/// per edge given the seed, so edges may be solved in any order.
AlignmentTriple solve_inverse(const Scenario& scenario, const DecodersPrecoders& dp,
                              RandomSeed seed);

double alignment_residual(const Scenario& scenario,
                          const std::map<Edge, ComplexMatrix>& channels,
                          const std::map<int, ComplexMatrix>& decoders,
                          const std::map<int, ComplexMatrix>& precoders);

/// Structured exact point of the solution variety: U_k = [I; 0], V_l = [I; 0]
/// and H_kl with a zero d_k x d_l top-left block; the remaining blocks carry
/// Gaussian-rational entries (a + i b)/h with numerators uniform in [0, h].
/// The alignment residual is exactly zero by construction.
struct CanonicalTriple {
    std::map<Edge, RationalMatrix> channels;
    mpz_class h;
};

/// Requires every active user to satisfy d <= min slot of its role
/// (streams <= rx antennas on receivers, <= tx antennas on transmitters)
/// and h >= 1.
CanonicalTriple canonical_triple(const Scenario& scenario, const mpz_class& h, RandomSeed seed);

/// Floating view of a canonical triple; the residual is exactly 0 because the
/// identity-block decoders just read out the zero block of each channel.
AlignmentTriple to_floating(const Scenario& scenario, const CanonicalTriple& triple);

} // namespace iafeas

#endif
