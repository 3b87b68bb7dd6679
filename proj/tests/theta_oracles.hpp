#ifndef IAFEAS_TESTS_THETA_ORACLES_HPP
#define IAFEAS_TESTS_THETA_ORACLES_HPP

#include <map>

#include "iafeas/feasibility.hpp"
#include "iafeas/inverse_ia.hpp"

namespace iafeas::testing {

struct Perturbation {
    std::map<int, ComplexMatrix> decoders;  // Udot_k
    std::map<int, ComplexMatrix> precoders; // Vdot_l
};

inline Perturbation random_perturbation(const Scenario& scenario, Rng& rng) {
    Perturbation p;
    const auto [rx, tx] = projections(scenario);
    for (int k : rx)
        p.decoders[k] =
            random_gaussian(scenario.users[k].rx_antennas, scenario.users[k].streams, rng);
    for (int l : tx)
        p.precoders[l] =
            random_gaussian(scenario.users[l].tx_antennas, scenario.users[l].streams, rng);
    return p;
}

/// Stacks the perturbation into the column layout of the theta matrix.
inline ComplexVector stack_perturbation(const ThetaMatrix& theta, const Perturbation& p) {
    ComplexVector w = ComplexVector::Zero(theta.matrix.cols());
    for (const auto& [key, range] : theta.col_partition) {
        const auto& [role, user] = key;
        const ComplexMatrix& block =
            role == ThetaMatrix::Role::Decoder ? p.decoders.at(user) : p.precoders.at(user);
        w.segment(range.offset, range.size) = vec(block);
    }
    return w;
}

/// Direct evaluation of the tangent map: stacks
/// vec(Udot_k^T H_kl V_l + U_k^T H_kl Vdot_l) in the row layout of theta.
inline ComplexVector direct_tangent_image(const Scenario& scenario,
                                          const AlignmentTriple& triple,
                                          const ThetaMatrix& theta, const Perturbation& p) {
    ComplexVector out = ComplexVector::Zero(theta.matrix.rows());
    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const ComplexMatrix value =
            p.decoders.at(k).transpose() * triple.channels.at(e) * triple.precoders.at(l) +
            triple.decoders.at(k).transpose() * triple.channels.at(e) * p.precoders.at(l);
        const auto& range = theta.row_partition.at(e);
        out.segment(range.offset, range.size) = vec(value);
    }
    return out;
}

/// Stacked residuals U_k^T H_kl V_l for arbitrary (U, V), row layout of theta.
inline ComplexVector stacked_residuals(const Scenario& scenario,
                                       const std::map<Edge, ComplexMatrix>& channels,
                                       const std::map<int, ComplexMatrix>& decoders,
                                       const std::map<int, ComplexMatrix>& precoders,
                                       const ThetaMatrix& theta) {
    ComplexVector out = ComplexVector::Zero(theta.matrix.rows());
    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const ComplexMatrix value =
            decoders.at(k).transpose() * channels.at(e) * precoders.at(l);
        const auto& range = theta.row_partition.at(e);
        out.segment(range.offset, range.size) = vec(value);
    }
    return out;
}

/// Random small scenario for property sweeps: K users, antennas up to
/// max_antennas, streams within min(M, N), fully connected.
inline Scenario random_scenario(int users, int max_antennas, Rng& rng) {
    Scenario s;
    for (int j = 0; j < users; ++j) {
        const int m = 1 + static_cast<int>(rng.next_u64() % max_antennas);
        const int n = 1 + static_cast<int>(rng.next_u64() % max_antennas);
        const int d = 1 + static_cast<int>(rng.next_u64() % std::min(m, n));
        s.users.push_back({m, n, d});
    }
    s.edges = fully_connected_edges(users);
    return s;
}

} // namespace iafeas::testing

#endif
