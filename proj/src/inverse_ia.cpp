#include "iafeas/inverse_ia.hpp"

#include <stdexcept>

namespace iafeas {

namespace {

/// Uniform integer in [0, h] built from 64-bit blocks with rejection.
mpz_class uniform_mpz_inclusive(Rng& rng, const mpz_class& h) {
    if (h == 0) return 0;
    const std::size_t bits = mpz_sizeinbase(h.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - 64 * (words - 1);
    const std::uint64_t top_mask =
        top_bits >= 64 ? ~0ull : ((1ull << top_bits) - 1ull);
    while (true) {
        mpz_class value = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t block = rng.next_u64();
            if (w + 1 == words) block &= top_mask;
            mpz_class chunk(static_cast<unsigned long>(block >> 32));
            chunk <<= 32;
            chunk += static_cast<unsigned long>(block & 0xffffffffull);
            value <<= 64;
            value += chunk;
        }
        if (value <= h) return value;
    }
}

} // namespace

DecodersPrecoders sample_decoders_precoders(const Scenario& scenario, RandomSeed seed) {
    DecodersPrecoders dp;
    const auto [rx, tx] = projections(scenario);
    for (int k : rx) {
        Rng rng(derive_seed(seed, 0x100 + static_cast<std::uint64_t>(k)));
        const int n = scenario.users[k].rx_antennas;
        const int d = scenario.users[k].streams;
        dp.decoders[k] = d <= n ? random_stiefel(n, d, rng) : random_gaussian(n, d, rng);
    }
    for (int l : tx) {
        Rng rng(derive_seed(seed, 0x200 + static_cast<std::uint64_t>(l)));
        const int m = scenario.users[l].tx_antennas;
        const int d = scenario.users[l].streams;
        dp.precoders[l] = d <= m ? random_stiefel(m, d, rng) : random_gaussian(m, d, rng);
    }
    return dp;
}

double alignment_residual(const Scenario& scenario,
                          const std::map<Edge, ComplexMatrix>& channels,
                          const std::map<int, ComplexMatrix>& decoders,
                          const std::map<int, ComplexMatrix>& precoders) {
    double worst = 0.0;
    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const ComplexMatrix r =
            decoders.at(k).transpose() * channels.at(e) * precoders.at(l);
        worst = std::max(worst, r.norm());
    }
    return worst;
}

AlignmentTriple solve_inverse(const Scenario& scenario, const DecodersPrecoders& dp,
                              RandomSeed seed) {
    AlignmentTriple triple;
    triple.decoders = dp.decoders;
    triple.precoders = dp.precoders;

    for (std::size_t idx = 0; idx < scenario.edges.size(); ++idx) {
        const Edge& e = scenario.edges[idx];
        const auto& [k, l] = e;
        const auto it_u = dp.decoders.find(k);
        const auto it_v = dp.precoders.find(l);
        if (it_u == dp.decoders.end() || it_v == dp.precoders.end())
            throw std::invalid_argument("solve_inverse: missing decoder or precoder for edge");

        const ComplexMatrix a = kron(it_v->second, it_u->second).transpose();
        const ComplexMatrix basis = nullspace_basis(a);
        const int n = scenario.users[k].rx_antennas;
        const int m = scenario.users[l].tx_antennas;
        if (basis.cols() == 0) {
            // Only possible when N_k M_l <= d_k d_l: the channel is forced to
            // vanish and the triple leaves the generic regime.
            triple.channels[e] = ComplexMatrix::Zero(n, m);
            triple.degenerate = true;
            continue;
        }
        Rng rng(derive_seed(seed, 0x300 + idx));
        ComplexVector coeffs(basis.cols());
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = rng.complex_normal();
        ComplexVector h = basis * coeffs;
        h /= h.norm();
        triple.channels[e] = unvec(h, n, m);
    }

    triple.residual =
        alignment_residual(scenario, triple.channels, triple.decoders, triple.precoders);
    if (triple.residual > 1e-10)
        throw std::runtime_error("solve_inverse: residual exceeded 1e-10");
    return triple;
}

CanonicalTriple canonical_triple(const Scenario& scenario, const mpz_class& h,
                                 RandomSeed seed) {
    if (h < 1) throw std::invalid_argument("canonical_triple: h must be >= 1");
    const auto [rx, tx] = projections(scenario);
    for (int k : rx)
        if (scenario.users[k].streams > scenario.users[k].rx_antennas)
            throw std::invalid_argument("canonical_triple: streams exceed receive antennas");
    for (int l : tx)
        if (scenario.users[l].streams > scenario.users[l].tx_antennas)
            throw std::invalid_argument("canonical_triple: streams exceed transmit antennas");

    CanonicalTriple triple;
    triple.h = h;
    for (std::size_t idx = 0; idx < scenario.edges.size(); ++idx) {
        const Edge& e = scenario.edges[idx];
        const auto& [k, l] = e;
        const int n = scenario.users[k].rx_antennas;
        const int m = scenario.users[l].tx_antennas;
        const int dk = scenario.users[k].streams;
        const int dl = scenario.users[l].streams;
        Rng rng(derive_seed(seed, 0x400 + idx));
        RationalMatrix channel(n, m);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                GaussianRational& z = channel(i, j);
                z.denom = h;
                if (i < dk && j < dl) continue; // zero block kills U^T H V exactly
                z.real_num = uniform_mpz_inclusive(rng, h);
                z.imag_num = uniform_mpz_inclusive(rng, h);
            }
        }
        triple.channels[e] = std::move(channel);
    }
    return triple;
}

AlignmentTriple to_floating(const Scenario& scenario, const CanonicalTriple& triple) {
    AlignmentTriple out;
    const auto [rx, tx] = projections(scenario);
    for (int k : rx) {
        const int n = scenario.users[k].rx_antennas;
        const int d = scenario.users[k].streams;
        ComplexMatrix u = ComplexMatrix::Zero(n, d);
        u.topRows(d) = ComplexMatrix::Identity(d, d);
        out.decoders[k] = u;
    }
    for (int l : tx) {
        const int m = scenario.users[l].tx_antennas;
        const int d = scenario.users[l].streams;
        ComplexMatrix v = ComplexMatrix::Zero(m, d);
        v.topRows(d) = ComplexMatrix::Identity(d, d);
        out.precoders[l] = v;
    }
    for (const auto& [e, channel] : triple.channels) {
        ComplexMatrix c(channel.rows(), channel.cols());
        bool nonzero = false;
        for (int i = 0; i < channel.rows(); ++i)
            for (int j = 0; j < channel.cols(); ++j) {
                c(i, j) = channel(i, j).to_complex();
                nonzero = nonzero || channel(i, j).is_zero() == false;
            }
        if (!nonzero) out.degenerate = true;
        out.channels[e] = c;
    }
    out.residual =
        alignment_residual(scenario, out.channels, out.decoders, out.precoders);
    return out;
}

} // namespace iafeas
