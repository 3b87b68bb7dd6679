#include "iafeas/feasibility.hpp"

#include <stdexcept>

namespace iafeas {

long long compute_s(const Scenario& scenario) {
    const auto [rx, tx] = projections(scenario);
    long long s = 0;
    for (int k : rx) {
        const long long n = scenario.users[k].rx_antennas;
        const long long d = scenario.users[k].streams;
        s += n * d - d * d;
    }
    for (int l : tx) {
        const long long m = scenario.users[l].tx_antennas;
        const long long d = scenario.users[l].streams;
        s += m * d - d * d;
    }
    for (const auto& [k, l] : scenario.edges)
        s -= static_cast<long long>(scenario.users[k].streams) * scenario.users[l].streams;
    return s;
}

ThetaMatrix build_theta_matrix(const Scenario& scenario, const AlignmentTriple& triple) {
    if (triple.residual > 1e-8)
        throw std::invalid_argument("build_theta_matrix: triple is not on the solution variety");

    ThetaMatrix theta;
    const auto [rx, tx] = projections(scenario);

    int col = 0;
    for (int k : rx) {
        const int width = scenario.users[k].streams * scenario.users[k].rx_antennas;
        theta.col_partition[{ThetaMatrix::Role::Decoder, k}] = {col, width};
        col += width;
    }
    for (int l : tx) {
        const int width = scenario.users[l].streams * scenario.users[l].tx_antennas;
        theta.col_partition[{ThetaMatrix::Role::Precoder, l}] = {col, width};
        col += width;
    }

    int row = 0;
    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const int height = scenario.users[k].streams * scenario.users[l].streams;
        theta.row_partition[e] = {row, height};
        row += height;
    }

    theta.matrix = ComplexMatrix::Zero(row, col);
    for (const Edge& e : scenario.edges) {
        const auto& [k, l] = e;
        const int dk = scenario.users[k].streams;
        const int dl = scenario.users[l].streams;
        const auto it_u = triple.decoders.find(k);
        const auto it_v = triple.precoders.find(l);
        const auto it_h = triple.channels.find(e);
        if (it_u == triple.decoders.end() || it_v == triple.precoders.end() ||
            it_h == triple.channels.end())
            throw std::invalid_argument("build_theta_matrix: triple is missing an edge endpoint");

        const ComplexMatrix& h = it_h->second;
        const ComplexMatrix decoder_block =
            commutation_matrix(dl, dk) *
            kron(ComplexMatrix::Identity(dk, dk), it_v->second.transpose() * h.transpose());
        const ComplexMatrix precoder_block =
            kron(ComplexMatrix::Identity(dl, dl), it_u->second.transpose() * h);

        const auto& rows = theta.row_partition.at(e);
        const auto& ucols = theta.col_partition.at({ThetaMatrix::Role::Decoder, k});
        const auto& vcols = theta.col_partition.at({ThetaMatrix::Role::Precoder, l});
        theta.matrix.block(rows.offset, ucols.offset, rows.size, ucols.size) = decoder_block;
        theta.matrix.block(rows.offset, vcols.offset, rows.size, vcols.size) = precoder_block;
    }
    return theta;
}

namespace {

TrialEvidence evaluate_trial(const ComplexMatrix& b, double sigma_min, double sigma_max,
                             const SurjectivityOptions& opt, Rng& rng,
                             bool* criteria_agree) {
    TrialEvidence ev;
    ev.sigma_min = sigma_min;
    ev.sigma_max = sigma_max;

    ComplexVector target(b.rows());
    for (Eigen::Index i = 0; i < target.size(); ++i) target(i) = rng.complex_normal();
    target /= target.norm();
    ev.residual = least_squares_residual(b, target);

    const bool primary = b.rows() <= b.cols() && sigma_max > 0.0 &&
                         sigma_min > opt.sigma_rel_tol * sigma_max;
    const bool secondary = ev.residual <= opt.residual_tol;
    *criteria_agree = (primary == secondary);
    ev.pass = primary && secondary;
    return ev;
}

} // namespace

SurjectivityResult surjectivity_test(const ThetaMatrix& theta, const SurjectivityOptions& opt,
                                     int trials, RandomSeed seed) {
    if (trials < 1) throw std::invalid_argument("surjectivity_test: trials must be >= 1");

    SurjectivityResult result;
    const ComplexMatrix& b = theta.matrix;
    if (b.rows() == 0) { // no constraints: the empty map is onto the zero space
        result.pass = true;
        return result;
    }

    Eigen::VectorXd sv;
    if (std::min(b.rows(), b.cols()) > 16)
        sv = Eigen::BDCSVD<ComplexMatrix>(b).singularValues();
    else
        sv = Eigen::JacobiSVD<ComplexMatrix>(b).singularValues();
    const double sigma_max = sv.size() ? sv(0) : 0.0;
    // sigma_min of B B^*: zero whenever there are more rows than columns.
    const double sigma_min = b.rows() <= b.cols() && sv.size() ? sv(sv.size() - 1) : 0.0;

    Rng rng(derive_seed(seed, 0x500));
    result.pass = true;
    for (int t = 0; t < trials; ++t) {
        bool agree = false;
        TrialEvidence ev = evaluate_trial(b, sigma_min, sigma_max, opt, rng, &agree);
        if (!agree) {
            // One retry with a fresh target before giving up.
            ev = evaluate_trial(b, sigma_min, sigma_max, opt, rng, &agree);
            if (!agree) {
                result.indeterminate = true;
                result.pass = false;
                result.evidence.push_back(ev);
                return result;
            }
        }
        result.evidence.push_back(ev);
        result.pass = result.pass && ev.pass;
    }
    return result;
}

Verdict feasibility_test(const Scenario& scenario, RandomSeed seed, int trials,
                         const FeasibilityOptions& options) {
    if (trials < 1) throw std::invalid_argument("feasibility_test: trials must be >= 1");

    Verdict verdict;
    verdict.seed = seed;
    verdict.trials = trials;
    verdict.s = compute_s(scenario);

    if (scenario.edges.empty()) { // no interference constraints at all
        verdict.feasible = true;
        return verdict;
    }
    if (verdict.s < 0) {
        verdict.feasible = false;
        return verdict;
    }

    verdict.feasible = true;
    for (int t = 0; t < trials; ++t) {
        const RandomSeed trial_seed = derive_seed(seed, 0x1000 + static_cast<std::uint64_t>(t));
        const DecodersPrecoders dp = sample_decoders_precoders(scenario, trial_seed);
        const AlignmentTriple triple = solve_inverse(scenario, dp, trial_seed);
        verdict.degenerate = verdict.degenerate || triple.degenerate;

        const ThetaMatrix theta = build_theta_matrix(scenario, triple);
        SurjectivityResult sur = surjectivity_test(
            theta, SurjectivityOptions{options.sigma_rel_tol, options.residual_tol}, 1,
            trial_seed);
        if (!sur.evidence.empty()) verdict.per_trial.push_back(sur.evidence.front());
        if (sur.indeterminate) {
            verdict.indeterminate = true;
            verdict.feasible = false;
            return verdict;
        }
        verdict.feasible = verdict.feasible && sur.pass;
    }
    return verdict;
}

} // namespace iafeas
