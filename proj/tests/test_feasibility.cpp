#include <doctest.h>

#include "iafeas/feasibility.hpp"
#include "theta_oracles.hpp"

using namespace iafeas;
using namespace iafeas::testing;

TEST_CASE("dimension margin s against hand evaluations") {
    CHECK(compute_s(parse_scenario("(3x3,2)^2")) == 0);   // 4 + 4 - 8
    CHECK(compute_s(parse_scenario("(5x11,4)^3")) == 0);  // 84 + 12 - 96
    CHECK(compute_s(parse_scenario("(7x13,5)^3")) == 0);
    CHECK(compute_s(parse_scenario("(2x2,1)(5x5,2)^2(8x8,4)")) == 2);
}

TEST_CASE("symmetric margin sign matches (K+1)d <= M+N") {
    for (int users = 2; users <= 6; ++users)
        for (int m = 1; m <= 12; ++m)
            for (int n = 1; n <= 12; ++n)
                for (int d = 1; d <= std::min(m, n); ++d) {
                    Scenario s;
                    s.users.assign(users, {m, n, d});
                    s.edges = fully_connected_edges(users);
                    CHECK((compute_s(s) >= 0) == ((users + 1) * d <= m + n));
                }
}

TEST_CASE("theta matrix dimensions") {
    const Scenario s = parse_scenario("(2x2,1)^3");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{41});
    const ThetaMatrix theta = build_theta_matrix(s, solve_inverse(s, dp, RandomSeed{41}));
    CHECK(theta.matrix.rows() == 6);
    CHECK(theta.matrix.cols() == 12);
}

TEST_CASE("theta block layout matches the 3-user grid") {
    const Scenario s = parse_scenario("(3x4,2)(1x3,1)(10x4,2)");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{42});
    const AlignmentTriple triple = solve_inverse(s, dp, RandomSeed{42});
    const ThetaMatrix theta = build_theta_matrix(s, triple);

    // For every edge (k,l): the decoder partition of k and the precoder
    // partition of l are populated; every other block is exactly zero.
    for (const Edge& e : s.edges) {
        const auto& rows = theta.row_partition.at(e);
        for (const auto& [key, cols] : theta.col_partition) {
            const auto& [role, user] = key;
            const bool expected_live =
                (role == ThetaMatrix::Role::Decoder && user == e.first) ||
                (role == ThetaMatrix::Role::Precoder && user == e.second);
            const double norm =
                theta.matrix.block(rows.offset, cols.offset, rows.size, cols.size).norm();
            if (expected_live)
                CHECK(norm > 1e-8);
            else
                CHECK(norm == 0.0);
        }
    }

    // Decoder partitions occupy the leading columns, precoders the trailing.
    int decoder_end = 0;
    int precoder_begin = static_cast<int>(theta.matrix.cols());
    for (const auto& [key, cols] : theta.col_partition) {
        if (key.first == ThetaMatrix::Role::Decoder)
            decoder_end = std::max(decoder_end, cols.offset + cols.size);
        else
            precoder_begin = std::min(precoder_begin, cols.offset);
    }
    CHECK(decoder_end <= precoder_begin);
}

TEST_CASE("single-edge theta is a 1x4 two-block row") {
    const Scenario s = parse_scenario("(2x2,1)^2|edges=(1,2)");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{43});
    const ThetaMatrix theta = build_theta_matrix(s, solve_inverse(s, dp, RandomSeed{43}));
    CHECK(theta.matrix.rows() == 1);
    CHECK(theta.matrix.cols() == 4);
    CHECK(theta.col_partition.size() == 2);
}

TEST_CASE("bilinear consistency: theta times stacked perturbations") {
    Rng rng(RandomSeed{44});
    for (int rep = 0; rep < 20; ++rep) {
        const int users = 2 + static_cast<int>(rng.next_u64() % 3);
        const Scenario s = random_scenario(users, 4, rng);
        const RandomSeed seed{1000 + static_cast<std::uint64_t>(rep)};
        const DecodersPrecoders dp = sample_decoders_precoders(s, seed);
        const AlignmentTriple triple = solve_inverse(s, dp, seed);
        const ThetaMatrix theta = build_theta_matrix(s, triple);

        const Perturbation p = random_perturbation(s, rng);
        const ComplexVector via_matrix = theta.matrix * stack_perturbation(theta, p);
        const ComplexVector direct = direct_tangent_image(s, triple, theta, p);
        CHECK((via_matrix - direct).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("finite differences converge to the tangent map") {
    Rng rng(RandomSeed{45});
    const Scenario s = random_scenario(3, 4, rng);
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{46});
    const AlignmentTriple triple = solve_inverse(s, dp, RandomSeed{46});
    const ThetaMatrix theta = build_theta_matrix(s, triple);
    const Perturbation p = random_perturbation(s, rng);
    const ComplexVector expected = theta.matrix * stack_perturbation(theta, p);

    auto difference_error = [&](double eps) {
        std::map<int, ComplexMatrix> u, v;
        for (const auto& [k, mat] : triple.decoders) u[k] = mat + eps * p.decoders.at(k);
        for (const auto& [l, mat] : triple.precoders) v[l] = mat + eps * p.precoders.at(l);
        const ComplexVector moved = stacked_residuals(s, triple.channels, u, v, theta);
        const ComplexVector base =
            stacked_residuals(s, triple.channels, triple.decoders, triple.precoders, theta);
        return ((moved - base) / eps - expected).cwiseAbs().maxCoeff();
    };

    const double coarse = difference_error(1e-4);
    const double fine = difference_error(1e-6);
    CHECK(coarse <= 1e-2);
    CHECK(fine <= 1e-4);
    CHECK(coarse / fine > 50.0); // first-order decay
    CHECK(coarse / fine < 200.0);
}

TEST_CASE("surjectivity: pigeonhole failure for tall matrices") {
    ThetaMatrix theta;
    theta.matrix = ComplexMatrix::Identity(4, 2);
    const SurjectivityResult result = surjectivity_test(theta, 1e-9, 1, RandomSeed{47});
    CHECK_FALSE(result.pass);
    CHECK_FALSE(result.indeterminate);
}

TEST_CASE("surjectivity: explicit right inverse passes") {
    ThetaMatrix theta;
    theta.matrix = ComplexMatrix::Zero(3, 6);
    theta.matrix.leftCols(3) = ComplexMatrix::Identity(3, 3);
    const SurjectivityResult result = surjectivity_test(theta, 1e-9, 3, RandomSeed{48});
    CHECK(result.pass);
    CHECK(result.evidence.size() == 3);
}

TEST_CASE("surjectivity: criteria disagreement is reported, not coerced") {
    // sigma_min/sigma_max sits below the relative threshold while the system
    // is still solvable to machine precision, so the two criteria disagree.
    ThetaMatrix theta;
    theta.matrix = ComplexMatrix::Zero(2, 4);
    theta.matrix(0, 0) = 1.0;
    theta.matrix(1, 1) = 5e-10;
    const SurjectivityResult result = surjectivity_test(theta, 1e-9, 1, RandomSeed{49});
    CHECK(result.indeterminate);
    CHECK_FALSE(result.pass);
}

TEST_CASE("proper but infeasible: (3x3,2)^2 fails on every seed") {
    const Scenario s = parse_scenario("(3x3,2)^2");
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const Verdict verdict = feasibility_test(s, RandomSeed{seed});
        CHECK(verdict.s == 0);
        CHECK_FALSE(verdict.feasible);
        CHECK_FALSE(verdict.indeterminate);
    }
}

TEST_CASE("feasible fixtures pass") {
    CHECK(feasibility_test(parse_scenario("(5x11,3)(5x11,4)^2"), RandomSeed{50}).feasible);
    CHECK(feasibility_test(parse_scenario("(2x2,1)(5x5,2)^2(8x8,4)"), RandomSeed{51}).feasible);
    CHECK(feasibility_test(parse_scenario("(2x2,1)^3"), RandomSeed{52}).feasible);
}

TEST_CASE("negative margin short-circuits without trials") {
    const Verdict verdict = feasibility_test(parse_scenario("(1x1,1)^2"), RandomSeed{53});
    CHECK(verdict.s == -2);
    CHECK_FALSE(verdict.feasible);
    CHECK(verdict.per_trial.empty());
}

TEST_CASE("empty interference set is trivially feasible") {
    Scenario s;
    s.users = {{2, 2, 1}};
    const Verdict verdict = feasibility_test(s, RandomSeed{54});
    CHECK(verdict.feasible);
    CHECK(verdict.per_trial.empty());
}

TEST_CASE("stream counts beyond the antennas yield infeasible, not an error") {
    const Scenario s = parse_scenario("(2x1,3)(3x4,2)");
    const Verdict verdict = feasibility_test(s, RandomSeed{55});
    CHECK_FALSE(verdict.feasible);
}

TEST_CASE("verdicts are reproducible for a fixed seed") {
    const Scenario s = parse_scenario("(5x11,4)^3");
    const Verdict a = feasibility_test(s, RandomSeed{56});
    const Verdict b = feasibility_test(s, RandomSeed{56});
    REQUIRE(a.per_trial.size() == b.per_trial.size());
    for (std::size_t i = 0; i < a.per_trial.size(); ++i) {
        CHECK(a.per_trial[i].sigma_min == b.per_trial[i].sigma_min);
        CHECK(a.per_trial[i].residual == b.per_trial[i].residual);
    }
}

TEST_CASE("representative invariance of the surjectivity outcome") {
    Rng rng(RandomSeed{57});
    for (int rep = 0; rep < 10; ++rep) {
        const Scenario s = random_scenario(2 + static_cast<int>(rng.next_u64() % 2), 4, rng);
        const RandomSeed seed{2000 + static_cast<std::uint64_t>(rep)};
        const DecodersPrecoders dp = sample_decoders_precoders(s, seed);
        AlignmentTriple triple = solve_inverse(s, dp, seed);
        const ThetaMatrix theta = build_theta_matrix(s, triple);
        const bool base = surjectivity_test(theta, 1e-9, 1, seed).pass;

        // New representatives: U Q, V P, lambda H.
        for (auto& [k, u] : triple.decoders)
            u = u * random_gaussian(static_cast<int>(u.cols()), static_cast<int>(u.cols()), rng);
        for (auto& [l, v] : triple.precoders)
            v = v * random_gaussian(static_cast<int>(v.cols()), static_cast<int>(v.cols()), rng);
        for (auto& [e, h] : triple.channels) {
            std::complex<double> lambda = rng.complex_normal();
            while (std::abs(lambda) < 0.1) lambda = rng.complex_normal();
            h = lambda * h;
        }
        triple.residual = alignment_residual(s, triple.channels, triple.decoders, triple.precoders);
        const ThetaMatrix transformed = build_theta_matrix(s, triple);
        CHECK(surjectivity_test(transformed, 1e-9, 1, seed).pass == base);
    }
}
