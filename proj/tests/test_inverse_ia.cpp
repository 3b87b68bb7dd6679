#include <doctest.h>

#include "iafeas/inverse_ia.hpp"

using namespace iafeas;

TEST_CASE("sampled decoders and precoders have the right shapes and Grams") {
    const Scenario small = parse_scenario("(2x2,1)^3");
    const DecodersPrecoders dp = sample_decoders_precoders(small, RandomSeed{21});
    REQUIRE(dp.decoders.size() == 3);
    REQUIRE(dp.precoders.size() == 3);
    for (const auto& [k, u] : dp.decoders) {
        CHECK(u.rows() == 2);
        CHECK(u.cols() == 1);
        CHECK(std::abs(u.norm() - 1.0) <= 1e-12);
    }

    const Scenario wide = parse_scenario("(5x11,4)^3");
    const DecodersPrecoders dp2 = sample_decoders_precoders(wide, RandomSeed{22});
    for (const auto& [k, u] : dp2.decoders) {
        CHECK(u.rows() == 11);
        CHECK(u.cols() == 4);
        CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() <= 1e-12);
    }
    for (const auto& [l, v] : dp2.precoders) {
        CHECK(v.rows() == 5);
        CHECK(v.cols() == 4);
        CHECK((v.adjoint() * v - ComplexMatrix::Identity(4, 4)).norm() <= 1e-12);
    }
}

TEST_CASE("free users get no decoder or precoder") {
    const Scenario s = parse_scenario("(2x2,1)^3|edges=(1,2);(2,1)");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{23});
    CHECK(dp.decoders.count(2) == 0);
    CHECK(dp.precoders.count(2) == 0);
    CHECK(dp.decoders.size() == 2);
}

TEST_CASE("inverse problem: one underdetermined system per edge") {
    const Scenario s = parse_scenario("(2x2,1)^3");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{24});

    // Each of the 6 systems is 1 x 4 with a 3-dimensional nullspace.
    for (const Edge& e : s.edges) {
        const ComplexMatrix a =
            kron(dp.precoders.at(e.second), dp.decoders.at(e.first)).transpose();
        CHECK(a.rows() == 1);
        CHECK(a.cols() == 4);
        CHECK(nullspace_basis(a).cols() == 3);
    }

    const AlignmentTriple triple = solve_inverse(s, dp, RandomSeed{24});
    CHECK(triple.channels.size() == 6);
    CHECK(triple.residual <= 1e-12);
    CHECK_FALSE(triple.degenerate);
    for (const auto& [e, h] : triple.channels)
        CHECK(std::abs(h.norm() - 1.0) <= 1e-12); // unit Frobenius norm
}

TEST_CASE("saturated edges force a zero channel and the degenerate flag") {
    // d_k = N_k and d_l = M_l on every edge: the nullspace is empty.
    const Scenario s = parse_scenario("(2x2,2)^2");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{25});
    const AlignmentTriple triple = solve_inverse(s, dp, RandomSeed{25});
    CHECK(triple.degenerate);
    for (const auto& [e, h] : triple.channels) CHECK(h.norm() == 0.0);
}

TEST_CASE("re-solving with the same seed is bit-identical") {
    const Scenario s = parse_scenario("(3x4,2)(1x3,1)(10x4,2)");
    const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{26});
    const AlignmentTriple a = solve_inverse(s, dp, RandomSeed{27});
    const AlignmentTriple b = solve_inverse(s, dp, RandomSeed{27});
    for (const Edge& e : s.edges) CHECK(a.channels.at(e) == b.channels.at(e));
}

TEST_CASE("residuals stay below 1e-10 over many random draws") {
    const Scenario scenarios[] = {
        parse_scenario("(5x11,4)^3"),
        parse_scenario("(2x2,1)(5x5,2)^2(8x8,4)"),
        parse_scenario("(3x4,2)(1x3,1)(10x4,2)"),
    };
    for (const Scenario& s : scenarios) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const DecodersPrecoders dp = sample_decoders_precoders(s, RandomSeed{seed});
            const AlignmentTriple triple = solve_inverse(s, dp, RandomSeed{seed});
            CHECK(triple.residual <= 1e-10);
        }
    }
}

TEST_CASE("canonical triple structure") {
    const Scenario s = parse_scenario("(2x2,1)^3");
    const CanonicalTriple triple = canonical_triple(s, 7, RandomSeed{28});
    for (const auto& [e, h] : triple.channels) {
        REQUIRE(h.rows() == 2);
        REQUIRE(h.cols() == 2);
        CHECK(h(0, 0).is_zero()); // top-left d_k x d_l block
        CHECK(h(0, 1).denom == 7);
        CHECK(h(0, 1).real_num >= 0);
        CHECK(h(0, 1).real_num <= 7);
    }
    const AlignmentTriple floating = to_floating(s, triple);
    CHECK(floating.residual == 0.0); // identity blocks read out the zero block

    const Scenario two = parse_scenario("(3x3,2)^2");
    const CanonicalTriple t2 = canonical_triple(two, 5, RandomSeed{29});
    for (const auto& [e, h] : t2.channels)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(h(i, j).is_zero());
}

TEST_CASE("canonical triple with h = 1 uses the binary grid") {
    const Scenario s = parse_scenario("(2x2,1)^3");
    const CanonicalTriple triple = canonical_triple(s, 1, RandomSeed{30});
    for (const auto& [e, h] : triple.channels)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(h(i, j).real_num >= 0);
                CHECK(h(i, j).real_num <= 1);
                CHECK(h(i, j).imag_num >= 0);
                CHECK(h(i, j).imag_num <= 1);
                CHECK(h(i, j).denom == 1);
            }
    CHECK_THROWS_AS(canonical_triple(s, 0, RandomSeed{31}), std::invalid_argument);
}
