#include <doctest.h>

#include "iafeas/scenario.hpp"

using namespace iafeas;

TEST_CASE("symmetric repeat factor expands to identical users") {
    const Scenario s = parse_scenario("(5x11,4)^3");
    REQUIRE(s.user_count() == 3);
    for (const UserConfig& u : s.users) {
        CHECK(u.tx_antennas == 5);
        CHECK(u.rx_antennas == 11);
        CHECK(u.streams == 4);
    }
    CHECK(s.edges.size() == 6);
    CHECK(s.fully_connected());
    CHECK(s.symmetric());
}

TEST_CASE("single user has no interference set") {
    CHECK_THROWS_AS(parse_scenario("(2x2,1)"), ParseError);
}

TEST_CASE("asymmetric factors parse in order") {
    const Scenario s = parse_scenario("(3x4,2)(1x3,1)(10x4,2)");
    REQUIRE(s.user_count() == 3);
    CHECK(s.users[0] == UserConfig{3, 4, 2});
    CHECK(s.users[1] == UserConfig{1, 3, 1});
    CHECK(s.users[2] == UserConfig{10, 4, 2});
    CHECK(s.edges.size() == 6);
}

TEST_CASE("grammar is case and whitespace insensitive") {
    const Scenario a = parse_scenario(" ( 2 X 2 , 1 ) ^ 3 | EDGES = (1,2) ; (2,1)");
    const Scenario b = parse_scenario("(2x2,1)^3|edges=(1,2);(2,1)");
    CHECK(a == b);
    CHECK(a.edges == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("parse errors carry position and expectation") {
    try {
        parse_scenario("(2x2,1)(3y3,1)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 9);
        CHECK(e.expected() == "'x'");
    }
    CHECK_THROWS_AS(parse_scenario(""), ParseError);
    CHECK_THROWS_AS(parse_scenario("(0x2,1)^2"), ParseError);       // zero antennas
    CHECK_THROWS_AS(parse_scenario("(2x2,1)^0(2x2,1)"), ParseError); // repeat < 1
    CHECK_THROWS_AS(parse_scenario("(2x2,1)^2|edges=(1,3)"), ParseError); // out of range
    CHECK_THROWS_AS(parse_scenario("(2x2,1)^2|edges=(1,1)"), ParseError); // self loop
}

TEST_CASE("projections of the edge set") {
    const Scenario full = parse_scenario("(2x2,1)^3");
    CHECK(projections(full).receivers == std::vector<int>{0, 1, 2});
    CHECK(projections(full).transmitters == std::vector<int>{0, 1, 2});

    const Scenario one = parse_scenario("(2x2,1)^2|edges=(1,2)");
    CHECK(projections(one).receivers == std::vector<int>{0});
    CHECK(projections(one).transmitters == std::vector<int>{1});

    const Scenario two = parse_scenario("(2x2,1)^3|edges=(1,2);(3,2)");
    CHECK(projections(two).receivers == std::vector<int>{0, 2});
    CHECK(projections(two).transmitters == std::vector<int>{1});
    CHECK(two.is_free_user(0) == false);
    CHECK(two.is_free_user(2) == false);
}

TEST_CASE("free users are flagged") {
    const Scenario s = parse_scenario("(2x2,1)^3|edges=(1,2);(2,1)");
    CHECK(s.is_free_user(2));
    const ValidationReport report = validate(s);
    bool mentioned = false;
    for (const std::string& w : report.warnings)
        mentioned = mentioned || w.find("user 3") != std::string::npos;
    CHECK(mentioned);
}

TEST_CASE("normalization removes zero-stream users and their edges") {
    Scenario raw;
    raw.users = {{2, 2, 1}, {3, 3, 0}, {4, 4, 2}};
    raw.edges = fully_connected_edges(3);
    const Scenario n = normalize(raw);
    REQUIRE(n.user_count() == 2);
    CHECK(n.users[0] == UserConfig{2, 2, 1});
    CHECK(n.users[1] == UserConfig{4, 4, 2});
    CHECK(n.edges == std::vector<Edge>{{0, 1}, {1, 0}});
    CHECK(normalize(n) == n); // idempotent
}

TEST_CASE("pretty-printing round-trips") {
    for (const char* text :
         {"(5x11,4)^3", "(3x4,2)(1x3,1)(10x4,2)", "(2x2,1)^3(3x5,1)",
          "(2x2,1)(5x5,2)^2(8x8,4)", "(2x2,1)^3|edges=(1,2);(2,3);(3,1)"}) {
        const Scenario s = parse_scenario(text);
        CHECK(parse_scenario(to_string(s)) == s);
    }
    CHECK(to_string(parse_scenario("(5x11,4)(5x11,4)(5x11,4)")) == "(5x11,4)^3");
}

TEST_CASE("validation flags stream/antenna violations without blocking") {
    const Scenario ok = parse_scenario("(3x3,2)^2");
    CHECK(validate(ok).all_stream_bounds_ok());
    CHECK(validate(ok).all_edge_sum_bounds_ok());

    const Scenario bad = parse_scenario("(2x1,3)(3x4,2)");
    const ValidationReport report = validate(bad);
    CHECK_FALSE(report.all_stream_bounds_ok());
    CHECK_FALSE(report.stream_bounds[0].ok);
    CHECK(report.stream_bounds[1].ok);

    // d_k = N_k and d_l = M_l saturate the strict sum bound.
    const Scenario edge_case = parse_scenario("(2x2,2)^2");
    CHECK(validate(edge_case).all_stream_bounds_ok());
    CHECK_FALSE(validate(edge_case).all_edge_sum_bounds_ok());
}

TEST_CASE("stream search slots parse only in patterns") {
    const ScenarioPattern p = parse_scenario_pattern("(7x13,?)^3");
    REQUIRE(p.users.size() == 3);
    CHECK_FALSE(p.streams[0].has_value());
    const ScenarioPattern mixed = parse_scenario_pattern("(7x13,4)(7x13,?)^2");
    CHECK(mixed.streams[0] == 4);
    CHECK_FALSE(mixed.streams[2].has_value());
    CHECK_THROWS_AS(parse_scenario("(7x13,?)^3"), ParseError);
}
