#include "doctest.h"

#include <string>

#include "qapbench/instance.hpp"

using namespace qapbench;

namespace {

const char* kTiny2 = "2\n0 1\n1 0\n0 3\n3 0";

} // namespace

TEST_CASE("parse_qaplib reads the two-matrix layout") {
    const QapInstance inst = parse_qaplib(kTiny2);
    CHECK(inst.n == 2);
    CHECK(inst.flow(0, 0) == 0);
    CHECK(inst.flow(0, 1) == 1);
    CHECK(inst.flow(1, 0) == 1);
    CHECK(inst.distance(0, 1) == 3);
    CHECK(inst.distance(1, 0) == 3);
    CHECK_FALSE(inst.linear_cost.has_value());
}

TEST_CASE("parse_qaplib accepts arbitrary whitespace shapes") {
    const QapInstance inst = parse_qaplib("2 0 1 1 0\n\n 0 3\t3 0  \n");
    CHECK(inst.n == 2);
    CHECK(inst.distance(0, 1) == 3);
}

TEST_CASE("parse_qaplib reads an optional third linear-cost block") {
    const QapInstance inst = parse_qaplib("2\n0 1\n1 0\n0 3\n3 0\n5 0\n0 7");
    REQUIRE(inst.linear_cost.has_value());
    CHECK((*inst.linear_cost)(0, 0) == 5);
    CHECK((*inst.linear_cost)(1, 1) == 7);
}

TEST_CASE("parse_qaplib rejects truncated input naming expected vs found counts") {
    try {
        parse_qaplib("3\n0 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("19") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
}

TEST_CASE("parse_qaplib rejects non-numeric tokens with position") {
    try {
        parse_qaplib("2\n0 1\n1 x\n0 3\n3 0");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("'x'") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }
}

TEST_CASE("parse_qaplib rejects invalid sizes") {
    CHECK_THROWS_AS(parse_qaplib("1\n0"), ParseError);
    CHECK_THROWS_AS(parse_qaplib("-4\n0"), ParseError);
    CHECK_THROWS_AS(parse_qaplib(""), ParseError);
}

TEST_CASE("parse_qaplib warns on nonzero diagonals instead of rejecting") {
    std::vector<std::string> warnings;
    const QapInstance inst = parse_qaplib("2\n9 1\n1 0\n0 3\n3 0", &warnings);
    CHECK(inst.flow(0, 0) == 9);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("flow") != std::string::npos);
}

TEST_CASE("serialize/parse round-trips an instance") {
    QapInstance inst = parse_qaplib("2\n0 1\n1 0\n0 3\n3 0\n5 0\n0 7");
    const QapInstance again = parse_qaplib(serialize_qaplib(inst));
    CHECK(again.n == inst.n);
    CHECK(again.flow == inst.flow);
    CHECK(again.distance == inst.distance);
    REQUIRE(again.linear_cost.has_value());
    CHECK(*again.linear_cost == *inst.linear_cost);
}

TEST_CASE("load_qaplib_file reads scr15 and names it from the stem") {
    const QapInstance inst = load_qaplib_file("data/qaplib/scr15.dat");
    CHECK(inst.n == 15);
    CHECK(inst.name == "scr15");
}

TEST_CASE("load_qaplib_file reports unreadable paths") {
    CHECK_THROWS_AS(load_qaplib_file("data/qaplib/does-not-exist.dat"), IoError);
}

TEST_CASE("swap_flow_distance exchanges the matrices") {
    QapInstance inst = parse_qaplib(kTiny2);
    swap_flow_distance(inst);
    CHECK(inst.flow(0, 1) == 3);
    CHECK(inst.distance(0, 1) == 1);
}

TEST_CASE("assignment helpers") {
    CHECK(is_permutation({2, 0, 1}, 3));
    CHECK_FALSE(is_permutation({0, 0, 1}, 3));
    CHECK_FALSE(is_permutation({0, 1}, 3));
    CHECK_FALSE(is_permutation({0, 1, 3}, 3));
    CHECK(identity_assignment(3) == Assignment{0, 1, 2});

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) CHECK(is_permutation(random_assignment(9, rng), 9));
}

TEST_CASE("random_instance is reproducible with zero diagonals") {
    const QapInstance a = random_instance(6, 50, 42);
    const QapInstance b = random_instance(6, 50, 42);
    CHECK(a.flow == b.flow);
    CHECK(a.distance == b.distance);
    for (int i = 0; i < 6; ++i) {
        CHECK(a.flow(i, i) == 0);
        CHECK(a.distance(i, i) == 0);
    }
}
