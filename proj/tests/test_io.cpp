#include <doctest.h>

#include "thermal/errors.hpp"
#include "thermal/flow.hpp"
#include "thermal/io.hpp"
#include "thermal/oracle.hpp"

using namespace thermal;

TEST_CASE("minimal file parses into a valid network") {
    ThermalNetwork net = parse_network(
        "# comment line\n"
        "source s\n"
        "sink t\n"
        "node a theta0 0 thetac 10   # trailing comment\n"
        "edge s a\n"
        "edge a t\n"
        "param dtu 3\n");
    CHECK(net.source == "s");
    CHECK(net.sink == "t");
    CHECK(net.nodes.size() == 1);
    CHECK(net.edges.size() == 2);
    CHECK(node_capacity(net.nodes.at("a"), net.params.dtu) == 3);
}

TEST_CASE("rational temperatures keep exact capacities") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 1/2 thetac 7/2\nedge s a\nedge a t\n");
    CHECK(node_capacity(net.nodes.at("a"), net.params.dtu) == 3);
}

TEST_CASE("missing dtu is a semantic error") {
    CHECK_THROWS_AS(parse_network("source s\nsink t\nedge s t\n"), SemanticError);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_network("source s\nsink t\nwobble a b\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("wobble") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_network("node a theta0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_network("source s\nsource s\n"), ParseError);
    CHECK_THROWS_AS(parse_network("param dtu 1/0\n"), ParseError);
    CHECK_THROWS_AS(
        parse_network("node a theta0 0 thetac 1\nnode a theta0 0 thetac 1\n"),
        ParseError);
    CHECK_THROWS_AS(parse_network("edge s a\nedge s a\n"), ParseError);
}

TEST_CASE("semantic errors for broken networks") {
    // dangling edge endpoint
    CHECK_THROWS_AS(
        parse_network("source s\nsink t\nparam dtu 1\nedge s ghost\n"),
        SemanticError);
    // critical below base
    CHECK_THROWS_AS(parse_network("source s\nsink t\nparam dtu 1\n"
                                  "node a theta0 2 thetac 1\nedge s a\nedge a t\n"),
                    SemanticError);
    // source declared as a capacitated node
    CHECK_THROWS_AS(parse_network("source s\nsink t\nparam dtu 1\n"
                                  "node s theta0 0 thetac 1\nedge s t\n"),
                    SemanticError);
}

TEST_CASE("render and parse are inverse on generated networks") {
    DeterministicRng rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(0, 8)),
                                      Rational(1, 2), 0, 9, rng.chance(Rational(1, 2)));
        if (rng.chance(Rational(1, 2))) net.params.omega = Rational(rng.range(0, 4), 2);
        if (rng.chance(Rational(1, 2))) net.params.dtd = Rational(rng.range(1, 4), 3);
        std::string text = render_network(net);
        CHECK(parse_network(text) == net);
        CHECK(render_network(parse_network(text)) == text);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    ThermalNetwork a = generate(1234, 6, Rational(1, 2), 0, 9, false);
    ThermalNetwork b = generate(1234, 6, Rational(1, 2), 0, 9, false);
    CHECK(render_network(a) == render_network(b));
    ThermalNetwork c = generate(1235, 6, Rational(1, 2), 0, 9, false);
    CHECK(render_network(a) != render_network(c));
}

TEST_CASE("zero internal nodes yields the bare source-sink pair") {
    ThermalNetwork net = generate(7, 0, Rational(1), 0, 5, false);
    CHECK(net.nodes.empty());
    CHECK(net.edges == std::set<std::pair<std::string, std::string>>{{"s", "t"}});
}

TEST_CASE("uniform generation gives every node the same capacity") {
    ThermalNetwork net = generate(99, 7, Rational(3, 5), 2, 9, true);
    long long cap = node_capacity(net.nodes.begin()->second, net.params.dtu);
    for (const auto& [id, node] : net.nodes)
        CHECK(node_capacity(node, net.params.dtu) == cap);
}

TEST_CASE("generated networks always contain a source-sink path") {
    DeterministicRng rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(1, 10)),
                                      Rational(1, 4), 0, 5, false);
        CHECK(!separates(net, {}));
    }
}

TEST_CASE("digest is the stable FNV-1a of the bytes") {
    CHECK(digest("") == "cbf29ce484222325");
    CHECK(digest("thermal") != digest("Thermal"));
    CHECK(digest("abc") == digest("abc"));
}
