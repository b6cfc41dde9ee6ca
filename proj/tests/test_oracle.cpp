#include <doctest.h>

#include <algorithm>

#include "thermal/errors.hpp"
#include "thermal/flow.hpp"
#include "thermal/io.hpp"
#include "thermal/oracle.hpp"

using namespace thermal;

namespace {

std::vector<std::vector<std::string>> member_lists(const CutEnumeration& cuts) {
    std::vector<std::vector<std::string>> lists;
    for (const auto& cut : cuts.cuts) lists.push_back(cut.members);
    return lists;
}

}  // namespace

TEST_CASE("chain has each singleton as a cut") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 0 thetac 2\nnode b theta0 0 thetac 5\n"
        "edge s a\nedge a b\nedge b t\n");
    auto cuts = enumerate_cuts(net);
    CHECK(member_lists(cuts) ==
          std::vector<std::vector<std::string>>{{"a"}, {"b"}});
    CHECK(cuts.minimal().members == std::vector<std::string>{"a"});
    CHECK(cuts.minimal().capacity == 2);
}

TEST_CASE("diamond has the pair as its only cut") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 0 thetac 2\nnode b theta0 0 thetac 3\n"
        "edge s a\nedge s b\nedge a t\nedge b t\n");
    auto cuts = enumerate_cuts(net);
    CHECK(member_lists(cuts) == std::vector<std::vector<std::string>>{{"a", "b"}});
}

TEST_CASE("two disjoint length-2 paths give four mixed cuts") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 0 thetac 1\nnode b theta0 0 thetac 1\n"
        "node c theta0 0 thetac 1\nnode d theta0 0 thetac 1\n"
        "edge s a\nedge a c\nedge c t\n"
        "edge s b\nedge b d\nedge d t\n");
    auto lists = member_lists(enumerate_cuts(net));
    std::sort(lists.begin(), lists.end());
    CHECK(lists == std::vector<std::vector<std::string>>{
                       {"a", "b"}, {"a", "d"}, {"b", "c"}, {"c", "d"}});
}

TEST_CASE("uniform capacities pick the smallest cardinality cut") {
    // Cuts {a} and {b, c}, all nodes at capacity 4.
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 0 thetac 4\nnode b theta0 0 thetac 4\n"
        "node c theta0 0 thetac 4\n"
        "edge s a\nedge a b\nedge a c\nedge b t\nedge c t\n");
    NodeCutSet cut = min_cut_bruteforce(net);
    CHECK(cut.members == std::vector<std::string>{"a"});
    CHECK(cut.capacity == 4);
}

TEST_CASE("all-zero capacities fall back to the lexicographic tie-break") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 0 thetac 0\nnode b theta0 0 thetac 0\n"
        "edge s a\nedge a b\nedge b t\n");
    NodeCutSet cut = min_cut_bruteforce(net);
    CHECK(cut.members == std::vector<std::string>{"a"});
    CHECK(cut.capacity == 0);
}

TEST_CASE("enumerated cuts are inclusion-minimal and separating") {
    DeterministicRng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(1, 8)),
                                      Rational(1, 2), 0, 5, false);
        auto cuts = enumerate_cuts(net);
        for (const auto& cut : cuts.cuts) {
            CHECK(separates(net, cut.members));
            for (std::size_t drop = 0; drop < cut.members.size(); ++drop) {
                auto reduced = cut.members;
                reduced.erase(reduced.begin() + static_cast<long>(drop));
                CHECK(!separates(net, reduced));
            }
        }
        // No enumerated cut contains another.
        for (const auto& a : cuts.cuts)
            for (const auto& b : cuts.cuts)
                if (a.members != b.members)
                    CHECK(!std::includes(a.members.begin(), a.members.end(),
                                         b.members.begin(), b.members.end()));
    }
}

TEST_CASE("the flow engine cut reduces to an enumerated cut of equal capacity") {
    DeterministicRng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(1, 8)),
                                      Rational(1, 2), 0, 5, false);
        FlowResult flow = max_flow(net);
        auto core = minimal_core(net, flow.min_cut.members);
        long long core_capacity = 0;
        for (const auto& id : core)
            core_capacity += node_capacity(net.nodes.at(id), net.params.dtu);
        CHECK(core_capacity == flow.min_cut.capacity);

        auto cuts = enumerate_cuts(net);
        bool found = false;
        for (const auto& cut : cuts.cuts)
            if (cut.members == core) found = true;
        CHECK(found);
    }
}

TEST_CASE("path-count oracle handles the chain and diamond examples") {
    ThermalNetwork diamond = parse_network(
        "source s\nsink t\nparam dtu 1\n"
        "node a theta0 0 thetac 2\nnode b theta0 0 thetac 3\n"
        "edge s a\nedge s b\nedge a t\nedge b t\n");
    CHECK(max_flow_pathcount(diamond) == 5);

    ThermalNetwork blocked = parse_network(
        "source s\nsink t\nparam dtu 1\nnode a theta0 0 thetac 0\n"
        "edge s a\nedge a t\n");
    CHECK(max_flow_pathcount(blocked) == 0);

    ThermalNetwork direct =
        parse_network("source s\nsink t\nparam dtu 1\nedge s t\n");
    CHECK_THROWS_AS(max_flow_pathcount(direct), UnboundedFlowError);
}

TEST_CASE("oracles refuse instances above their size bounds") {
    ThermalNetwork big = generate(3, 21, Rational(1, 4), 0, 3, false);
    CHECK_THROWS_AS(enumerate_cuts(big), SizeError);

    ThermalNetwork nine = generate(4, 9, Rational(1, 2), 0, 3, false);
    CHECK_THROWS_AS(max_flow_pathcount(nine), SizeError);
}
