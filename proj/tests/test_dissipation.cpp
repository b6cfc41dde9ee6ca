#include <doctest.h>

#include <algorithm>

#include "thermal/dissipation.hpp"
#include "thermal/errors.hpp"
#include "thermal/io.hpp"

using namespace thermal;

namespace {

// Cuts {a} at capacity 10 and {b, c} at capacity 4.
const char* kTwoCut =
    "source s\nsink t\nparam dtu 1\nparam omega 1\n"
    "node a theta0 0 thetac 10\n"
    "node b theta0 0 thetac 2\nnode c theta0 0 thetac 2\n"
    "edge s b\nedge s c\nedge b a\nedge c a\nedge a t\n";

ThermalNetwork uniform_diamond(long long cap) {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 2\nparam omega 1\n"
        "node a theta0 0 thetac " + std::to_string(2 * cap) + "\n" +
        "node b theta0 0 thetac " + std::to_string(2 * cap) + "\n" +
        "edge s a\nedge s b\nedge a t\nedge b t\n");
    return net;
}

}  // namespace

TEST_CASE("optimal tau is dtu over omega") {
    PacketParams params;
    params.dtu = Rational(2);
    params.omega = Rational(1);
    CHECK(optimal_tau(params) == Rational(2));

    params.dtu = Rational(3);
    params.omega = Rational(2);
    CHECK(optimal_tau(params) == Rational(3, 2));

    params.dtu = Rational(1);
    params.omega = Rational(1);
    CHECK(optimal_tau(params) == Rational(1));

    params.omega.reset();
    CHECK_THROWS_AS(optimal_tau(params), ConfigError);
    params.omega = Rational(0);
    CHECK_THROWS_AS(optimal_tau(params), ConfigError);
}

TEST_CASE("a unit-capacity network fully recovers at the optimal tau") {
    ThermalNetwork net = uniform_diamond(1);
    auto [rested, stage] = run_stage(net, optimal_tau(net.params));
    CHECK(stage.flow == 2);
    for (const auto& [id, node] : rested.nodes)
        CHECK(node_capacity(node, net.params.dtu) == 1);
}

TEST_CASE("tau zero leaves the saturated cut dysfunctional") {
    ThermalNetwork net = uniform_diamond(3);
    auto [after1, stage1] = run_stage(net, Rational(0));
    CHECK(stage1.flow == 6);
    auto [after2, stage2] = run_stage(after1, Rational(0));
    CHECK(stage2.flow == 0);
}

TEST_CASE("a long enough rest returns every node to base temperature") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 2\nparam omega 1\n"
        "node a theta0 0 thetac 5\nnode b theta0 0 thetac 7\n"
        "edge s a\nedge a b\nedge b t\n");
    Rational tau(7);  // >= (thetac - theta0) / omega for both nodes
    auto [rested, stage] = run_stage(net, tau);
    for (const auto& [id, node] : rested.nodes) CHECK(node.theta == node.theta0);
    auto [rested2, stage2] = run_stage(rested, tau);
    CHECK(stage2.flow == stage.flow);
}

TEST_CASE("run_stage requires a positive dissipation rate") {
    ThermalNetwork net = uniform_diamond(1);
    net.params.omega.reset();
    CHECK_THROWS_AS(run_stage(net, Rational(1)), ConfigError);
    net.params.omega = Rational(1);
    CHECK_THROWS_AS(run_stage(net, Rational(-1)), ParameterError);
}

TEST_CASE("uniform simulation keeps the same minimum cut in every stage") {
    ThermalNetwork net = uniform_diamond(3);
    SimulationTrace trace = simulate(net, optimal_tau(net.params), 10);
    REQUIRE(trace.stages.size() == 10);
    for (const auto& stage : trace.stages)
        CHECK(stage.min_cut_id == trace.stages.front().min_cut_id);
    CHECK(trace.stages[0].flow == 6);
    for (std::size_t i = 1; i < trace.stages.size(); ++i)
        CHECK(trace.stages[i].flow == 2);
    REQUIRE(trace.steady_stage.has_value());
    CHECK(*trace.steady_stage == 2);
    REQUIRE(trace.steady_rate.has_value());
    CHECK(*trace.steady_rate == Rational(1));  // |M_k| * omega / dtu = 2 * 1 / 2
    CHECK(*trace.steady_rate == steady_rate_closed_form(net));
}

TEST_CASE("the two-cut network switches minimum cut exactly after the bound") {
    ThermalNetwork net = parse_network(kTwoCut);
    CHECK(steady_onset_bound(net) == 6);

    SimulationTrace trace = simulate(net, Rational(1), 12);
    for (const auto& stage : trace.stages) {
        if (stage.index <= 6)
            CHECK(stage.min_cut.members == std::vector<std::string>{"b", "c"});
        else
            CHECK(stage.min_cut.members == std::vector<std::string>{"a"});
    }
    // Stage-by-stage capacities of {a}: 10, then dropping by 1 per stage.
    CHECK(trace.stages[0].flow == 4);
    CHECK(trace.stages[1].flow == 2);
    CHECK(trace.stages[6].flow == 2);
    CHECK(trace.stages[7].flow == 1);
}

TEST_CASE("hub behind a three-node layer has onset ceil(5/2)") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\nparam omega 1\n"
        "node a theta0 0 thetac 10\n"
        "node b theta0 0 thetac 2\nnode c theta0 0 thetac 2\n"
        "node d theta0 0 thetac 1\n"
        "edge s b\nedge s c\nedge s d\nedge b a\nedge c a\nedge d a\nedge a t\n");
    CHECK(steady_onset_bound(net) == 3);
    SimulationTrace trace = simulate(net, Rational(1), 23);
    for (const auto& stage : trace.stages) {
        if (stage.index <= 3) continue;
        CHECK(stage.min_cut.members == std::vector<std::string>{"a"});
        long long min_cap =
            *std::min_element(stage.cut_capacities.begin(), stage.cut_capacities.end());
        CHECK(min_cap == stage.cut_capacities.front());
    }
}

TEST_CASE("onset bound is zero when the smallest cut is already cheapest") {
    ThermalNetwork net = uniform_diamond(2);
    CHECK(steady_onset_bound(net) == 0);
}

TEST_CASE("a cheaper cut of equal cardinality is indeterminate") {
    ThermalNetwork net = parse_network(
        "source s\nsink t\nparam dtu 1\nparam omega 1\n"
        "node a theta0 0 thetac 5\nnode b theta0 0 thetac 2\n"
        "edge s a\nedge a b\nedge b t\n");
    CHECK_THROWS_AS(steady_onset_bound(net), IndeterminateError);
}

TEST_CASE("closed-form steady rate") {
    ThermalNetwork net = uniform_diamond(2);
    CHECK(steady_rate_closed_form(net) == Rational(1));  // 2 * 1 / 2

    ThermalNetwork chain = parse_network(
        "source s\nsink t\nparam dtu 1\nparam omega 1\n"
        "node a theta0 0 thetac 3\nedge s a\nedge a t\n");
    CHECK(steady_rate_closed_form(chain) == Rational(1));

    chain.params.omega = Rational(0);
    CHECK(steady_rate_closed_form(chain) == Rational(0));
    chain.params.omega.reset();
    CHECK_THROWS_AS(steady_rate_closed_form(chain), ConfigError);
}

TEST_CASE("sweep: rests below the optimum yield rate zero, multiples tie it") {
    ThermalNetwork net = uniform_diamond(3);
    Rational star = optimal_tau(net.params);
    auto rates = tau_sweep(net, {star / 4, star / 2, star, star * 2, star * 3 / 2}, 12);
    CHECK(rates.at(star / 4) == Rational(0));
    CHECK(rates.at(star / 2) == Rational(0));
    CHECK(rates.at(star) == Rational(1));
    CHECK(rates.at(star * 2) == rates.at(star));  // floor(2) regained per stage
    CHECK(rates.at(star * 3 / 2) < rates.at(star));
    for (const auto& [tau, rate] : rates) CHECK(rate <= rates.at(star));
}

TEST_CASE("stage bookkeeping: residual = capacity - flow for every tracked cut") {
    DeterministicRng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(1, 7)),
                                      Rational(1, 2), 1, 6, false);
        net.params.omega = Rational(1);
        SimulationTrace trace = simulate(net, Rational(1), 6);
        for (const auto& stage : trace.stages) {
            REQUIRE(stage.cut_capacities.size() == trace.family.size());
            long long min_cap = stage.flow;
            for (std::size_t i = 0; i < stage.cut_capacities.size(); ++i) {
                CHECK(stage.cut_residuals[i] == stage.cut_capacities[i] - stage.flow);
                CHECK(stage.cut_residuals[i] >= 0);
                min_cap = std::min(min_cap, stage.cut_capacities[i]);
            }
            CHECK(min_cap == stage.flow);
        }
    }
}

TEST_CASE("uniform networks keep one minimum cut for any tau at or above optimum") {
    DeterministicRng rng(37);
    const Rational multipliers[] = {Rational(1), Rational(3, 2), Rational(2),
                                    Rational(7, 3)};
    for (int trial = 0; trial < 30; ++trial) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(1, 7)),
                                      Rational(1, 2), 1, 5, true);
        net.params.omega = Rational(rng.range(1, 2));
        Rational tau = optimal_tau(net.params) * multipliers[rng.bounded(4)];
        SimulationTrace trace = simulate(net, tau, 10);
        for (const auto& stage : trace.stages)
            CHECK(stage.min_cut_id == trace.stages.front().min_cut_id);
    }
}

TEST_CASE("non-uniform networks settle on the minimum-cardinality cut") {
    DeterministicRng rng(43);
    int done = 0;
    for (int attempt = 0; done < 30 && attempt < 400; ++attempt) {
        ThermalNetwork net = generate(rng.next(), static_cast<int>(rng.range(2, 7)),
                                      Rational(1, 2), 1, 8, false);
        net.params.omega = Rational(1);
        CutFamily family = enumerate_cut_structure(net);
        if (family.empty()) continue;
        if (family.size() > 1 && family.members(0).size() == family.members(1).size())
            continue;  // cardinality tie: theorem hypothesis not met
        ++done;
        long long onset = steady_onset_bound(net);
        SimulationTrace trace =
            simulate(net, optimal_tau(net.params), static_cast<int>(onset) + 15);
        for (const auto& stage : trace.stages)
            if (stage.index > onset) CHECK(stage.min_cut_id == 0);
    }
    CHECK(done == 30);
}
