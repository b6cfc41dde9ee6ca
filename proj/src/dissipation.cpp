#include "thermal/dissipation.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "thermal/errors.hpp"

namespace thermal {

namespace {

const Rational& require_omega(const ThermalNetwork& net) {
    if (!net.params.omega) throw ConfigError("omega required for dissipation");
    if (*net.params.omega <= Rational(0))
        throw ConfigError("omega must be positive for dissipation");
    return *net.params.omega;
}

// Rest removes whole heating quanta only; see StageState docs.
void rest(ThermalNetwork& net, const Rational& tau) {
    const Rational& omega = *net.params.omega;
    long long quanta = floor_to_int(tau * omega / net.params.dtu);
    if (quanta <= 0) return;
    Rational amount = Rational(quanta) * net.params.dtu;
    for (auto& [id, node] : net.nodes) node = cool(node, amount);
}

StageState make_stage(ThermalNetwork& net, const CutFamily* family, int index) {
    StageState stage;
    stage.index = index;
    for (const auto& [id, node] : net.nodes) stage.temperatures[id] = node.theta;

    FlowResult flow = max_flow(net);
    stage.flow = flow.value;
    stage.flow_cut = flow.min_cut;
    if (family && !family->empty()) {
        stage.cut_capacities = family->capacities(net);
        stage.min_cut_id = family->argmin(net);
        stage.min_cut = family->cut_set(net, static_cast<std::size_t>(stage.min_cut_id));
        // Per-stage max-flow/min-cut cross-check against the enumeration.
        if (stage.min_cut.capacity != stage.flow)
            throw Error("internal: stage flow diverged from enumerated minimum cut");
        stage.cut_residuals.reserve(stage.cut_capacities.size());
        for (long long cap : stage.cut_capacities)
            stage.cut_residuals.push_back(cap - stage.flow);
    } else {
        stage.min_cut = flow.min_cut;
    }

    for (auto& [id, node] : net.nodes) node = heat(node, flow.node_flow.at(id), net.params.dtu);
    return stage;
}

}  // namespace

std::pair<ThermalNetwork, StageState> run_stage(const ThermalNetwork& net,
                                                const Rational& tau) {
    require_omega(net);
    if (tau < Rational(0)) throw ParameterError("tau must be nonnegative");
    ThermalNetwork next = net;
    CutFamily family;
    if (net.nodes.size() <= kCutEnumerationNodeBound)
        family = enumerate_cut_structure(net);
    StageState stage = make_stage(next, &family, 1);
    rest(next, tau);
    return {std::move(next), std::move(stage)};
}

namespace {

SimulationTrace simulate_with_family(const ThermalNetwork& net, const Rational& tau,
                                     int horizon, CutFamily family) {
    require_omega(net);
    if (tau < Rational(0)) throw ParameterError("tau must be nonnegative");
    if (horizon < 1) throw ParameterError("horizon must be at least 1");

    SimulationTrace trace;
    trace.tau = tau;
    trace.family = std::move(family);

    ThermalNetwork current = net;
    for (int n = 1; n <= horizon; ++n) {
        trace.stages.push_back(make_stage(current, &trace.family, n));
        rest(current, tau);
    }

    // Steady detection: longest constant tail of (minimum cut, flow).
    auto same = [](const StageState& a, const StageState& b) {
        return a.flow == b.flow && a.min_cut.members == b.min_cut.members;
    };
    int first = horizon;
    while (first > 1 && same(trace.stages[static_cast<std::size_t>(first - 2)],
                             trace.stages.back()))
        --first;
    if (first == horizon && horizon > 1) return trace;  // no steady evidence

    trace.steady_stage = first;
    long long steady_flow = trace.stages[static_cast<std::size_t>(first - 1)].flow;
    if (tau > Rational(0))
        trace.steady_rate = Rational(steady_flow) / tau;
    else if (steady_flow == 0)
        trace.steady_rate = Rational(0);
    return trace;
}

}  // namespace

SimulationTrace simulate(const ThermalNetwork& net, const Rational& tau, int horizon) {
    CutFamily family;
    if (net.nodes.size() <= kCutEnumerationNodeBound)
        family = enumerate_cut_structure(net);
    return simulate_with_family(net, tau, horizon, std::move(family));
}

Rational optimal_tau(const PacketParams& params) {
    if (!params.omega) throw ConfigError("omega required for dissipation");
    if (*params.omega <= Rational(0)) throw ConfigError("omega must be positive");
    return params.dtu / *params.omega;
}

long long min_cut_cardinality(const ThermalNetwork& net) {
    if (net.nodes.size() <= kCutEnumerationNodeBound) {
        CutFamily family = enumerate_cut_structure(net);
        if (family.empty()) return 0;
        return std::popcount(family.masks.front());
    }
    // Unit-capacity copy: its max flow counts the fewest nodes any cut needs.
    ThermalNetwork unit = net;
    for (auto& [id, node] : unit.nodes) {
        node.theta0 = Rational(0);
        node.theta = Rational(0);
        node.thetac = unit.params.dtu;
    }
    return max_flow(unit).value;
}

Rational steady_rate_closed_form(const ThermalNetwork& net) {
    if (!net.params.omega) throw ConfigError("omega required for dissipation");
    if (*net.params.omega == Rational(0)) return Rational(0);
    return Rational(min_cut_cardinality(net)) * *net.params.omega / net.params.dtu;
}

long long steady_onset_bound(const ThermalNetwork& net) {
    CutFamily family = enumerate_cut_structure(net);
    if (family.empty()) return 0;
    auto caps = family.capacities(net);
    const int k_card = std::popcount(family.masks.front());
    const long long k_cap = caps.front();

    long long bound = 0;
    for (std::size_t i = 1; i < family.size(); ++i) {
        if (caps[i] >= k_cap) continue;
        int card = std::popcount(family.masks[i]);
        if (card == k_card)
            throw IndeterminateError(
                "minimum-cardinality tie with lower capacity: steady cut undefined");
        bound = std::max(bound, ceil_to_int(Rational(k_cap - caps[i], card - k_card)));
    }
    return bound;
}

std::map<Rational, Rational> tau_sweep(const ThermalNetwork& net,
                                       const std::vector<Rational>& taus, int horizon) {
    CutFamily family;
    if (net.nodes.size() <= kCutEnumerationNodeBound)
        family = enumerate_cut_structure(net);

    std::map<Rational, Rational> rates;
    for (const Rational& tau : taus) {
        SimulationTrace trace = simulate_with_family(net, tau, horizon, family);
        long long total = 0;
        for (std::size_t i = 1; i < trace.stages.size(); ++i) total += trace.stages[i].flow;
        Rational rate(0);
        if (total > 0 && horizon > 1 && tau > Rational(0))
            rate = Rational(total) / (Rational(horizon - 1) * tau);
        rates[tau] = rate;
    }
    return rates;
}

}  // namespace thermal
