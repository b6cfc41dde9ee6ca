#ifndef THERMAL_DISSIPATION_HPP
#define THERMAL_DISSIPATION_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "thermal/flow.hpp"
#include "thermal/model.hpp"
#include "thermal/oracle.hpp"

namespace thermal {

// One stage: a maximum-flow burst at the current temperatures followed by
// tau time units of rest. Rest removes floor(tau*omega/dtu) heating quanta
// from every node (clamped at base temperature): partial quanta never
// accumulate across stages, matching the per-stage capacity gain
// floor(tau*omega/dtu).
struct StageState {
    int index = 0;  // 1-based
    std::map<std::string, Temperature> temperatures;  // start of stage, after rest
    long long flow = 0;
    NodeCutSet min_cut;    // canonical minimum cut at start of stage
    NodeCutSet flow_cut;   // residual cut reported by the flow engine
    int min_cut_id = -1;   // index into the tracked cut family, -1 if untracked
    std::vector<long long> cut_capacities;  // per tracked cut, start of stage
    std::vector<long long> cut_residuals;   // capacity - flow, per tracked cut
};

struct SimulationTrace {
    Rational tau;
    CutFamily family;  // empty when the network exceeds the enumeration bound
    std::vector<StageState> stages;
    // First stage from which the minimum cut and the stage flow stay fixed
    // through the horizon; absent when only the final stage qualifies.
    std::optional<int> steady_stage;
    std::optional<Rational> steady_rate;  // flow/tau at a steady stage
};

std::pair<ThermalNetwork, StageState> run_stage(const ThermalNetwork& net,
                                                const Rational& tau);

SimulationTrace simulate(const ThermalNetwork& net, const Rational& tau, int horizon);

// tau maximizing the steady rate: dtu / omega.
Rational optimal_tau(const PacketParams& params);

// Steady rate |M_k| * omega / dtu with M_k the minimum-cardinality cut;
// zero when omega is zero.
Rational steady_rate_closed_form(const ThermalNetwork& net);

// Number of stages after which the minimum cut stops changing:
// 0 when the minimum-cardinality cut already has minimum capacity, otherwise
// ceil(max over cheaper cuts of (C_Mk - C_Mi) / (|M_i| - |M_k|)).
long long steady_onset_bound(const ThermalNetwork& net);

// Cardinality of the minimum-cardinality cut; enumeration below the size
// bound, otherwise max flow on a unit-capacity copy.
long long min_cut_cardinality(const ThermalNetwork& net);

// Long-run rate per tau: total flow of stages 2..horizon over (horizon-1)*tau.
// Stage 1 is the cold-start burst and is independent of tau.
std::map<Rational, Rational> tau_sweep(const ThermalNetwork& net,
                                       const std::vector<Rational>& taus, int horizon);

}  // namespace thermal

#endif
