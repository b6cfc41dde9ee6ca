#ifndef THERMAL_COOLING_HPP
#define THERMAL_COOLING_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "thermal/flow.hpp"
#include "thermal/model.hpp"

namespace thermal {

// Directed s-t traversal; vertices may repeat, edges may not.
struct Walk {
    std::vector<std::string> vertices;

    bool operator==(const Walk&) const = default;
};

struct WalkSet {
    std::vector<Walk> walks;
    std::set<std::string> spanned;  // internal vertices covered by the walks
};

// Repair plan for an exhausted network: walks spanning the minimum cut of the
// base-temperature network, packet counts per walk, and the budget required.
struct CoolingPlan {
    NodeCutSet target;                          // minimum cut of the base network
    WalkSet walk_set;
    std::map<int, long long> packets_per_walk;  // walk index -> positive count
    long long total_packets = 0;
    Rational beta_required{0};                  // smallest sufficient packet budget
    long long restored_flow = 0;
};

// One walk per still-unspanned target, built from canonical shortest s->v and
// v->t paths (edge-disjoint; falls back to an edge-simple search when the
// halves collide). Throws UnreachableTargetError for targets on no s-t path.
WalkSet spanning_walkset(const ThermalNetwork& net,
                         const std::vector<std::string>& target);

// Packets needed to cool every target from critical back to base:
// sum of ceil(c_v * dtu / dtd) over the target, with c_v the base capacity.
long long packets_required(const ThermalNetwork& net, const NodeCutSet& target);

// Budget that lets one packet finish the cheapest target's canonical walk,
// paying dtd at every node that is above base temperature when reached.
Rational beta_min_functional(const ThermalNetwork& net, const NodeCutSet& target);

// Budget that lets a packet finish every target's canonical walk.
Rational beta_min_maxflow(const ThermalNetwork& net, const NodeCutSet& target);

// Builds and replays the full repair plan for an exhausted network. Throws
// InsufficientBudgetError when params.beta < beta_min_maxflow. Returns an
// empty plan when the network already achieves its base max flow.
CoolingPlan plan(const ThermalNetwork& net);

// Lemma-style audit of an executed plan: every walk meets every enumerated
// cut, and the post-plan minimum cut capacity equals the target's. On failure
// stores a description in *violation when given.
bool verify_cut_dominance(const ThermalNetwork& after, const CoolingPlan& executed,
                          std::string* violation = nullptr);

// --- dispatch machinery (shared with the verification suites) ---

// Heats every node by its max-flow throughput, leaving the network
// disconnected by the saturated minimum cut.
std::pair<ThermalNetwork, FlowResult> exhaust_by_max_flow(const ThermalNetwork& net);

// Payments (dtd units) a fresh unlimited-budget packet makes along the walk.
int walk_toll(const ThermalNetwork& net, const Walk& walk);

// Sends one packet: pays dtd at each hot node in walk order, cooling it by
// dtd. A packet that cannot cover every hot node on its walk is lost in
// transit and the network is left untouched; returns whether it completed.
bool dispatch_packet(ThermalNetwork& net, const Walk& walk, const Rational& beta);

// Replays the plan's packets with the given budget (lost packets included).
ThermalNetwork dispatch_plan(const ThermalNetwork& net, const CoolingPlan& executed,
                             const Rational& beta);

}  // namespace thermal

#endif
