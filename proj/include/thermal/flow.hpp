#ifndef THERMAL_FLOW_HPP
#define THERMAL_FLOW_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thermal/model.hpp"

namespace thermal {

// Set of internal nodes whose removal separates source from sink, with the
// sum of their current capacities.
struct NodeCutSet {
    std::vector<std::string> members;  // sorted ids
    long long capacity = 0;

    bool operator==(const NodeCutSet&) const = default;
};

// Edge-capacitated image of a node-capacitated network. Every internal node v
// becomes the arc v.in -> v.out carrying node_capacity(v); original edges
// become arcs with a finite sentinel capacity that no minimum cut can use
// (sentinel = 1 + sum of all internal capacities). Source and sink stay
// unsplit.
struct SplitGraph {
    struct Arc {
        int to = 0;
        long long cap = 0;  // residual capacity once flow has been pushed
        int rev = 0;        // index of the reverse arc in adj[to]
    };

    std::vector<std::vector<Arc>> adj;
    std::vector<std::string> ids;        // sorted internal node ids
    std::vector<long long> node_caps;    // capacity per internal node at build time
    // Position (vertex, arc index) of the forward arc of each original edge,
    // in edge set order.
    std::vector<std::pair<int, int>> edge_arcs;
    long long sentinel = 1;

    static constexpr int kSource = 0;
    static constexpr int kSink = 1;
    int in_vertex(int node) const { return 2 + 2 * node; }
    int out_vertex(int node) const { return 3 + 2 * node; }
    int vertex_count() const { return 2 + 2 * static_cast<int>(ids.size()); }

    // Flow currently on the internal arc of node i.
    long long node_flow(int node) const;
};

struct FlowResult {
    long long value = 0;
    NodeCutSet min_cut;
    std::map<std::string, long long> node_flow;
    std::map<std::pair<std::string, std::string>, long long> edge_flow;
};

SplitGraph split(const ThermalNetwork& net);

// Maximum s-t flow via shortest augmenting paths on split(net). Throws
// UnboundedFlowError when a direct source->sink edge leaves the flow
// unlimited by any node.
FlowResult max_flow(const ThermalNetwork& net);

// Source-side minimum node-cut-set of a maximum flow's residual graph:
// nodes whose in-vertex is residually reachable from s while the out-vertex
// is not. Deterministic for a fixed residual graph.
NodeCutSet min_cut_extract(const ThermalNetwork& net, const SplitGraph& residual);

}  // namespace thermal

#endif
