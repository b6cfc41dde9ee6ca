#include "thermal/flow.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>

#include "thermal/errors.hpp"

namespace thermal {

namespace {

void add_arc(SplitGraph& g, int from, int to, long long cap) {
    g.adj[from].push_back({to, cap, static_cast<int>(g.adj[to].size())});
    g.adj[to].push_back({from, 0, static_cast<int>(g.adj[from].size()) - 1});
}

// Internal arc of node i is the first arc added from its in-vertex.
const SplitGraph::Arc& internal_arc(const SplitGraph& g, int node) {
    return g.adj[g.in_vertex(node)].front();
}

int index_of(const std::vector<std::string>& ids, const std::string& id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    assert(it != ids.end() && *it == id);
    return static_cast<int>(it - ids.begin());
}

}  // namespace

long long SplitGraph::node_flow(int node) const {
    return node_caps[node] - internal_arc(*this, node).cap;
}

SplitGraph split(const ThermalNetwork& net) {
    net.validate();
    SplitGraph g;
    g.ids.reserve(net.nodes.size());
    for (const auto& [id, node] : net.nodes) g.ids.push_back(id);

    g.sentinel = 1;
    for (const auto& [id, node] : net.nodes) {
        long long c = node_capacity(node, net.params.dtu);
        g.node_caps.push_back(c);
        g.sentinel += c;
    }

    g.adj.resize(g.vertex_count());
    for (std::size_t i = 0; i < g.ids.size(); ++i)
        add_arc(g, g.in_vertex(static_cast<int>(i)), g.out_vertex(static_cast<int>(i)),
                g.node_caps[i]);

    auto tail_vertex = [&](const std::string& id) {
        if (id == net.source) return SplitGraph::kSource;
        if (id == net.sink) return SplitGraph::kSink;
        return g.out_vertex(index_of(g.ids, id));
    };
    auto head_vertex = [&](const std::string& id) {
        if (id == net.source) return SplitGraph::kSource;
        if (id == net.sink) return SplitGraph::kSink;
        return g.in_vertex(index_of(g.ids, id));
    };
    for (const auto& [from, to] : net.edges) {
        int tail = tail_vertex(from);
        g.edge_arcs.emplace_back(tail, static_cast<int>(g.adj[tail].size()));
        add_arc(g, tail, head_vertex(to), g.sentinel);
    }
    return g;
}

namespace {

// One Edmonds-Karp augmentation; returns the amount pushed (0 when the sink
// is unreachable in the residual graph).
long long augment_shortest(SplitGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> prev_vertex(n, -1), prev_arc(n, -1);
    prev_vertex[SplitGraph::kSource] = SplitGraph::kSource;
    std::queue<int> queue;
    queue.push(SplitGraph::kSource);
    while (!queue.empty() && prev_vertex[SplitGraph::kSink] < 0) {
        int v = queue.front();
        queue.pop();
        for (std::size_t i = 0; i < g.adj[v].size(); ++i) {
            const auto& arc = g.adj[v][i];
            if (arc.cap <= 0 || prev_vertex[arc.to] >= 0) continue;
            prev_vertex[arc.to] = v;
            prev_arc[arc.to] = static_cast<int>(i);
            queue.push(arc.to);
        }
    }
    if (prev_vertex[SplitGraph::kSink] < 0) return 0;

    long long bottleneck = std::numeric_limits<long long>::max();
    for (int v = SplitGraph::kSink; v != SplitGraph::kSource; v = prev_vertex[v])
        bottleneck = std::min(bottleneck, g.adj[prev_vertex[v]][prev_arc[v]].cap);
    for (int v = SplitGraph::kSink; v != SplitGraph::kSource; v = prev_vertex[v]) {
        auto& arc = g.adj[prev_vertex[v]][prev_arc[v]];
        arc.cap -= bottleneck;
        g.adj[arc.to][arc.rev].cap += bottleneck;
    }
    return bottleneck;
}

std::vector<bool> residual_reachable(const SplitGraph& g) {
    std::vector<bool> seen(g.vertex_count(), false);
    seen[SplitGraph::kSource] = true;
    std::queue<int> queue;
    queue.push(SplitGraph::kSource);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (const auto& arc : g.adj[v]) {
            if (arc.cap <= 0 || seen[arc.to]) continue;
            seen[arc.to] = true;
            queue.push(arc.to);
        }
    }
    return seen;
}

}  // namespace

NodeCutSet min_cut_extract(const ThermalNetwork& net, const SplitGraph& residual) {
    auto seen = residual_reachable(residual);
    NodeCutSet cut;
    for (std::size_t i = 0; i < residual.ids.size(); ++i) {
        int node = static_cast<int>(i);
        if (seen[residual.in_vertex(node)] && !seen[residual.out_vertex(node)]) {
            cut.members.push_back(residual.ids[i]);
            cut.capacity += node_capacity(net.nodes.at(residual.ids[i]), net.params.dtu);
        }
    }
    return cut;
}

FlowResult max_flow(const ThermalNetwork& net) {
    if (net.edges.count({net.source, net.sink}))
        throw UnboundedFlowError("direct edge " + net.source + "->" + net.sink +
                                 ": flow is not limited by any node");
    SplitGraph g = split(net);

    FlowResult result;
    while (long long pushed = augment_shortest(g)) result.value += pushed;

    for (std::size_t i = 0; i < g.ids.size(); ++i)
        result.node_flow[g.ids[i]] = g.node_flow(static_cast<int>(i));

    std::size_t pos = 0;
    for (const auto& edge : net.edges) {
        const auto& [vertex, index] = g.edge_arcs[pos++];
        result.edge_flow[edge] = g.sentinel - g.adj[vertex][index].cap;
    }

    result.min_cut = min_cut_extract(net, g);
    if (result.min_cut.capacity != result.value)
        throw Error("internal: residual cut capacity diverged from flow value");
    return result;
}

}  // namespace thermal
