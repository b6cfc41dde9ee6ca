#include "thermal/cooling.hpp"

#include <algorithm>
#include <queue>

#include "thermal/errors.hpp"
#include "thermal/oracle.hpp"

namespace thermal {

namespace {

// Sorted-adjacency view of the network structure, temperatures ignored.
struct Structure {
    std::vector<std::string> vertices;                       // sorted
    std::map<std::string, std::vector<std::string>> out;
    std::map<std::string, std::vector<std::string>> in;

    explicit Structure(const ThermalNetwork& net) {
        vertices.push_back(net.source);
        vertices.push_back(net.sink);
        for (const auto& [id, node] : net.nodes) vertices.push_back(id);
        std::sort(vertices.begin(), vertices.end());
        for (const auto& v : vertices) out[v], in[v];
        for (const auto& [from, to] : net.edges) {
            out[from].push_back(to);
            in[to].push_back(from);
        }
        // set order of edges already yields sorted neighbour lists for out;
        // sort in-lists explicitly.
        for (auto& [v, list] : in) std::sort(list.begin(), list.end());
    }

    std::map<std::string, int> bfs(const std::string& start,
                                   const std::map<std::string, std::vector<std::string>>& adj) const {
        std::map<std::string, int> dist;
        dist[start] = 0;
        std::queue<std::string> queue;
        queue.push(start);
        while (!queue.empty()) {
            std::string v = queue.front();
            queue.pop();
            for (const auto& w : adj.at(v)) {
                if (dist.count(w)) continue;
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
        return dist;
    }
};

// Canonical shortest path from `from` to `to`: walk forward, always taking
// the least neighbour that still lies on some shortest path.
std::vector<std::string> shortest_path(const Structure& s, const std::string& from,
                                       const std::string& to) {
    auto dist_to = s.bfs(to, s.in);  // distance from every vertex to `to`
    auto it = dist_to.find(from);
    if (it == dist_to.end()) return {};
    std::vector<std::string> path{from};
    std::string at = from;
    while (at != to) {
        int remaining = dist_to.at(at);
        for (const auto& w : s.out.at(at)) {
            auto d = dist_to.find(w);
            if (d != dist_to.end() && d->second == remaining - 1) {
                path.push_back(w);
                at = w;
                break;
            }
        }
    }
    return path;
}

using Edge = std::pair<std::string, std::string>;

std::vector<Edge> walk_edges(const Walk& walk) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < walk.vertices.size(); ++i)
        edges.emplace_back(walk.vertices[i], walk.vertices[i + 1]);
    return edges;
}

bool edge_simple(const Walk& walk) {
    auto edges = walk_edges(walk);
    std::sort(edges.begin(), edges.end());
    return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

// Fallback for the rare case where the two shortest halves share an edge:
// depth-first search for any edge-simple s->t walk visiting `via`.
bool edge_simple_walk_through(const Structure& s, const std::string& at,
                              const std::string& sink, const std::string& via,
                              bool seen_via, std::set<Edge>& used,
                              std::vector<std::string>& walk) {
    if (seen_via && at == sink) return true;
    for (const auto& w : s.out.at(at)) {
        Edge e{at, w};
        if (used.count(e)) continue;
        used.insert(e);
        walk.push_back(w);
        if (edge_simple_walk_through(s, w, sink, via, seen_via || w == via, used, walk))
            return true;
        walk.pop_back();
        used.erase(e);
    }
    return false;
}

Walk canonical_walk(const ThermalNetwork& net, const Structure& s,
                    const std::string& via) {
    auto head = shortest_path(s, net.source, via);
    auto tail = shortest_path(s, via, net.sink);
    if (head.empty() || tail.empty())
        throw UnreachableTargetError("node '" + via + "' lies on no " + net.source +
                                     "-" + net.sink + " path");
    Walk walk{head};
    walk.vertices.insert(walk.vertices.end(), tail.begin() + 1, tail.end());
    if (edge_simple(walk)) return walk;

    Walk fallback{{net.source}};
    std::set<Edge> used;
    if (!edge_simple_walk_through(s, net.source, net.sink, via, false, used,
                                  fallback.vertices))
        throw UnreachableTargetError("no edge-simple walk through '" + via + "'");
    return fallback;
}

std::vector<std::string> internal_vertices(const ThermalNetwork& net, const Walk& walk) {
    std::vector<std::string> result;
    for (const auto& v : walk.vertices)
        if (net.nodes.count(v)) result.push_back(v);
    return result;
}

const Rational& require_dtd(const ThermalNetwork& net) {
    if (!net.params.dtd) throw ConfigError("dtd required for cooling packets");
    return *net.params.dtd;
}

}  // namespace

WalkSet spanning_walkset(const ThermalNetwork& net,
                         const std::vector<std::string>& target) {
    net.validate();
    Structure s(net);
    std::vector<std::string> wanted = target;
    std::sort(wanted.begin(), wanted.end());
    for (const auto& id : wanted)
        if (!net.nodes.count(id))
            throw ParameterError("target '" + id + "' is not an internal node");

    WalkSet set;
    for (const auto& id : wanted) {
        if (set.spanned.count(id)) continue;
        Walk walk = canonical_walk(net, s, id);
        for (const auto& v : internal_vertices(net, walk)) set.spanned.insert(v);
        set.walks.push_back(std::move(walk));
    }
    return set;
}

long long packets_required(const ThermalNetwork& net, const NodeCutSet& target) {
    const Rational& dtd = require_dtd(net);
    long long total = 0;
    for (const auto& id : target.members) {
        const ThermalNode& node = net.nodes.at(id);
        long long base_capacity = floor_to_int((node.thetac - node.theta0) / net.params.dtu);
        total += ceil_to_int(Rational(base_capacity) * net.params.dtu / dtd);
    }
    return total;
}

int walk_toll(const ThermalNetwork& net, const Walk& walk) {
    const Rational& dtd = require_dtd(net);
    std::map<std::string, Temperature> theta;
    int toll = 0;
    for (const auto& v : walk.vertices) {
        auto it = net.nodes.find(v);
        if (it == net.nodes.end()) continue;  // source/sink
        auto [pos, inserted] = theta.emplace(v, it->second.theta);
        if (pos->second > it->second.theta0) {
            ++toll;
            pos->second -= dtd;
            if (pos->second < it->second.theta0) pos->second = it->second.theta0;
        }
    }
    return toll;
}

namespace {

Rational beta_bound(const ThermalNetwork& net, const NodeCutSet& target, bool maximum) {
    const Rational& dtd = require_dtd(net);
    Structure s(net);
    bool first = true;
    int bound = 0;
    for (const auto& id : target.members) {
        int toll = walk_toll(net, canonical_walk(net, s, id));
        if (first || (maximum ? toll > bound : toll < bound)) bound = toll;
        first = false;
    }
    return Rational(bound) * dtd;
}

}  // namespace

Rational beta_min_functional(const ThermalNetwork& net, const NodeCutSet& target) {
    return beta_bound(net, target, false);
}

Rational beta_min_maxflow(const ThermalNetwork& net, const NodeCutSet& target) {
    return beta_bound(net, target, true);
}

std::pair<ThermalNetwork, FlowResult> exhaust_by_max_flow(const ThermalNetwork& net) {
    FlowResult flow = max_flow(net);
    ThermalNetwork heated = net;
    for (auto& [id, node] : heated.nodes)
        node = heat(node, flow.node_flow.at(id), net.params.dtu);
    return {std::move(heated), std::move(flow)};
}

bool dispatch_packet(ThermalNetwork& net, const Walk& walk, const Rational& beta) {
    const Rational& dtd = require_dtd(net);
    Rational remaining = beta;
    std::vector<std::pair<std::string, Temperature>> journal;
    for (const auto& v : walk.vertices) {
        auto it = net.nodes.find(v);
        if (it == net.nodes.end()) continue;
        ThermalNode& node = it->second;
        if (node.theta <= node.theta0) continue;  // already at base, no charge
        if (remaining < dtd) {
            // Lost in transit: undo and report failure.
            for (auto rit = journal.rbegin(); rit != journal.rend(); ++rit)
                net.nodes.at(rit->first).theta = rit->second;
            return false;
        }
        remaining -= dtd;
        journal.emplace_back(v, node.theta);
        node = cool(node, dtd);
    }
    return true;
}

ThermalNetwork dispatch_plan(const ThermalNetwork& net, const CoolingPlan& executed,
                             const Rational& beta) {
    ThermalNetwork state = net;
    for (const auto& [walk_index, count] : executed.packets_per_walk) {
        const Walk& walk = executed.walk_set.walks.at(static_cast<std::size_t>(walk_index));
        for (long long i = 0; i < count; ++i) dispatch_packet(state, walk, beta);
    }
    return state;
}

CoolingPlan plan(const ThermalNetwork& net) {
    net.validate();
    ThermalNetwork base = net.at_base();
    FlowResult base_flow = max_flow(base);

    CoolingPlan result;
    result.target = base_flow.min_cut;
    if (max_flow(net).value == base_flow.value) {
        result.restored_flow = base_flow.value;  // nothing to repair
        return result;
    }

    require_dtd(net);
    if (!net.params.beta) throw ConfigError("beta required for cooling packets");
    result.beta_required = beta_min_maxflow(net, result.target);
    if (*net.params.beta < result.beta_required)
        throw InsufficientBudgetError("beta " + format_rational(*net.params.beta) +
                                          " below required minimum " +
                                          format_rational(result.beta_required),
                                      format_rational(result.beta_required));

    result.walk_set = spanning_walkset(net, result.target.members);

    // Charge each target to the first walk covering it, in walk order.
    const Rational& dtd = *net.params.dtd;
    for (const auto& id : result.target.members) {
        const ThermalNode& node = net.nodes.at(id);
        long long base_capacity = floor_to_int((node.thetac - node.theta0) / net.params.dtu);
        long long packets = ceil_to_int(Rational(base_capacity) * net.params.dtu / dtd);
        if (packets == 0) continue;
        for (std::size_t w = 0; w < result.walk_set.walks.size(); ++w) {
            auto internals = internal_vertices(net, result.walk_set.walks[w]);
            if (std::find(internals.begin(), internals.end(), id) != internals.end()) {
                result.packets_per_walk[static_cast<int>(w)] += packets;
                break;
            }
        }
        result.total_packets += packets;
    }

    ThermalNetwork repaired = dispatch_plan(net, result, *net.params.beta);
    result.restored_flow = max_flow(repaired).value;
    if (result.restored_flow != base_flow.value)
        throw Error("internal: plan restored flow " +
                    std::to_string(result.restored_flow) + ", expected " +
                    std::to_string(base_flow.value));
    return result;
}

bool verify_cut_dominance(const ThermalNetwork& after, const CoolingPlan& executed,
                          std::string* violation) {
    CutFamily family = enumerate_cut_structure(after);
    for (std::size_t w = 0; w < executed.walk_set.walks.size(); ++w) {
        auto internals = internal_vertices(after, executed.walk_set.walks[w]);
        std::set<std::string> covered(internals.begin(), internals.end());
        for (std::size_t cut = 0; cut < family.size(); ++cut) {
            bool hit = false;
            for (const auto& id : family.members(cut))
                if (covered.count(id)) {
                    hit = true;
                    break;
                }
            if (!hit) {
                if (violation) {
                    *violation = "walk " + std::to_string(w) + " misses cut {";
                    for (const auto& id : family.members(cut)) *violation += " " + id;
                    *violation += " }";
                }
                return false;
            }
        }
    }

    long long target_capacity = 0;
    for (const auto& id : executed.target.members)
        target_capacity += node_capacity(after.nodes.at(id), after.params.dtu);
    if (!family.empty()) {
        auto caps = family.capacities(after);
        long long min_cap = *std::min_element(caps.begin(), caps.end());
        if (min_cap != target_capacity) {
            if (violation)
                *violation = "minimum cut capacity " + std::to_string(min_cap) +
                             " differs from target capacity " +
                             std::to_string(target_capacity);
            return false;
        }
    }
    return true;
}

}  // namespace thermal
