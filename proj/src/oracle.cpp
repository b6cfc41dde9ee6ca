#include "thermal/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>

#include "thermal/errors.hpp"

namespace thermal {

namespace {

// Bit layout: internal nodes 0..n-1 in sorted id order, then source, sink.
struct BitGraph {
    std::vector<std::string> ids;
    int n = 0;  // internal count
    std::uint32_t source_bit = 0, sink_bit = 0;
    std::vector<std::uint32_t> out;  // out-neighbour mask per vertex (n+2 entries)

    explicit BitGraph(const ThermalNetwork& net) {
        for (const auto& [id, node] : net.nodes) ids.push_back(id);
        n = static_cast<int>(ids.size());
        source_bit = 1u << n;
        sink_bit = 1u << (n + 1);
        out.assign(n + 2, 0);
        auto bit_index = [&](const std::string& id) {
            if (id == net.source) return n;
            if (id == net.sink) return n + 1;
            return static_cast<int>(
                std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        for (const auto& [from, to] : net.edges)
            out[bit_index(from)] |= 1u << bit_index(to);
    }

    // True when s cannot reach t with `removed` internal nodes deleted.
    bool separates(std::uint32_t removed) const {
        std::uint32_t allowed = ~removed;
        std::uint32_t seen = source_bit;
        std::uint32_t frontier = source_bit;
        while (frontier) {
            std::uint32_t next = 0;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= out[v] & allowed;
            }
            frontier = next & ~seen;
            seen |= frontier;
            if (seen & sink_bit) return false;
        }
        return true;
    }
};

// Lexicographic order of member id vectors equals lexicographic order of the
// ascending bit-index sequences, because bit order follows sorted ids.
bool members_less(std::uint32_t a, std::uint32_t b) {
    while (a && b) {
        int i = std::countr_zero(a);
        int j = std::countr_zero(b);
        if (i != j) return i < j;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

}  // namespace

std::vector<std::string> CutFamily::members(std::size_t cut) const {
    std::vector<std::string> result;
    std::uint32_t mask = masks[cut];
    while (mask) {
        result.push_back(ids[std::countr_zero(mask)]);
        mask &= mask - 1;
    }
    return result;
}

long long CutFamily::capacity(const ThermalNetwork& net, std::size_t cut) const {
    long long total = 0;
    std::uint32_t mask = masks[cut];
    while (mask) {
        total += node_capacity(net.nodes.at(ids[std::countr_zero(mask)]), net.params.dtu);
        mask &= mask - 1;
    }
    return total;
}

std::vector<long long> CutFamily::capacities(const ThermalNetwork& net) const {
    std::vector<long long> caps(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) caps[i] = capacity(net, i);
    return caps;
}

int CutFamily::argmin(const ThermalNetwork& net) const {
    // Family order is (cardinality, lexicographic members), so the first
    // minimum-capacity index realizes the full canonical tie-break.
    int best = -1;
    long long best_cap = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        long long cap = capacity(net, i);
        if (best < 0 || cap < best_cap) {
            best = static_cast<int>(i);
            best_cap = cap;
        }
    }
    return best;
}

NodeCutSet CutFamily::cut_set(const ThermalNetwork& net, std::size_t cut) const {
    return NodeCutSet{members(cut), capacity(net, cut)};
}

CutFamily enumerate_cut_structure(const ThermalNetwork& net, int node_bound) {
    net.validate();
    const int n = static_cast<int>(net.nodes.size());
    if (n > node_bound)
        throw SizeError("cut enumeration limited to " + std::to_string(node_bound) +
                        " internal nodes, got " + std::to_string(n));

    BitGraph graph(net);
    const std::uint32_t subsets = 1u << n;
    std::vector<bool> sep(subsets);
    for (std::uint32_t mask = 0; mask < subsets; ++mask)
        sep[mask] = graph.separates(mask);

    CutFamily family;
    family.ids = graph.ids;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        if (!sep[mask]) continue;
        bool minimal = true;
        for (std::uint32_t rest = mask; rest && minimal; rest &= rest - 1) {
            std::uint32_t without = mask & ~(rest & -rest);
            if (sep[without]) minimal = false;
        }
        if (minimal) family.masks.push_back(mask);
    }
    std::sort(family.masks.begin(), family.masks.end(),
              [](std::uint32_t a, std::uint32_t b) {
                  int ca = std::popcount(a), cb = std::popcount(b);
                  if (ca != cb) return ca < cb;
                  return members_less(a, b);
              });
    return family;
}

CutEnumeration enumerate_cuts(const ThermalNetwork& net, int node_bound) {
    CutFamily family = enumerate_cut_structure(net, node_bound);
    CutEnumeration result;
    result.cuts.reserve(family.size());
    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), 0u);
    auto caps = family.capacities(net);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (caps[a] != caps[b]) return caps[a] < caps[b];
        int ca = std::popcount(family.masks[a]), cb = std::popcount(family.masks[b]);
        if (ca != cb) return ca < cb;
        return members_less(family.masks[a], family.masks[b]);
    });
    for (std::size_t i : order) result.cuts.push_back(family.cut_set(net, i));
    return result;
}

NodeCutSet min_cut_bruteforce(const ThermalNetwork& net, int node_bound) {
    return enumerate_cuts(net, node_bound).minimal();
}

bool separates(const ThermalNetwork& net, const std::vector<std::string>& removed) {
    BitGraph graph(net);
    std::uint32_t mask = 0;
    for (const auto& id : removed) {
        auto it = std::lower_bound(graph.ids.begin(), graph.ids.end(), id);
        if (it == graph.ids.end() || *it != id)
            throw ParameterError("unknown internal node '" + id + "'");
        mask |= 1u << (it - graph.ids.begin());
    }
    return graph.separates(mask);
}

std::vector<std::string> minimal_core(const ThermalNetwork& net,
                                      std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
            std::vector<std::string> reduced = members;
            reduced.erase(reduced.begin() + static_cast<long>(i));
            if (separates(net, reduced)) {
                members = std::move(reduced);
                shrunk = true;
                break;
            }
        }
    }
    return members;
}

namespace {

struct PathSearch {
    const ThermalNetwork& net;
    std::vector<std::string> ids;
    std::vector<long long> caps;
    std::vector<std::vector<int>> adj_internal;  // per internal node
    std::vector<int> from_source;
    std::vector<bool> to_sink;
    std::vector<std::uint32_t> paths;  // node mask per simple s-t path
    std::vector<std::uint32_t> cuts;

    long long best = 0;

    explicit PathSearch(const ThermalNetwork& n) : net(n) {
        for (const auto& [id, node] : net.nodes) {
            ids.push_back(id);
            caps.push_back(node_capacity(node, net.params.dtu));
        }
        adj_internal.resize(ids.size());
        to_sink.assign(ids.size(), false);
        auto idx = [&](const std::string& id) {
            return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) -
                                    ids.begin());
        };
        for (const auto& [from, to] : net.edges) {
            if (from == net.source && to != net.sink) from_source.push_back(idx(to));
            else if (from != net.source && to == net.sink) to_sink[idx(from)] = true;
            else if (from != net.source && to != net.sink && from != net.sink &&
                     to != net.source)
                adj_internal[idx(from)].push_back(idx(to));
        }
    }

    void enumerate_paths(int v, std::uint32_t visited) {
        if (paths.size() > 20000)
            throw SizeError("path-count oracle: too many simple paths");
        if (to_sink[v]) paths.push_back(visited);
        for (int w : adj_internal[v])
            if (!(visited & (1u << w))) enumerate_paths(w, visited | (1u << w));
    }

    long long cut_bound(const std::vector<long long>& remaining) const {
        long long bound = -1;
        for (std::uint32_t cut : cuts) {
            long long total = 0;
            std::uint32_t mask = cut;
            while (mask) {
                total += remaining[std::countr_zero(mask)];
                mask &= mask - 1;
            }
            if (bound < 0 || total < bound) bound = total;
        }
        return bound;
    }

    void search(std::size_t path, std::vector<long long>& remaining, long long current) {
        best = std::max(best, current);
        if (path == paths.size()) return;
        long long bound = cut_bound(remaining);
        if (bound >= 0 && current + bound <= best) return;

        long long bottleneck = -1;
        std::uint32_t mask = paths[path];
        while (mask) {
            long long c = remaining[std::countr_zero(mask)];
            if (bottleneck < 0 || c < bottleneck) bottleneck = c;
            mask &= mask - 1;
        }
        if (bottleneck < 0) bottleneck = 0;  // path with no internal node cannot happen here
        for (long long x = bottleneck; x >= 0; --x) {
            mask = paths[path];
            while (mask) {
                remaining[std::countr_zero(mask)] -= x;
                mask &= mask - 1;
            }
            search(path + 1, remaining, current + x);
            mask = paths[path];
            while (mask) {
                remaining[std::countr_zero(mask)] += x;
                mask &= mask - 1;
            }
        }
    }
};

}  // namespace

long long max_flow_pathcount(const ThermalNetwork& net, int node_bound) {
    net.validate();
    const int n = static_cast<int>(net.nodes.size());
    if (n > node_bound)
        throw SizeError("path-count oracle limited to " + std::to_string(node_bound) +
                        " internal nodes, got " + std::to_string(n));
    if (net.edges.count({net.source, net.sink}))
        throw UnboundedFlowError("direct edge " + net.source + "->" + net.sink +
                                 ": flow is not limited by any node");

    PathSearch search(net);
    long long total_cap = std::accumulate(search.caps.begin(), search.caps.end(), 0LL);
    if (total_cap > kPathCountCapacityBound)
        throw SizeError("path-count oracle limited to total capacity " +
                        std::to_string(kPathCountCapacityBound));
    for (int v : search.from_source) search.enumerate_paths(v, 1u << v);

    for (std::uint32_t mask : enumerate_cut_structure(net, node_bound).masks)
        search.cuts.push_back(mask);

    std::vector<long long> remaining = search.caps;
    search.search(0, remaining, 0);
    return search.best;
}

}  // namespace thermal
