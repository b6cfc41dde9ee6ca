#ifndef THERMAL_ORACLE_HPP
#define THERMAL_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "thermal/flow.hpp"
#include "thermal/model.hpp"

namespace thermal {

// Deliberately naive ground truth. Everything here is exponential in the
// number of internal nodes and guarded by size bounds.

inline constexpr int kCutEnumerationNodeBound = 20;
inline constexpr int kPathCountNodeBound = 8;
inline constexpr long long kPathCountCapacityBound = 200;

// The structural family of all inclusion-minimal node-cut-sets. Cut members
// are stored as bitmasks over the sorted internal node ids, ordered by
// (cardinality, lexicographic members); the family is independent of node
// temperatures, so one enumeration serves a whole simulation.
struct CutFamily {
    std::vector<std::string> ids;   // bit i <-> ids[i]
    std::vector<std::uint32_t> masks;

    bool empty() const { return masks.empty(); }
    std::size_t size() const { return masks.size(); }
    std::vector<std::string> members(std::size_t cut) const;
    long long capacity(const ThermalNetwork& net, std::size_t cut) const;
    std::vector<long long> capacities(const ThermalNetwork& net) const;
    // Index of the minimum cut by (capacity, cardinality, lexicographic
    // members); -1 for an empty family.
    int argmin(const ThermalNetwork& net) const;
    NodeCutSet cut_set(const ThermalNetwork& net, std::size_t cut) const;
};

CutFamily enumerate_cut_structure(const ThermalNetwork& net,
                                  int node_bound = kCutEnumerationNodeBound);

struct CutEnumeration {
    std::vector<NodeCutSet> cuts;  // sorted by (capacity, cardinality, members)

    const NodeCutSet& minimal() const { return cuts.front(); }
};

// All inclusion-minimal node-cut-sets with their current capacities.
CutEnumeration enumerate_cuts(const ThermalNetwork& net,
                              int node_bound = kCutEnumerationNodeBound);

NodeCutSet min_cut_bruteforce(const ThermalNetwork& net,
                              int node_bound = kCutEnumerationNodeBound);

// Independent second oracle: best total over all integral packings of simple
// s-t paths subject to node capacities, found by exhaustive search.
long long max_flow_pathcount(const ThermalNetwork& net,
                             int node_bound = kPathCountNodeBound);

// Does removing `removed` leave no directed s-t path?
bool separates(const ThermalNetwork& net, const std::vector<std::string>& removed);

// Drops members whose removal keeps the set separating, yielding an
// inclusion-minimal cut (only zero-capacity members of a minimum cut can
// ever be dropped).
std::vector<std::string> minimal_core(const ThermalNetwork& net,
                                      std::vector<std::string> members);

}  // namespace thermal

#endif
