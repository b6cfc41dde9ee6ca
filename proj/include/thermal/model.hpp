#ifndef THERMAL_MODEL_HPP
#define THERMAL_MODEL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "thermal/rational.hpp"

namespace thermal {

using Temperature = Rational;

// An internal node of a thermal network. The node admits traffic while its
// current temperature is below the critical one; base temperature is a hard
// floor for any cooling.
struct ThermalNode {
    std::string id;
    Temperature theta0;  // base temperature
    Temperature thetac;  // critical temperature
    Temperature theta;   // current temperature, theta0 <= theta <= thetac

    bool operator==(const ThermalNode&) const = default;
};

// Global packet parameters. dtu is always required; the others only by the
// model variants that use them.
struct PacketParams {
    Rational dtu{1};               // temperature added per heating-packet traversal
    std::optional<Rational> dtd;   // temperature removed per cooling-packet visit
    std::optional<Rational> omega; // dissipation rate per unit rest time
    std::optional<Rational> beta;  // cooling budget of one cooling packet

    bool operator==(const PacketParams&) const = default;
};

// Directed network with capacitated internal nodes. Source and sink are plain
// vertex ids: they carry no temperature and no capacity constraint, so they
// are not ThermalNodes.
struct ThermalNetwork {
    std::map<std::string, ThermalNode> nodes;               // internal nodes by id
    std::set<std::pair<std::string, std::string>> edges;    // directed (from, to)
    std::string source;
    std::string sink;
    PacketParams params;

    bool has_vertex(const std::string& id) const {
        return id == source || id == sink || nodes.count(id) > 0;
    }

    // Throws SemanticError / ParameterError when an invariant is broken.
    void validate() const;

    // Copy with every node reset to its base temperature.
    ThermalNetwork at_base() const;

    bool operator==(const ThermalNetwork&) const = default;
};

// Heating packets the node can still admit: floor((thetac - theta) / dtu).
long long node_capacity(const ThermalNode& node, const Rational& dtu);

// Raises theta by count * dtu. Throws CapacityOverflowError when count
// exceeds the node's remaining capacity.
ThermalNode heat(ThermalNode node, long long count, const Rational& dtu);

// Lowers theta by amount, clamped at theta0. Negative amounts are rejected.
ThermalNode cool(ThermalNode node, const Temperature& amount);

}  // namespace thermal

#endif
