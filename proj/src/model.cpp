#include "thermal/model.hpp"

#include "thermal/errors.hpp"

namespace thermal {

void ThermalNetwork::validate() const {
    if (source.empty()) throw SemanticError("missing source");
    if (sink.empty()) throw SemanticError("missing sink");
    if (source == sink) throw SemanticError("source and sink must differ");
    if (nodes.count(source))
        throw SemanticError("source '" + source + "' must not be a capacitated node");
    if (nodes.count(sink))
        throw SemanticError("sink '" + sink + "' must not be a capacitated node");
    if (params.dtu <= Rational(0)) throw ParameterError("dtu must be positive");
    if (params.dtd && *params.dtd <= Rational(0))
        throw ParameterError("dtd must be positive");
    if (params.omega && *params.omega < Rational(0))
        throw ParameterError("omega must be nonnegative");
    if (params.beta && *params.beta < Rational(0))
        throw ParameterError("beta must be nonnegative");
    for (const auto& [id, node] : nodes) {
        if (id != node.id) throw SemanticError("node key/id mismatch for '" + id + "'");
        if (node.thetac < node.theta0)
            throw SemanticError("node '" + id + "': critical temperature below base");
        if (node.theta < node.theta0 || node.theta > node.thetac)
            throw SemanticError("node '" + id + "': temperature out of range");
    }
    for (const auto& [from, to] : edges) {
        if (from == to) throw SemanticError("self-loop on '" + from + "'");
        if (!has_vertex(from)) throw SemanticError("edge from unknown vertex '" + from + "'");
        if (!has_vertex(to)) throw SemanticError("edge to unknown vertex '" + to + "'");
    }
}

ThermalNetwork ThermalNetwork::at_base() const {
    ThermalNetwork copy = *this;
    for (auto& [id, node] : copy.nodes) node.theta = node.theta0;
    return copy;
}

long long node_capacity(const ThermalNode& node, const Rational& dtu) {
    if (dtu <= Rational(0)) throw ParameterError("dtu must be positive");
    return floor_to_int((node.thetac - node.theta) / dtu);
}

ThermalNode heat(ThermalNode node, long long count, const Rational& dtu) {
    if (count < 0) throw ParameterError("heating count must be nonnegative");
    if (count > node_capacity(node, dtu))
        throw CapacityOverflowError("node '" + node.id + "' cannot admit " +
                                    std::to_string(count) + " packets");
    node.theta += Rational(count) * dtu;
    return node;
}

ThermalNode cool(ThermalNode node, const Temperature& amount) {
    if (amount < Rational(0)) throw ParameterError("cooling amount must be nonnegative");
    node.theta -= amount;
    if (node.theta < node.theta0) node.theta = node.theta0;
    return node;
}

}  // namespace thermal
