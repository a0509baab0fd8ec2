#include "mbqc/rewrite.hpp"

#include <algorithm>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

void require_measurable(const OpenGraph& g, Vertex w) {
    if (w >= g.size()) throw IdentifierError("vertex outside the graph");
    if (g.is_output(w))
        throw ParameterError("'" + g.name(w) + "' is an output and cannot be measured away");
    if (g.is_input(w))
        throw ParameterError("'" + g.name(w) + "' is an input; only internal vertices can be measured away");
}

} // namespace

std::string to_string(LocalGateKind k) {
    switch (k) {
    case LocalGateKind::X: return "X";
    case LocalGateKind::Z: return "Z";
    case LocalGateKind::S: return "S";
    case LocalGateKind::H: return "H";
    }
    return "?";
}

std::string to_string(FlowClass c) {
    switch (c) {
    case FlowClass::Flow: return "flow";
    case FlowClass::GflowOnly: return "gflow-only";
    case FlowClass::None: return "none";
    }
    return "?";
}

RewriteResult measure_y(const OpenGraph& g, Vertex w) {
    require_measurable(g, w);
    std::vector<LocalGate> by;
    for (Vertex u : g.neighbors(w)) by.push_back({LocalGateKind::S, g.name(u)});
    OpenGraph lc = g.local_complement(w);
    return {lc.delete_vertex(w), std::move(by)};
}

RewriteResult measure_z(const OpenGraph& g, Vertex w) {
    require_measurable(g, w);
    return {g.delete_vertex(w), {}};
}

RewriteResult measure_x(const OpenGraph& g, Vertex w, Vertex b) {
    require_measurable(g, w);
    if (b >= g.size()) throw IdentifierError("vertex outside the graph");
    if (!g.has_edge(w, b))
        throw ParameterError("'" + g.name(b) + "' is not a neighbour of '" + g.name(w) + "'");

    std::vector<LocalGate> by;
    by.push_back({LocalGateKind::X, g.name(b)});
    by.push_back({LocalGateKind::H, g.name(b)});
    const BitVec& nb = g.adjacency_row(b);
    for (Vertex u : g.neighbors(w)) {
        if (u == b || nb.test(u)) continue;
        by.push_back({LocalGateKind::Z, g.name(u)});
    }

    OpenGraph dropped = g.local_complement(b).local_complement(w).delete_vertex(w);
    return {dropped.local_complement(dropped.vertex(g.name(b))), std::move(by)};
}

RewriteResult apply_pauli_rewrite(const OpenGraph& g, Vertex w, PauliBasis basis,
                                  std::optional<Vertex> neighbor) {
    switch (basis) {
    case PauliBasis::Z:
        if (neighbor) throw ParameterError("a Z rewrite takes no pivot neighbour");
        return measure_z(g, w);
    case PauliBasis::Y:
        if (neighbor) throw ParameterError("a Y rewrite takes no pivot neighbour");
        return measure_y(g, w);
    case PauliBasis::X: {
        Vertex b;
        if (neighbor) {
            b = *neighbor;
        } else {
            if (g.neighbors(w).empty())
                throw ParameterError("an X rewrite needs '" + g.name(w) +
                                     "' to have at least one neighbour");
            b = g.neighbors(w).front();
        }
        return measure_x(g, w, b);
    }
    }
    throw ParameterError("unknown basis");
}

FlowClass classify_flow(const OpenGraph& g) {
    if (find_flow(g)) return FlowClass::Flow;
    if (find_gflow(g)) return FlowClass::GflowOnly;
    return FlowClass::None;
}

FlowTransition classify_flow_transition(const OpenGraph& before, const OpenGraph& after) {
    return {classify_flow(before), classify_flow(after)};
}

} // namespace mbqc
