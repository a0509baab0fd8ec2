#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbqc/angle.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

enum class LocalGateKind : std::uint8_t { X, Z, S, H };

std::string to_string(LocalGateKind k);

// One single-qubit byproduct gate on a surviving vertex, identified by name
// because the rewritten graph renumbers. Lists apply left to right.
struct LocalGate {
    LocalGateKind kind;
    std::string vertex;
    friend bool operator==(const LocalGate&, const LocalGate&) = default;
};

struct RewriteResult {
    OpenGraph graph;
    std::vector<LocalGate> byproduct; // for the even measurement outcome
};

// Measuring w in the Y basis: locally complement at w, drop w, and give each
// former neighbour an S. Odd outcomes additionally flip every former
// neighbour with a Z, which callers track through the correction frame.
RewriteResult measure_y(const OpenGraph& g, Vertex w);

// Measuring w in the Z basis just drops it.
RewriteResult measure_z(const OpenGraph& g, Vertex w);

// Measuring w in the X basis, pivoting on a chosen neighbour b: complement
// at b, at w, drop w, complement at b again. b picks up X then H; former
// neighbours of w outside N(b) and b itself pick up a Z.
RewriteResult measure_x(const OpenGraph& g, Vertex w, Vertex b);

RewriteResult apply_pauli_rewrite(const OpenGraph& g, Vertex w, PauliBasis basis,
                                  std::optional<Vertex> neighbor = std::nullopt);

enum class FlowClass : std::uint8_t { Flow, GflowOnly, None };

std::string to_string(FlowClass c);

FlowClass classify_flow(const OpenGraph& g);

struct FlowTransition {
    FlowClass before;
    FlowClass after;
};

FlowTransition classify_flow_transition(const OpenGraph& before, const OpenGraph& after);

} // namespace mbqc
