#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbqc/open_graph.hpp"

namespace mbqc {

// Layer maps encode the measurement partial order: u comes before v exactly
// when layer[u] > layer[v]. Larger layers are measured earlier; outputs sit
// at layer 0 and are never measured.

// Causal flow witness: successor maps every non-output to a non-input
// neighbour that carries its correction.
struct Flow {
    std::map<Vertex, Vertex> successor;
    std::vector<int> layer;
};

// Generalised flow witness: corrector maps every non-output to a non-empty
// set of non-inputs (canonical order inside each set).
struct Gflow {
    std::map<Vertex, VertexList> corrector;
    std::vector<int> layer;
};

enum class Check {
    Structure,      // wrong domain/range/shape, bad layer map
    OrderSuccessor, // i must come before f(i), resp. before every j in g(i)
    OrderNeighbors, // every j in N(f(i)), resp. Odd(g(i)), must be i or after i
    Adjacency,      // i must lie in N(f(i)), resp. in Odd(g(i))
};
std::string_view to_string(Check c);

struct Violation {
    Check check;
    std::optional<Vertex> i, j;
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::string summary(const OpenGraph& g) const;
};

VerifyReport verify_flow(const OpenGraph& g, const Flow& f);
VerifyReport verify_gflow(const OpenGraph& g, const Gflow& gf);

// Backward greedy search: peel vertices whose correction target is forced.
// Complete: returns a witness exactly when one exists.
std::optional<Flow> find_flow(const OpenGraph& g);

// Backward layered search solving one GF(2) system per candidate and round.
// The candidate solves inside a round are independent; find_gflow runs them
// in parallel when OpenMP is enabled, find_gflow_serial is the plain
// reference implementation. Both return identical witnesses.
std::optional<Gflow> find_gflow(const OpenGraph& g);
std::optional<Gflow> find_gflow_serial(const OpenGraph& g);

// Longest-path layering of the precedence constraints a successor/corrector
// map induces; nullopt when the constraints are cyclic (no valid order).
std::optional<std::vector<int>> layers_from_flow(const OpenGraph& g,
                                                 const std::map<Vertex, Vertex>& successor);
std::optional<std::vector<int>> layers_from_gflow(const OpenGraph& g,
                                                  const std::map<Vertex, VertexList>& corrector);

// Vertex-disjoint successor paths, one per input: input first, output last,
// together covering every vertex. Requires a verified flow and |I| = |O|.
struct PathCover {
    std::vector<VertexList> paths;
    std::vector<int> path_of; // vertex index -> path index
};
PathCover path_cover_from_flow(const OpenGraph& g, const Flow& f);

} // namespace mbqc
