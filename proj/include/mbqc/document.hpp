#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbqc/angle.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/simulate.hpp"

namespace mbqc {

// Text form of an open graph with optional measurement angles and one
// optional order witness. Parsing checks structure only: names resolve,
// nothing repeats, a witness comes with complete layers. Whether a witness
// actually satisfies its conditions is the verifiers' business.
//
//   # comment
//   vertices: a b c
//   inputs: a
//   outputs: c
//   edges: a-b b-c
//   angles: a=1/4 b=0
//   flow: a>b b>c
//   layers: a=2 b=1 c=0
//
// Angles are multiples of pi ("1", "1/4") or radians when they carry a
// decimal point. A gflow witness writes sets instead: "gflow: a>b,c".
struct ParsedDocument {
    OpenGraph graph;
    std::map<Vertex, Angle> angles;
    std::optional<std::map<Vertex, Vertex>> flow_successor;
    std::optional<std::map<Vertex, VertexList>> gflow_corrector;
    std::optional<std::vector<int>> layers;

    bool has_witness() const { return flow_successor || gflow_corrector; }
    Flow flow_witness() const;   // throws ParameterError when absent
    Gflow gflow_witness() const; // throws ParameterError when absent

    // Graph plus angles as a runnable pattern; every non-output needs an
    // angle and outputs must not have one.
    MeasurementPattern to_pattern() const;
};

ParsedDocument parse_document(std::istream& in);
ParsedDocument parse_document(const std::string& text);

// Canonical text form; parse(emit(d)) reproduces d exactly. `comment`
// becomes leading # lines when nonempty.
std::string emit_document(const ParsedDocument& doc, const std::string& comment = "");

// Graphviz form. Inputs are boxes, outputs double circles; layers label the
// vertices and successor paths are drawn bold.
std::string emit_dot(const OpenGraph& g, const std::vector<int>* layers = nullptr,
                     const PathCover* paths = nullptr);

} // namespace mbqc
