#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbqc/bitvec.hpp"
#include "mbqc/errors.hpp"

namespace mbqc {

using Vertex = std::uint32_t;
// Canonical order for vertex lists is ascending index order, where the index
// is the position of the vertex in the graph's declaration order.
using VertexList = std::vector<Vertex>;

// An open graph (G, I, O): a simple undirected graph together with
// distinguished input and output vertex subsets. Vertices are addressed by
// index; names are kept for documents and reports. Instances are immutable,
// rewriting operations return new graphs (surviving vertices keep their
// names, indices are reassigned in the surviving declaration order).
class OpenGraph {
public:
    OpenGraph(std::vector<std::string> names,
              const std::vector<std::pair<std::string, std::string>>& edges,
              const std::vector<std::string>& inputs,
              const std::vector<std::string>& outputs);

    OpenGraph(std::vector<std::string> names,
              std::vector<std::pair<Vertex, Vertex>> edges,
              VertexList inputs, VertexList outputs);

    std::size_t size() const { return names_.size(); } // m
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Vertex v) const;
    std::optional<Vertex> find(std::string_view name) const;
    Vertex vertex(std::string_view name) const; // throws IdentifierError

    // Edges are stored sorted with u < v.
    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    bool has_edge(Vertex u, Vertex v) const;
    std::size_t degree(Vertex v) const;
    VertexList neighbors(Vertex v) const;
    const BitVec& adjacency_row(Vertex v) const;

    const VertexList& inputs() const { return inputs_; }
    const VertexList& outputs() const { return outputs_; }
    bool is_input(Vertex v) const;
    bool is_output(Vertex v) const;
    const VertexList& non_inputs() const { return non_inputs_; }   // I^C
    const VertexList& non_outputs() const { return non_outputs_; } // O^C

    // Odd(K): vertices with an odd number of neighbours in K. Computed as an
    // xor of adjacency rows.
    VertexList odd_neighborhood(const VertexList& K) const;
    BitVec odd_neighborhood_row(const BitVec& K) const;

    OpenGraph local_complement(Vertex v) const; // complement subgraph on N(v)
    OpenGraph delete_vertex(Vertex v) const;
    OpenGraph complement() const; // edge complement, same I/O

    // Exact equality: same name sequence, edge set, inputs and outputs.
    bool operator==(const OpenGraph& o) const;

private:
    void check(Vertex v) const;
    void finish();

    std::vector<std::string> names_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<BitVec> rows_;
    VertexList inputs_, outputs_, non_inputs_, non_outputs_;
    std::vector<char> input_flag_, output_flag_;
};

} // namespace mbqc
