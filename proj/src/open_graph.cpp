#include "mbqc/open_graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace mbqc {

OpenGraph::OpenGraph(std::vector<std::string> names,
                     const std::vector<std::pair<std::string, std::string>>& edges,
                     const std::vector<std::string>& inputs,
                     const std::vector<std::string>& outputs)
    : names_(std::move(names)) {
    edges_.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto fa = find(a), fb = find(b);
        if (!fa) throw IdentifierError("unknown vertex '" + a + "'");
        if (!fb) throw IdentifierError("unknown vertex '" + b + "'");
        edges_.emplace_back(*fa, *fb);
    }
    for (const auto& s : inputs) {
        auto f = find(s);
        if (!f) throw IdentifierError("unknown input vertex '" + s + "'");
        inputs_.push_back(*f);
    }
    for (const auto& s : outputs) {
        auto f = find(s);
        if (!f) throw IdentifierError("unknown output vertex '" + s + "'");
        outputs_.push_back(*f);
    }
    finish();
}

OpenGraph::OpenGraph(std::vector<std::string> names,
                     std::vector<std::pair<Vertex, Vertex>> edges,
                     VertexList inputs, VertexList outputs)
    : names_(std::move(names)),
      edges_(std::move(edges)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)) {
    finish();
}

void OpenGraph::finish() {
    const std::size_t m = names_.size();
    {
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < m; ++i) {
            auto [it, fresh] = seen.emplace(names_[i], i);
            if (!fresh) throw ParameterError("duplicate vertex name '" + names_[i] + "'");
        }
    }
    rows_.assign(m, BitVec(m));
    for (auto& [u, v] : edges_) {
        if (u >= m || v >= m) throw IdentifierError("edge endpoint out of range");
        if (u == v) throw ParameterError("self-loop on vertex '" + names_[u] + "'");
        if (u > v) std::swap(u, v);
        if (rows_[u].test(v))
            throw ParameterError("duplicate edge " + names_[u] + "-" + names_[v]);
        rows_[u].set(v);
        rows_[v].set(u);
    }
    std::sort(edges_.begin(), edges_.end());

    input_flag_.assign(m, 0);
    output_flag_.assign(m, 0);
    for (Vertex v : inputs_) {
        if (v >= m) throw IdentifierError("input vertex out of range");
        if (input_flag_[v]) throw ParameterError("duplicate input vertex '" + names_[v] + "'");
        input_flag_[v] = 1;
    }
    for (Vertex v : outputs_) {
        if (v >= m) throw IdentifierError("output vertex out of range");
        if (output_flag_[v]) throw ParameterError("duplicate output vertex '" + names_[v] + "'");
        output_flag_[v] = 1;
    }
    std::sort(inputs_.begin(), inputs_.end());
    std::sort(outputs_.begin(), outputs_.end());
    non_inputs_.clear();
    non_outputs_.clear();
    for (Vertex v = 0; v < m; ++v) {
        if (!input_flag_[v]) non_inputs_.push_back(v);
        if (!output_flag_[v]) non_outputs_.push_back(v);
    }
}

void OpenGraph::check(Vertex v) const {
    if (v >= names_.size()) throw IdentifierError("vertex index out of range");
}

const std::string& OpenGraph::name(Vertex v) const {
    check(v);
    return names_[v];
}

std::optional<Vertex> OpenGraph::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Vertex>(i);
    return std::nullopt;
}

Vertex OpenGraph::vertex(std::string_view name) const {
    auto f = find(name);
    if (!f) throw IdentifierError("unknown vertex '" + std::string(name) + "'");
    return *f;
}

bool OpenGraph::has_edge(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return rows_[u].test(v);
}

std::size_t OpenGraph::degree(Vertex v) const {
    check(v);
    return rows_[v].count();
}

VertexList OpenGraph::neighbors(Vertex v) const {
    check(v);
    return rows_[v].bits();
}

const BitVec& OpenGraph::adjacency_row(Vertex v) const {
    check(v);
    return rows_[v];
}

bool OpenGraph::is_input(Vertex v) const {
    check(v);
    return input_flag_[v];
}

bool OpenGraph::is_output(Vertex v) const {
    check(v);
    return output_flag_[v];
}

BitVec OpenGraph::odd_neighborhood_row(const BitVec& K) const {
    BitVec acc(size());
    for (std::size_t i = K.find_next(0); i != BitVec::npos; i = K.find_next(i + 1))
        acc ^= rows_[i];
    return acc;
}

VertexList OpenGraph::odd_neighborhood(const VertexList& K) const {
    BitVec k(size());
    for (Vertex v : K) {
        check(v);
        k.set(v);
    }
    auto bits = odd_neighborhood_row(k).bits();
    return VertexList(bits.begin(), bits.end());
}

OpenGraph OpenGraph::local_complement(Vertex v) const {
    check(v);
    VertexList nb = neighbors(v);
    std::vector<std::pair<Vertex, Vertex>> e;
    e.reserve(edges_.size() + nb.size() * nb.size() / 2);
    // keep every edge not inside N(v), toggle the pairs inside N(v)
    for (const auto& [a, b] : edges_)
        if (!(rows_[v].test(a) && rows_[v].test(b))) e.emplace_back(a, b);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!rows_[nb[i]].test(nb[j])) e.emplace_back(nb[i], nb[j]);
    VertexList in = inputs_, out = outputs_;
    return OpenGraph(names_, std::move(e), std::move(in), std::move(out));
}

OpenGraph OpenGraph::delete_vertex(Vertex v) const {
    check(v);
    const std::size_t m = size();
    std::vector<std::string> names;
    names.reserve(m - 1);
    std::vector<Vertex> remap(m, 0);
    for (Vertex u = 0; u < m; ++u) {
        if (u == v) continue;
        remap[u] = static_cast<Vertex>(names.size());
        names.push_back(names_[u]);
    }
    std::vector<std::pair<Vertex, Vertex>> e;
    e.reserve(edges_.size());
    for (const auto& [a, b] : edges_)
        if (a != v && b != v) e.emplace_back(remap[a], remap[b]);
    VertexList in, out;
    for (Vertex u : inputs_)
        if (u != v) in.push_back(remap[u]);
    for (Vertex u : outputs_)
        if (u != v) out.push_back(remap[u]);
    return OpenGraph(std::move(names), std::move(e), std::move(in), std::move(out));
}

OpenGraph OpenGraph::complement() const {
    const std::size_t m = size();
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex u = 0; u < m; ++u)
        for (Vertex v = u + 1; v < m; ++v)
            if (!rows_[u].test(v)) e.emplace_back(u, v);
    VertexList in = inputs_, out = outputs_;
    return OpenGraph(names_, std::move(e), std::move(in), std::move(out));
}

bool OpenGraph::operator==(const OpenGraph& o) const {
    return names_ == o.names_ && edges_ == o.edges_ && inputs_ == o.inputs_ &&
           outputs_ == o.outputs_;
}

} // namespace mbqc
