#include "mbqc/flow.hpp"

#include <algorithm>
#include <deque>

#include "mbqc/gf2.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbqc {

std::string_view to_string(Check c) {
    switch (c) {
    case Check::Structure: return "structure";
    case Check::OrderSuccessor: return "order-successor";
    case Check::OrderNeighbors: return "order-neighbors";
    case Check::Adjacency: return "adjacency";
    }
    return "?";
}

std::string VerifyReport::summary(const OpenGraph& g) const {
    if (ok) return "ok";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += to_string(v.check);
        if (v.i) s += " i=" + g.name(*v.i);
        if (v.j) s += " j=" + g.name(*v.j);
        if (!v.detail.empty()) s += " (" + v.detail + ")";
    }
    return s;
}

namespace {

void add(VerifyReport& rep, Check c, std::optional<Vertex> i, std::optional<Vertex> j,
         std::string detail) {
    rep.ok = false;
    rep.violations.push_back({c, i, j, std::move(detail)});
}

// Shared structural checks: domain must be exactly O^C, the layer map must
// cover every vertex with a non-negative value.
template <class Map>
bool check_structure(const OpenGraph& g, const Map& map, const std::vector<int>& layer,
                     VerifyReport& rep) {
    bool usable = true;
    if (layer.size() != g.size()) {
        add(rep, Check::Structure, std::nullopt, std::nullopt, "layer map does not cover all vertices");
        usable = false;
    } else {
        for (Vertex v = 0; v < g.size(); ++v)
            if (layer[v] < 0)
                add(rep, Check::Structure, v, std::nullopt, "negative layer");
    }
    for (const auto& [i, _] : map) {
        if (i >= g.size()) {
            add(rep, Check::Structure, std::nullopt, std::nullopt, "vertex index out of range");
            return false;
        }
        if (g.is_output(i))
            add(rep, Check::Structure, i, std::nullopt, "output vertex in domain");
    }
    for (Vertex v : g.non_outputs())
        if (!map.count(v)) {
            add(rep, Check::Structure, v, std::nullopt, "non-output missing from domain");
            usable = false;
        }
    return usable;
}

} // namespace

VerifyReport verify_flow(const OpenGraph& g, const Flow& f) {
    VerifyReport rep;
    if (!check_structure(g, f.successor, f.layer, rep)) return rep;
    const auto& layer = f.layer;
    for (const auto& [i, fi] : f.successor) {
        if (fi >= g.size()) {
            add(rep, Check::Structure, i, std::nullopt, "successor index out of range");
            continue;
        }
        if (g.is_input(fi))
            add(rep, Check::Structure, i, fi, "successor is an input");
        if (!g.has_edge(i, fi))
            add(rep, Check::Adjacency, i, fi, "i not adjacent to its successor");
        if (!(layer[i] > layer[fi]))
            add(rep, Check::OrderSuccessor, i, fi, "i does not precede its successor");
        for (Vertex j : g.neighbors(fi))
            if (j != i && !(layer[i] > layer[j]))
                add(rep, Check::OrderNeighbors, i, j, "neighbor of successor not after i");
    }
    return rep;
}

VerifyReport verify_gflow(const OpenGraph& g, const Gflow& gf) {
    VerifyReport rep;
    if (!check_structure(g, gf.corrector, gf.layer, rep)) return rep;
    const auto& layer = gf.layer;
    for (const auto& [i, set] : gf.corrector) {
        if (set.empty()) {
            add(rep, Check::Structure, i, std::nullopt, "empty corrector set");
            continue;
        }
        bool bad = false;
        for (Vertex j : set) {
            if (j >= g.size()) {
                add(rep, Check::Structure, i, std::nullopt, "corrector index out of range");
                bad = true;
                break;
            }
            if (g.is_input(j)) add(rep, Check::Structure, i, j, "corrector contains an input");
        }
        if (bad) continue;
        for (Vertex j : set)
            if (!(layer[i] > layer[j]))
                add(rep, Check::OrderSuccessor, i, j, "corrector member not after i");
        VertexList odd = g.odd_neighborhood(set);
        if (!std::binary_search(odd.begin(), odd.end(), i))
            add(rep, Check::Adjacency, i, std::nullopt, "i not in Odd of its corrector set");
        for (Vertex j : odd)
            if (j != i && !(layer[i] > layer[j]))
                add(rep, Check::OrderNeighbors, i, j, "Odd member not after i");
    }
    return rep;
}

std::optional<Flow> find_flow(const OpenGraph& g) {
    const std::size_t m = g.size();
    Flow f;
    f.layer.assign(m, 0);
    std::vector<char> done(m, 0), used(m, 0), assigned(m, 0);
    for (Vertex v : g.outputs()) done[v] = 1;
    std::size_t remaining = m - g.outputs().size();
    int round = 0;
    while (remaining > 0) {
        // candidates against the frozen `done` of this round
        std::vector<std::pair<Vertex, Vertex>> picks; // (corrector c, vertex u)
        for (Vertex c = 0; c < m; ++c) {
            if (!done[c] || used[c] || g.is_input(c)) continue;
            Vertex u = 0;
            int count = 0;
            for (Vertex w : g.neighbors(c)) {
                if (!done[w]) {
                    u = w;
                    if (++count > 1) break;
                }
            }
            if (count == 1 && !assigned[u]) {
                picks.emplace_back(c, u);
                assigned[u] = 1;
            }
        }
        if (picks.empty()) return std::nullopt;
        ++round;
        for (auto [c, u] : picks) {
            f.successor[u] = c;
            f.layer[u] = round;
            used[c] = 1;
            done[u] = 1;
            --remaining;
        }
    }
    return f;
}

namespace {

// One layered elimination round shared by both gflow finders. For every
// vertex u outside `done`, look for K inside done ∩ I^C with
// Odd(K) ∩ (V \ done) = {u}. Row r of the system is the restriction of the
// adjacency row of unprocessed[r] to the candidate columns.
std::optional<Gflow> find_gflow_impl(const OpenGraph& g, bool parallel) {
    const std::size_t m = g.size();
    Gflow gf;
    gf.layer.assign(m, 0);
    std::vector<char> done(m, 0);
    for (Vertex v : g.outputs()) done[v] = 1;
    std::size_t remaining = m - g.outputs().size();
    int round = 0;
    while (remaining > 0) {
        VertexList unprocessed, columns;
        for (Vertex v = 0; v < m; ++v) {
            if (!done[v]) unprocessed.push_back(v);
            if (done[v] && !g.is_input(v)) columns.push_back(v);
        }
        std::vector<BitVec> base(unprocessed.size(), BitVec(columns.size()));
        for (std::size_t r = 0; r < unprocessed.size(); ++r) {
            const BitVec& row = g.adjacency_row(unprocessed[r]);
            for (std::size_t c = 0; c < columns.size(); ++c)
                if (row.test(columns[c])) base[r].set(c);
        }
        const std::size_t nu = unprocessed.size();
        std::vector<std::optional<BitVec>> sol(nu);
        auto solve_one = [&](std::size_t idx) {
            GF2System sys;
            sys.rows = nu;
            sys.cols = columns.size();
            sys.mat = base;
            sys.rhs = BitVec(nu);
            sys.rhs.set(idx);
            sol[idx] = gf2_solve(sys);
        };
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(nu); ++idx)
                solve_one(static_cast<std::size_t>(idx));
#else
            for (std::size_t idx = 0; idx < nu; ++idx) solve_one(idx);
#endif
        } else {
            for (std::size_t idx = 0; idx < nu; ++idx) solve_one(idx);
        }
        bool progress = false;
        ++round;
        for (std::size_t idx = 0; idx < nu; ++idx) {
            if (!sol[idx]) continue;
            progress = true;
            Vertex u = unprocessed[idx];
            VertexList K;
            for (std::size_t c = sol[idx]->find_next(0); c != BitVec::npos;
                 c = sol[idx]->find_next(c + 1))
                K.push_back(columns[c]);
            gf.corrector[u] = std::move(K);
            gf.layer[u] = round;
            --remaining;
        }
        if (!progress) return std::nullopt;
        for (std::size_t idx = 0; idx < nu; ++idx)
            if (sol[idx]) done[unprocessed[idx]] = 1;
    }
    return gf;
}

// Longest path over the precedence constraints collected as (before, after)
// pairs; layer(before) must exceed layer(after). Returns nullopt on a cycle.
std::optional<std::vector<int>>
layers_from_constraints(std::size_t m, const std::vector<std::pair<Vertex, Vertex>>& prec) {
    std::vector<std::vector<Vertex>> after(m); // after[j] lists i with i > j constraint
    std::vector<int> indeg(m, 0);
    for (auto [i, j] : prec) {
        after[j].push_back(i);
        ++indeg[i];
    }
    std::vector<int> layer(m, 0);
    std::deque<Vertex> q;
    for (Vertex v = 0; v < m; ++v)
        if (indeg[v] == 0) q.push_back(v);
    std::size_t seen = 0;
    while (!q.empty()) {
        Vertex j = q.front();
        q.pop_front();
        ++seen;
        for (Vertex i : after[j]) {
            layer[i] = std::max(layer[i], layer[j] + 1);
            if (--indeg[i] == 0) q.push_back(i);
        }
    }
    if (seen != m) return std::nullopt;
    return layer;
}

} // namespace

std::optional<Gflow> find_gflow(const OpenGraph& g) { return find_gflow_impl(g, true); }
std::optional<Gflow> find_gflow_serial(const OpenGraph& g) { return find_gflow_impl(g, false); }

std::optional<std::vector<int>> layers_from_flow(const OpenGraph& g,
                                                 const std::map<Vertex, Vertex>& successor) {
    std::vector<std::pair<Vertex, Vertex>> prec;
    for (const auto& [i, fi] : successor) {
        prec.emplace_back(i, fi);
        for (Vertex j : g.neighbors(fi))
            if (j != i) prec.emplace_back(i, j);
    }
    return layers_from_constraints(g.size(), prec);
}

std::optional<std::vector<int>> layers_from_gflow(const OpenGraph& g,
                                                  const std::map<Vertex, VertexList>& corrector) {
    std::vector<std::pair<Vertex, Vertex>> prec;
    for (const auto& [i, set] : corrector) {
        for (Vertex j : set) prec.emplace_back(i, j);
        for (Vertex j : g.odd_neighborhood(set))
            if (j != i) prec.emplace_back(i, j);
    }
    return layers_from_constraints(g.size(), prec);
}

PathCover path_cover_from_flow(const OpenGraph& g, const Flow& f) {
    if (g.inputs().size() != g.outputs().size())
        throw ParameterError("path cover needs |I| = |O|");
    auto rep = verify_flow(g, f);
    if (!rep.ok) throw ParameterError("path cover needs a verified flow: " + rep.summary(g));
    PathCover pc;
    pc.path_of.assign(g.size(), -1);
    for (Vertex i : g.inputs()) {
        VertexList path;
        Vertex cur = i;
        int id = static_cast<int>(pc.paths.size());
        while (true) {
            if (pc.path_of[cur] != -1)
                throw InvariantError("path cover: vertex visited twice");
            pc.path_of[cur] = id;
            path.push_back(cur);
            if (g.is_output(cur)) break;
            cur = f.successor.at(cur);
        }
        pc.paths.push_back(std::move(path));
    }
    for (Vertex v = 0; v < g.size(); ++v)
        if (pc.path_of[v] == -1) throw InvariantError("path cover: vertex not covered");
    return pc;
}

} // namespace mbqc
