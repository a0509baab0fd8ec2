#include "mbqc/generators.hpp"

#include <algorithm>
#include <random>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

using Edge = std::pair<std::string, std::string>;

std::string iname(int j) { return "i" + std::to_string(j); }
std::string vname(int j) { return "v" + std::to_string(j); }

void require_family_params(int n, int m) {
    if (n < 2) throw ParameterError("family needs at least two inputs");
    if (m < 2 * n + 1)
        throw ParameterError("family with " + std::to_string(n) +
                             " inputs needs at least " + std::to_string(2 * n + 1) +
                             " vertices");
}

struct Skeleton {
    std::vector<std::string> names;
    std::vector<Edge> edges;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

// Inputs i1..in, internals and outputs v1..vm'. A chain v(n)-v(n+1)-...-vm'
// hangs off output vn; i1..i(n-2) attach to v1..v(n-2); i(n-1) attaches to
// the chain end vm'. That leaves i(n) and v(n-1) isolated.
Skeleton hc_skeleton(int n, int m) {
    require_family_params(n, m);
    int mp = m - n;
    Skeleton sk;
    for (int j = 1; j <= n; ++j) sk.names.push_back(iname(j));
    for (int j = 1; j <= mp; ++j) sk.names.push_back(vname(j));
    for (int j = 1; j <= n - 2; ++j) sk.edges.push_back({iname(j), vname(j)});
    for (int j = 0; j <= mp - n - 1; ++j)
        sk.edges.push_back({vname(n + j), vname(n + j + 1)});
    sk.edges.push_back({iname(n - 1), vname(mp)});
    for (int j = 1; j <= n; ++j) sk.inputs.push_back(iname(j));
    for (int j = 1; j <= n; ++j) sk.outputs.push_back(vname(j));
    return sk;
}

OpenGraph graph_of(const Skeleton& sk) {
    return OpenGraph(sk.names, sk.edges, sk.inputs, sk.outputs);
}

Flow checked_flow(const OpenGraph& g, std::map<Vertex, Vertex> successor) {
    auto layers = layers_from_flow(g, successor);
    if (!layers) throw InvariantError("generated successor map has cyclic constraints");
    Flow f{std::move(successor), std::move(*layers)};
    if (!verify_flow(g, f).ok) throw InvariantError("generated flow witness does not verify");
    return f;
}

Gflow checked_gflow(const OpenGraph& g, std::map<Vertex, VertexList> corrector) {
    auto layers = layers_from_gflow(g, corrector);
    if (!layers) throw InvariantError("generated correction sets have cyclic constraints");
    Gflow gf{std::move(corrector), std::move(*layers)};
    if (!verify_gflow(g, gf).ok)
        throw InvariantError("generated gflow witness does not verify");
    return gf;
}

} // namespace

FamilyInstance gen_hc(int n, int m) {
    FamilyInstance inst{graph_of(hc_skeleton(n, m)), std::nullopt, std::nullopt,
                        "sparse seed family; no flow, no gflow"};
    return inst;
}

FamilyInstance gen_hn(int n, int m) {
    OpenGraph g = graph_of(hc_skeleton(n, m)).complement();
    int mp = m - n;
    std::map<Vertex, VertexList> corrector;
    auto set = [&](const std::string& who, std::vector<std::string> names) {
        VertexList vs;
        for (const std::string& s : names) vs.push_back(g.vertex(s));
        std::sort(vs.begin(), vs.end());
        corrector[g.vertex(who)] = std::move(vs);
    };
    for (int j = 1; j <= n - 2; ++j) set(iname(j), {vname(j), vname(n - 1)});
    set(iname(n - 1), {vname(mp - 1), vname(mp)});
    set(iname(n), {vname(mp)});
    for (int j = n + 1; j <= mp; ++j) set(vname(j), {vname(j - 2), vname(j - 1)});
    Gflow gf = checked_gflow(g, std::move(corrector));
    return {std::move(g), std::nullopt, std::move(gf),
            "dense complement family; gflow but no flow"};
}

FamilyInstance gen_hprime(int n, int m) {
    Skeleton sk = hc_skeleton(n, m);
    int mp = m - n;
    sk.names.push_back("y");
    for (int j = 1; j <= n; ++j) sk.edges.push_back({iname(j), "y"});
    for (int j = 1; j <= mp; ++j) sk.edges.push_back({vname(j), "y"});
    OpenGraph g = graph_of(sk);

    std::map<Vertex, Vertex> successor;
    for (int j = 1; j <= n - 2; ++j) successor[g.vertex(iname(j))] = g.vertex(vname(j));
    successor[g.vertex(iname(n - 1))] = g.vertex(vname(mp));
    successor[g.vertex(iname(n))] = g.vertex("y");
    for (int j = n + 1; j <= mp; ++j)
        successor[g.vertex(vname(j))] = g.vertex(vname(j - 1));
    successor[g.vertex("y")] = g.vertex(vname(n - 1));
    Flow f = checked_flow(g, std::move(successor));
    return {std::move(g), std::move(f), std::nullopt,
            "seed family plus a hub; the hub restores flow"};
}

FamilyInstance gen_linear_cluster(int m) {
    if (m < 1) throw ParameterError("a path needs at least one vertex");
    std::vector<std::string> names;
    std::vector<Edge> edges;
    for (int j = 0; j < m; ++j) names.push_back("q" + std::to_string(j));
    for (int j = 0; j + 1 < m; ++j) edges.push_back({names[j], names[j + 1]});
    OpenGraph g(names, edges, {names.front()}, {names.back()});
    std::map<Vertex, Vertex> successor;
    for (int j = 0; j + 1 < m; ++j) successor[g.vertex(names[j])] = g.vertex(names[j + 1]);
    Flow f = checked_flow(g, std::move(successor));
    return {std::move(g), std::move(f), std::nullopt, "path cluster"};
}

FamilyInstance gen_random_flow_graph(int n, int m, std::uint64_t seed) {
    if (n < 1) throw ParameterError("need at least one path");
    if (m < n) throw ParameterError("need at least one vertex per path");
    std::mt19937_64 rng(seed);

    // Path p owns a consecutive index block; the first vertex is its input,
    // the last its output, and the layer counts steps to the output.
    std::vector<int> length(n, 1);
    std::uniform_int_distribution<int> pick_path(0, n - 1);
    for (int extra = 0; extra < m - n; ++extra) ++length[pick_path(rng)];

    std::vector<std::string> names;
    std::vector<Edge> edges;
    std::vector<std::string> inputs, outputs;
    std::vector<int> layer(m), head(m, 0);
    std::vector<int> start(n);
    int at = 0;
    for (int p = 0; p < n; ++p) {
        start[p] = at;
        for (int j = 0; j < length[p]; ++j) {
            names.push_back("q" + std::to_string(at + j));
            layer[at + j] = length[p] - 1 - j;
        }
        head[at] = 1;
        inputs.push_back(names[at]);
        outputs.push_back(names[at + length[p] - 1]);
        for (int j = 0; j + 1 < length[p]; ++j)
            edges.push_back({names[at + j], names[at + j + 1]});
        at += length[p];
    }

    // An extra edge {u, v} keeps the path flow valid when neither endpoint
    // sits above the other's predecessor, so accept it only then.
    std::vector<int> path_of(m);
    for (int p = 0; p < n; ++p)
        for (int j = 0; j < length[p]; ++j) path_of[start[p] + j] = p;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int u = 0; u < m; ++u) {
        for (int v = u + 1; v < m; ++v) {
            if (path_of[u] == path_of[v] && v == u + 1) continue; // already a path edge
            bool ok_u = head[u] || layer[v] <= layer[u];
            bool ok_v = head[v] || layer[u] <= layer[v];
            if (!ok_u || !ok_v) continue;
            if (coin(rng)) edges.push_back({names[u], names[v]});
        }
    }

    OpenGraph g(names, edges, inputs, outputs);
    std::map<Vertex, Vertex> successor;
    for (int p = 0; p < n; ++p)
        for (int j = 0; j + 1 < length[p]; ++j)
            successor[g.vertex(names[start[p] + j])] = g.vertex(names[start[p] + j + 1]);
    Flow f = checked_flow(g, std::move(successor));
    return {std::move(g), std::move(f), std::nullopt, "random layered flow graph"};
}

} // namespace mbqc
