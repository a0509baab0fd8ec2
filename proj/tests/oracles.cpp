#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "mbqc/errors.hpp"

namespace mbqc::test {

namespace {

void gate_x_at(State& amp, std::size_t bit) {
    for (std::size_t i = 0; i < amp.size(); ++i)
        if (!(i & bit)) std::swap(amp[i], amp[i | bit]);
}

void gate_z_at(State& amp, std::size_t bit) {
    for (std::size_t i = 0; i < amp.size(); ++i)
        if (i & bit) amp[i] = -amp[i];
}

} // namespace

State dense_reference_run(const MeasurementPattern& p, const VertexList& order,
                          const Corrections& c, std::uint64_t branch_bits) {
    p.validate();
    const OpenGraph& g = p.graph;
    std::size_t m = g.size();
    if (m > 20) throw ParameterError("dense reference handles small graphs only");

    const VertexList& ins = g.inputs();
    State amp(std::size_t{1} << m);
    double plus = std::pow(2.0, -static_cast<double>(m - ins.size()) / 2.0);
    for (std::size_t idx = 0; idx < amp.size(); ++idx) {
        std::size_t in_bits = 0;
        for (std::size_t k = 0; k < ins.size(); ++k)
            if ((idx >> ins[k]) & 1) in_bits |= std::size_t{1} << k;
        Amplitude base = p.input_state.empty()
                             ? Amplitude(std::pow(2.0, -static_cast<double>(ins.size()) / 2.0), 0.0)
                             : p.input_state[in_bits];
        amp[idx] = base * plus;
    }
    {
        long double n2 = 0.0L;
        for (const Amplitude& a : amp) n2 += std::norm(a);
        double n = std::sqrt(static_cast<double>(n2));
        for (Amplitude& a : amp) a /= n;
    }

    for (const auto& [u, v] : g.edges()) {
        std::size_t bu = std::size_t{1} << u, bv = std::size_t{1} << v;
        for (std::size_t i = 0; i < amp.size(); ++i)
            if ((i & bu) && (i & bv)) amp[i] = -amp[i];
    }

    const VertexList& nc = g.non_outputs();
    for (Vertex w : order) {
        std::size_t rank = static_cast<std::size_t>(
            std::lower_bound(nc.begin(), nc.end(), w) - nc.begin());
        int s = static_cast<int>((branch_bits >> rank) & 1);
        double alpha = p.angles[w]->radians();
        Amplitude phase = std::polar(1.0, -alpha);
        if (s) phase = -phase;

        // Project onto (<0| + phase <1|)/sqrt(2) on wire w, parking the
        // result in the bit=0 slice.
        std::size_t bw = std::size_t{1} << w;
        for (std::size_t i = 0; i < amp.size(); ++i) {
            if (i & bw) continue;
            amp[i] = (amp[i] + phase * amp[i | bw]) / std::sqrt(2.0);
            amp[i | bw] = 0.0;
        }
        long double n2 = 0.0L;
        for (const Amplitude& a : amp) n2 += std::norm(a);
        if (n2 < 1e-18L) throw ParameterError("dense reference hit a dead branch");
        double n = std::sqrt(static_cast<double>(n2));
        for (Amplitude& a : amp) a /= n;

        if (s) {
            for (Vertex t : c.x_targets[w]) gate_x_at(amp, std::size_t{1} << t);
            for (Vertex t : c.z_targets[w]) gate_z_at(amp, std::size_t{1} << t);
        }
    }

    const VertexList& outs = g.outputs();
    State out(std::size_t{1} << outs.size(), Amplitude(0.0, 0.0));
    for (std::size_t idx = 0; idx < amp.size(); ++idx) {
        bool clean = true;
        for (Vertex w : nc)
            if ((idx >> w) & 1) clean = false;
        if (!clean) continue;
        std::size_t j = 0;
        for (std::size_t k = 0; k < outs.size(); ++k)
            if ((idx >> outs[k]) & 1) j |= std::size_t{1} << k;
        out[j] = amp[idx];
    }
    return out;
}

bool brute_has_flow(const OpenGraph& g) {
    const VertexList& domain = g.non_outputs();
    if (domain.empty()) return true;

    std::vector<VertexList> choices;
    for (Vertex i : domain) {
        VertexList cand;
        for (Vertex u : g.neighbors(i))
            if (!g.is_input(u)) cand.push_back(u);
        if (cand.empty()) return false;
        choices.push_back(std::move(cand));
    }

    std::vector<std::size_t> pick(domain.size(), 0);
    while (true) {
        // acyclicity of "i before j" constraints via Kahn
        std::size_t mv = g.size();
        std::vector<std::vector<std::size_t>> after(mv);
        std::vector<int> indeg(mv, 0);
        for (std::size_t k = 0; k < domain.size(); ++k) {
            Vertex i = domain[k];
            Vertex fi = choices[k][pick[k]];
            auto add = [&](Vertex jj) {
                after[i].push_back(jj);
                ++indeg[jj];
            };
            add(fi);
            for (Vertex j : g.neighbors(fi))
                if (j != i) add(j);
        }
        std::queue<Vertex> q;
        for (Vertex v = 0; v < mv; ++v)
            if (indeg[v] == 0) q.push(v);
        std::size_t seen = 0;
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            ++seen;
            for (std::size_t j : after[v])
                if (--indeg[j] == 0) q.push(static_cast<Vertex>(j));
        }
        if (seen == mv) return true;

        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
        if (k == pick.size()) return false;
    }
}

bool brute_has_gflow(const OpenGraph& g) {
    std::size_t m = g.size();
    if (m > 20) throw ParameterError("brute gflow check handles small graphs only");

    std::uint32_t start = 0;
    for (Vertex v : g.outputs()) start |= std::uint32_t{1} << v;
    std::uint32_t full = m == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1;

    // Can some K inside done's non-inputs hit exactly {u} outside done?
    auto admissible = [&](std::uint32_t done, Vertex u) {
        VertexList cols;
        for (Vertex v = 0; v < m; ++v)
            if (((done >> v) & 1) && !g.is_input(v)) cols.push_back(v);
        for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << cols.size()); ++sub) {
            VertexList K;
            for (std::size_t k = 0; k < cols.size(); ++k)
                if ((sub >> k) & 1) K.push_back(cols[k]);
            VertexList odd = g.odd_neighborhood(K);
            bool good = true;
            bool hits_u = false;
            for (Vertex o : odd) {
                if ((done >> o) & 1) continue; // measured later, unconstrained
                if (o == u) hits_u = true;
                else good = false;
            }
            if (good && hits_u) return true;
        }
        return false;
    };

    std::set<std::uint32_t> visited{start};
    std::queue<std::uint32_t> q;
    q.push(start);
    while (!q.empty()) {
        std::uint32_t done = q.front();
        q.pop();
        if (done == full) return true;
        for (Vertex u = 0; u < m; ++u) {
            if ((done >> u) & 1) continue;
            std::uint32_t next = done | (std::uint32_t{1} << u);
            if (visited.count(next)) continue;
            if (!admissible(done, u)) continue;
            visited.insert(next);
            q.push(next);
        }
    }
    return false;
}

int brute_min_peak(const OpenGraph& g, const std::vector<int>& layers) {
    std::size_t m = g.size();
    std::size_t ne = g.edges().size();
    if (m > 7 || ne > 12) throw ParameterError("brute peak search handles small graphs only");

    std::uint32_t input_mask = 0, output_mask = 0;
    for (Vertex v : g.inputs()) input_mask |= std::uint32_t{1} << v;
    for (Vertex v : g.outputs()) output_mask |= std::uint32_t{1} << v;
    std::uint32_t all_vertices = (std::uint32_t{1} << m) - 1;
    std::uint32_t all_edges = ne ? (std::uint32_t{1} << ne) - 1 : 0;

    std::vector<std::uint32_t> incident(m, 0), higher(m, 0);
    for (std::size_t e = 0; e < ne; ++e) {
        incident[g.edges()[e].first] |= std::uint32_t{1} << e;
        incident[g.edges()[e].second] |= std::uint32_t{1} << e;
    }
    for (Vertex v : g.non_outputs())
        for (Vertex u : g.non_outputs())
            if (layers[u] > layers[v]) higher[v] |= std::uint32_t{1} << u;

    struct Key {
        std::uint32_t alive, gone, applied;
        bool operator<(const Key& o) const {
            return std::tie(alive, gone, applied) < std::tie(o.alive, o.gone, o.applied);
        }
    };
    Key start{input_mask, 0, 0};
    Key goal{output_mask, all_vertices & ~output_mask, all_edges};

    for (int peak = static_cast<int>(std::max(g.inputs().size(), g.outputs().size()));
         peak <= static_cast<int>(m); ++peak) {
        std::set<Key> visited{start};
        std::queue<Key> q;
        q.push(start);
        bool reached = false;
        while (!q.empty() && !reached) {
            Key s = q.front();
            q.pop();
            if (s.alive == goal.alive && s.gone == goal.gone && s.applied == goal.applied) {
                reached = true;
                break;
            }
            auto visit = [&](Key n) {
                if (std::popcount(n.alive) > peak) return;
                if (visited.insert(n).second) q.push(n);
            };
            for (Vertex v = 0; v < m; ++v) {
                std::uint32_t bit = std::uint32_t{1} << v;
                if ((input_mask & bit) || (s.alive & bit) || (s.gone & bit)) continue;
                visit({s.alive | bit, s.gone, s.applied});
            }
            for (std::size_t e = 0; e < ne; ++e) {
                std::uint32_t eb = std::uint32_t{1} << e;
                if (s.applied & eb) continue;
                std::uint32_t ub = std::uint32_t{1} << g.edges()[e].first;
                std::uint32_t vb = std::uint32_t{1} << g.edges()[e].second;
                if ((s.alive & ub) && (s.alive & vb))
                    visit({s.alive, s.gone, s.applied | eb});
            }
            for (Vertex v : g.non_outputs()) {
                std::uint32_t bit = std::uint32_t{1} << v;
                if (!(s.alive & bit)) continue;
                if ((incident[v] & s.applied) != incident[v]) continue;
                if ((higher[v] & s.gone) != higher[v]) continue;
                visit({s.alive & ~bit, s.gone | bit, s.applied});
            }
        }
        if (reached) return peak;
    }
    throw InvariantError("no valid schedule found at any peak");
}

OpenGraph graph_from_masks(int m, std::uint32_t edge_mask, std::uint32_t in_mask,
                           std::uint32_t out_mask) {
    std::vector<std::string> names;
    for (int v = 0; v < m; ++v) names.push_back("q" + std::to_string(v));
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::size_t bit = 0;
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v, ++bit)
            if ((edge_mask >> bit) & 1)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    VertexList ins, outs;
    for (int v = 0; v < m; ++v) {
        if ((in_mask >> v) & 1) ins.push_back(static_cast<Vertex>(v));
        if ((out_mask >> v) & 1) outs.push_back(static_cast<Vertex>(v));
    }
    return OpenGraph(std::move(names), std::move(edges), std::move(ins), std::move(outs));
}

} // namespace mbqc::test
