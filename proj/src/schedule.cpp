#include "mbqc/schedule.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "mbqc/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbqc {

namespace {

constexpr char kUntouched = 0;
constexpr char kLive = 1;
constexpr char kGone = 2;

std::vector<char> initial_states(const OpenGraph& g) {
    std::vector<char> st(g.size(), kUntouched);
    for (Vertex i : g.inputs()) st[i] = kLive;
    return st;
}

void require_measurement_order(const OpenGraph& g, const VertexList& order) {
    std::vector<char> seen(g.size(), 0);
    for (Vertex v : order) {
        if (v >= g.size()) throw IdentifierError("order names a vertex outside the graph");
        if (g.is_output(v))
            throw ParameterError("order contains output '" + g.name(v) + "'");
        if (seen[v]) throw ParameterError("order repeats '" + g.name(v) + "'");
        seen[v] = 1;
    }
    if (order.size() != g.non_outputs().size())
        throw ParameterError("order must cover every non-output exactly once");
}

// Incremental schedule construction shared by the lazy and greedy drivers.
struct Builder {
    const OpenGraph& g;
    std::vector<char> st;
    std::vector<char> edge_done;
    Schedule s;
    int live = 0;

    explicit Builder(const OpenGraph& graph)
        : g(graph), st(initial_states(graph)), edge_done(graph.edges().size(), 0) {
        live = static_cast<int>(g.inputs().size());
        s.initial_live = live;
    }

    std::size_t edge_index(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        const auto& es = g.edges();
        auto it = std::lower_bound(es.begin(), es.end(), std::make_pair(u, v));
        if (it == es.end() || *it != std::make_pair(u, v))
            throw InvariantError("schedule touched a non-edge");
        return static_cast<std::size_t>(it - es.begin());
    }

    void emit(Event ev) {
        if (ev.kind == EventKind::Prepare) ++live;
        if (ev.kind == EventKind::Discard) --live;
        s.events.push_back(ev);
        s.live_profile.push_back(live);
    }

    int preps_needed(Vertex w) const {
        int k = st[w] == kUntouched ? 1 : 0;
        for (Vertex u : g.neighbors(w))
            if (st[u] == kUntouched) ++k;
        return k;
    }

    void block(Vertex w) {
        if (st[w] == kUntouched) {
            st[w] = kLive;
            emit({EventKind::Prepare, w});
        }
        for (Vertex u : g.neighbors(w)) {
            if (st[u] == kUntouched) {
                st[u] = kLive;
                emit({EventKind::Prepare, u});
            }
        }
        for (Vertex u : g.neighbors(w)) {
            std::size_t e = edge_index(w, u);
            if (!edge_done[e]) {
                edge_done[e] = 1;
                emit({EventKind::Entangle, std::min(w, u), std::max(w, u)});
            }
        }
        emit({EventKind::Measure, w});
        st[w] = kGone;
        emit({EventKind::Discard, w});
    }

    void finish() {
        for (Vertex v = 0; v < g.size(); ++v) {
            if (st[v] == kUntouched) {
                st[v] = kLive;
                emit({EventKind::Prepare, v});
            }
        }
        const auto& es = g.edges();
        for (std::size_t e = 0; e < es.size(); ++e) {
            if (!edge_done[e]) {
                edge_done[e] = 1;
                emit({EventKind::Entangle, es[e].first, es[e].second});
            }
        }
    }
};

void require_layer_map(const OpenGraph& g, const std::vector<int>& layers) {
    if (layers.size() != g.size())
        throw ParameterError("layer map must cover every vertex");
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.is_output(v)) {
            if (layers[v] != 0)
                throw ParameterError("output '" + g.name(v) + "' must sit at layer 0");
        } else if (layers[v] < 1) {
            throw ParameterError("non-output '" + g.name(v) + "' must sit above layer 0");
        }
    }
}

// Non-outputs grouped by layer, highest layer first, each block in canonical
// vertex order. Any interleaving of a later block before an earlier one
// would measure a vertex before one it depends on.
std::vector<VertexList> layer_blocks(const OpenGraph& g, const std::vector<int>& layers) {
    std::map<int, VertexList, std::greater<int>> by_layer;
    for (Vertex v : g.non_outputs()) by_layer[layers[v]].push_back(v);
    std::vector<VertexList> blocks;
    for (auto& [l, vs] : by_layer) blocks.push_back(std::move(vs));
    return blocks;
}

// Depth-first minimum over linear extensions. Counters only; the witness
// schedule is rebuilt from the best order afterwards. Subtrees whose peak
// already matches the incumbent cannot strictly improve and are cut.
struct ExactSearch {
    const OpenGraph& g;
    const std::vector<VertexList>& blocks;
    std::vector<char> st;
    std::vector<char> used;
    VertexList current;
    int live = 0;
    int peak = 0;
    int final_floor = 0; // live count after the last block: |O|
    int best = std::numeric_limits<int>::max();
    VertexList best_order;

    ExactSearch(const OpenGraph& graph, const std::vector<VertexList>& bs)
        : g(graph), blocks(bs), st(initial_states(graph)), used(graph.size(), 0) {
        live = static_cast<int>(g.inputs().size());
        peak = live;
        final_floor = static_cast<int>(g.outputs().size());
    }

    int apply(Vertex w, VertexList& prepped) {
        if (st[w] == kUntouched) prepped.push_back(w);
        for (Vertex u : g.neighbors(w))
            if (st[u] == kUntouched) prepped.push_back(u);
        for (Vertex u : prepped) st[u] = kLive;
        st[w] = kGone;
        int block_peak = live + static_cast<int>(prepped.size());
        live = block_peak - 1;
        return block_peak;
    }

    void undo(Vertex w, const VertexList& prepped) {
        st[w] = kLive;
        for (Vertex u : prepped) st[u] = kUntouched;
        live = live + 1 - static_cast<int>(prepped.size());
    }

    void dfs(std::size_t bi, std::size_t left_in_block) {
        if (peak >= best) return;
        if (bi == blocks.size()) {
            int value = std::max(peak, final_floor);
            if (value < best) {
                best = value;
                best_order = current;
            }
            return;
        }
        if (left_in_block == 0) {
            std::size_t next = bi + 1;
            dfs(next, next < blocks.size() ? blocks[next].size() : 0);
            return;
        }
        for (Vertex w : blocks[bi]) {
            if (used[w]) continue;
            used[w] = 1;
            VertexList prepped;
            int block_peak = apply(w, prepped);
            int saved_peak = peak;
            peak = std::max(peak, block_peak);
            current.push_back(w);
            dfs(bi, left_in_block - 1);
            current.pop_back();
            peak = saved_peak;
            undo(w, prepped);
            used[w] = 0;
        }
    }
};

ResidencyResult exact_impl(const OpenGraph& g, const std::vector<int>& layers,
                           std::size_t cap, bool parallel) {
    if (g.size() > cap)
        throw ParameterError("graph has " + std::to_string(g.size()) +
                             " vertices, above the exhaustive-search cap of " +
                             std::to_string(cap));
    require_layer_map(g, layers);
    auto blocks = layer_blocks(g, layers);

    int best = std::numeric_limits<int>::max();
    VertexList best_order;

    bool split = parallel && !blocks.empty() && blocks.front().size() > 1;
#ifndef _OPENMP
    split = false;
#endif
    if (split) {
        const VertexList& first = blocks.front();
        std::vector<int> branch_best(first.size(), std::numeric_limits<int>::max());
        std::vector<VertexList> branch_order(first.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::size_t i = 0; i < first.size(); ++i) {
            ExactSearch search(g, blocks);
            Vertex w = first[i];
            search.used[w] = 1;
            VertexList prepped;
            int block_peak = search.apply(w, prepped);
            search.peak = std::max(search.peak, block_peak);
            search.current.push_back(w);
            search.dfs(0, first.size() - 1);
            branch_best[i] = search.best;
            branch_order[i] = std::move(search.best_order);
        }
        for (std::size_t i = 0; i < first.size(); ++i) {
            if (branch_best[i] < best) {
                best = branch_best[i];
                best_order = std::move(branch_order[i]);
            }
        }
    } else {
        ExactSearch search(g, blocks);
        search.dfs(0, blocks.empty() ? 0 : blocks.front().size());
        best = search.best;
        best_order = std::move(search.best_order);
    }

    if (best == std::numeric_limits<int>::max())
        throw InvariantError("exhaustive search visited no complete order");
    Schedule s = lazy_schedule(g, best_order);
    int check = residency_max(s);
    if (check != best)
        throw InvariantError("witness schedule residency disagrees with the search");
    return {best, std::move(best_order), std::move(s.live_profile)};
}

} // namespace

int residency_max(const Schedule& s) {
    int r = s.initial_live;
    for (int x : s.live_profile) r = std::max(r, x);
    return r;
}

Schedule lazy_schedule(const OpenGraph& g, const VertexList& order) {
    require_measurement_order(g, order);
    Builder b(g);
    for (Vertex w : order) b.block(w);
    b.finish();
    return std::move(b.s);
}

Schedule eager_schedule(const OpenGraph& g, const VertexList& order) {
    require_measurement_order(g, order);
    Builder b(g);
    for (Vertex v = 0; v < g.size(); ++v) {
        if (b.st[v] == kUntouched) {
            b.st[v] = kLive;
            b.emit({EventKind::Prepare, v});
        }
    }
    for (const auto& [u, v] : g.edges()) {
        b.edge_done[b.edge_index(u, v)] = 1;
        b.emit({EventKind::Entangle, u, v});
    }
    for (Vertex w : order) {
        b.emit({EventKind::Measure, w});
        b.st[w] = kGone;
        b.emit({EventKind::Discard, w});
    }
    return std::move(b.s);
}

std::optional<std::string> validate_schedule(const OpenGraph& g, const Schedule& s) {
    auto fail = [&](std::size_t at, const std::string& msg) {
        return "event " + std::to_string(at + 1) + ": " + msg;
    };
    if (s.initial_live != static_cast<int>(g.inputs().size()))
        return "initial live count must equal the number of inputs";
    if (s.live_profile.size() != s.events.size())
        return "live profile length must match the event list";

    std::vector<char> st = initial_states(g);
    std::vector<char> edge_done(g.edges().size(), 0);
    std::vector<char> measured(g.size(), 0);
    std::optional<Vertex> pending_discard;
    int live = static_cast<int>(g.inputs().size());

    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const Event& ev = s.events[i];
        if (ev.a >= g.size() || (ev.kind == EventKind::Entangle && ev.b >= g.size()))
            return fail(i, "names a vertex outside the graph");
        if (pending_discard &&
            (ev.kind != EventKind::Discard || ev.a != *pending_discard))
            return fail(i, "measurement of '" + g.name(*pending_discard) +
                               "' must be followed by its discard");
        switch (ev.kind) {
        case EventKind::Prepare:
            if (g.is_input(ev.a))
                return fail(i, "input '" + g.name(ev.a) + "' is never prepared");
            if (st[ev.a] != kUntouched)
                return fail(i, "'" + g.name(ev.a) + "' prepared twice");
            st[ev.a] = kLive;
            ++live;
            break;
        case EventKind::Entangle: {
            if (!g.has_edge(ev.a, ev.b))
                return fail(i, "no edge between '" + g.name(ev.a) + "' and '" +
                                   g.name(ev.b) + "'");
            if (st[ev.a] != kLive || st[ev.b] != kLive)
                return fail(i, "entangling a vertex that is not live");
            const auto& es = g.edges();
            auto key = std::make_pair(std::min(ev.a, ev.b), std::max(ev.a, ev.b));
            std::size_t e = static_cast<std::size_t>(
                std::lower_bound(es.begin(), es.end(), key) - es.begin());
            if (edge_done[e]) return fail(i, "edge applied twice");
            edge_done[e] = 1;
            break;
        }
        case EventKind::Measure:
            if (g.is_output(ev.a))
                return fail(i, "output '" + g.name(ev.a) + "' must not be measured");
            if (measured[ev.a]) return fail(i, "'" + g.name(ev.a) + "' measured twice");
            if (st[ev.a] != kLive)
                return fail(i, "measuring '" + g.name(ev.a) + "' while not live");
            for (Vertex u : g.neighbors(ev.a)) {
                const auto& es = g.edges();
                auto key = std::make_pair(std::min(ev.a, u), std::max(ev.a, u));
                std::size_t e = static_cast<std::size_t>(
                    std::lower_bound(es.begin(), es.end(), key) - es.begin());
                if (!edge_done[e])
                    return fail(i, "measuring '" + g.name(ev.a) +
                                       "' before applying its edge to '" + g.name(u) + "'");
            }
            measured[ev.a] = 1;
            pending_discard = ev.a;
            break;
        case EventKind::Discard:
            if (!pending_discard || *pending_discard != ev.a)
                return fail(i, "discard without a matching measurement");
            pending_discard.reset();
            st[ev.a] = kGone;
            --live;
            break;
        }
        if (s.live_profile[i] != live)
            return fail(i, "live profile records " + std::to_string(s.live_profile[i]) +
                               " but " + std::to_string(live) + " qubits are live");
    }
    if (pending_discard)
        return "trailing measurement of '" + g.name(*pending_discard) +
               "' is never discarded";
    for (Vertex v : g.non_outputs())
        if (!measured[v]) return "'" + g.name(v) + "' is never measured";
    for (Vertex v : g.outputs())
        if (st[v] != kLive) return "output '" + g.name(v) + "' is not live at the end";
    for (std::size_t e = 0; e < g.edges().size(); ++e)
        if (!edge_done[e])
            return "edge '" + g.name(g.edges()[e].first) + "-" +
                   g.name(g.edges()[e].second) + "' is never applied";
    return std::nullopt;
}

LiveSets compute_live_sets(const OpenGraph& g, const VertexList& measured_prefix,
                           Vertex w, TouchedRule rule) {
    if (w >= g.size()) throw IdentifierError("vertex outside the graph");
    if (g.is_output(w)) throw ParameterError("'" + g.name(w) + "' is an output");
    std::vector<char> in_prefix(g.size(), 0);
    for (Vertex v : measured_prefix) {
        if (v >= g.size()) throw IdentifierError("prefix names a vertex outside the graph");
        if (g.is_output(v))
            throw ParameterError("prefix contains output '" + g.name(v) + "'");
        if (in_prefix[v]) throw ParameterError("prefix repeats '" + g.name(v) + "'");
        in_prefix[v] = 1;
    }
    if (in_prefix[w]) throw ParameterError("'" + g.name(w) + "' is already measured");

    LiveSets ls;
    ls.w = w;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (in_prefix[v]) ls.measured.push_back(v);
        else if (v != w) ls.unmeasured.push_back(v);
    }
    std::vector<char> required(g.size(), 0);
    for (Vertex u : g.neighbors(w)) {
        if (!in_prefix[u] && u != w) {
            ls.unmeasured_neighbors.push_back(u);
            required[u] = 1;
        }
    }
    for (Vertex v : ls.unmeasured) {
        if (g.is_input(v)) {
            ls.unmeasured_inputs.push_back(v);
            required[v] = 1;
        }
    }
    bool w_touched = false;
    for (Vertex u : g.neighbors(w))
        if (in_prefix[u]) w_touched = true;
    for (Vertex v : ls.unmeasured) {
        bool touched = false;
        if (rule == TouchedRule::PerVertex) {
            for (Vertex u : g.neighbors(v))
                if (in_prefix[u]) touched = true;
        } else {
            touched = w_touched;
        }
        if (touched) {
            ls.touched.push_back(v);
            required[v] = 1;
        }
    }
    for (Vertex v = 0; v < g.size(); ++v)
        if (required[v]) ls.required_live.push_back(v);
    return ls;
}

ResidencyResult min_qr_flow(const OpenGraph& g, const Flow& f) {
    VerifyReport rep = verify_flow(g, f);
    if (!rep.ok) throw ParameterError("flow witness does not verify: " + rep.summary(g));
    if (g.inputs().size() != g.outputs().size())
        throw ParameterError("residency formula needs as many inputs as outputs");
    VertexList order = g.non_outputs();
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return f.layer[a] > f.layer[b];
    });
    Schedule s = lazy_schedule(g, order);
    int r = residency_max(s);
    int n = static_cast<int>(g.inputs().size());
    int expected = std::min(n + 1, static_cast<int>(g.size()));
    if (r != expected)
        throw InvariantError("flow schedule reached " + std::to_string(r) +
                             " live qubits, expected " + std::to_string(expected));
    return {r, std::move(order), std::move(s.live_profile)};
}

ResidencyResult min_qr_greedy(const OpenGraph& g, const std::vector<int>& layers) {
    require_layer_map(g, layers);
    auto blocks = layer_blocks(g, layers);
    Builder b(g);
    VertexList order;
    for (const VertexList& block : blocks) {
        std::vector<char> done(block.size(), 0);
        for (std::size_t round = 0; round < block.size(); ++round) {
            std::size_t pick = block.size();
            int pick_cost = std::numeric_limits<int>::max();
            for (std::size_t i = 0; i < block.size(); ++i) {
                if (done[i]) continue;
                int cost = b.preps_needed(block[i]);
                if (cost < pick_cost) {
                    pick_cost = cost;
                    pick = i;
                }
            }
            done[pick] = 1;
            order.push_back(block[pick]);
            b.block(block[pick]);
        }
    }
    b.finish();
    int r = residency_max(b.s);
    return {r, std::move(order), std::move(b.s.live_profile)};
}

ResidencyResult min_qr_exact(const OpenGraph& g, const std::vector<int>& layers,
                             std::size_t cap) {
    return exact_impl(g, layers, cap, true);
}

ResidencyResult min_qr_exact_serial(const OpenGraph& g, const std::vector<int>& layers,
                                    std::size_t cap) {
    return exact_impl(g, layers, cap, false);
}

int degree_lower_bound(const OpenGraph& g) {
    if (g.non_outputs().empty()) return 0;
    int best = std::numeric_limits<int>::max();
    for (Vertex v : g.non_outputs())
        best = std::min(best, static_cast<int>(g.degree(v)) + 1);
    return best;
}

} // namespace mbqc
