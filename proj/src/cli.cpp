#include "mbqc/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mbqc/document.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/generators.hpp"
#include "mbqc/rewrite.hpp"
#include "mbqc/schedule.hpp"
#include "mbqc/simulate.hpp"

namespace mbqc {

namespace {

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    std::istream& in;
    std::string format = "human";
    bool structured() const { return format == "structured"; }
};

ParsedDocument load(Ctx& c, const std::string& file) {
    if (file.empty() || file == "-") return parse_document(c.in);
    std::ifstream f(file);
    if (!f) throw ParameterError("cannot open '" + file + "'");
    return parse_document(f);
}

std::string join(const OpenGraph& g, const VertexList& vs, const char* sep) {
    std::string s;
    for (Vertex v : vs) {
        if (!s.empty()) s += sep;
        s += g.name(v);
    }
    return s;
}

std::string layer_text(const OpenGraph& g, const std::vector<int>& layers) {
    std::string s;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!s.empty()) s += ' ';
        s += g.name(v) + "=" + std::to_string(layers[v]);
    }
    return s;
}

std::string event_text(const OpenGraph& g, const Event& ev) {
    switch (ev.kind) {
    case EventKind::Prepare: return "Pre(" + g.name(ev.a) + ")";
    case EventKind::Entangle: return "Ent(" + g.name(ev.a) + "," + g.name(ev.b) + ")";
    case EventKind::Measure: return "M(" + g.name(ev.a) + ")";
    case EventKind::Discard: return "D(" + g.name(ev.a) + ")";
    }
    return "?";
}

void print_bounds(Ctx& c, const OpenGraph& g) {
    int n = static_cast<int>(g.inputs().size());
    int m = static_cast<int>(g.size());
    int flow_bound = std::min(n + 1, m);
    int deg_bound = degree_lower_bound(g);
    if (c.structured()) {
        c.out << "n=" << n << "\n"
              << "m=" << m << "\n"
              << "flow_bound=" << flow_bound << "\n"
              << "degree_bound=" << deg_bound << "\n";
    } else {
        c.out << m << " vertices, " << n << " inputs, " << g.outputs().size()
              << " outputs; flow graphs reach min(n+1,m) = " << flow_bound
              << " live qubits; degree lower bound " << deg_bound << "\n";
    }
}

std::string flow_text(const OpenGraph& g, const std::map<Vertex, Vertex>& successor) {
    std::string s;
    for (const auto& [i, t] : successor) {
        if (!s.empty()) s += ' ';
        s += g.name(i) + ">" + g.name(t);
    }
    return s;
}

std::string gflow_text(const OpenGraph& g, const std::map<Vertex, VertexList>& corrector) {
    std::string s;
    for (const auto& [i, set] : corrector) {
        if (!s.empty()) s += ' ';
        s += g.name(i) + ">";
        for (std::size_t k = 0; k < set.size(); ++k)
            s += (k ? "," : "") + g.name(set[k]);
    }
    return s;
}

int max_layer(const std::vector<int>& layers) {
    int top = 0;
    for (int l : layers) top = std::max(top, l);
    return top;
}

int do_flow_find(Ctx& c, const std::string& file) {
    ParsedDocument doc = load(c, file);
    print_bounds(c, doc.graph);
    auto f = find_flow(doc.graph);
    if (!f) {
        if (c.structured()) c.out << "found=false\n";
        else c.out << "no flow\n";
        return 1;
    }
    if (c.structured()) {
        c.out << "found=true\n"
              << "flow=" << flow_text(doc.graph, f->successor) << "\n"
              << "layers=" << layer_text(doc.graph, f->layer) << "\n";
    } else {
        c.out << "flow found, " << max_layer(f->layer) << " measurement rounds\n";
        for (const auto& [i, t] : f->successor)
            c.out << "  " << doc.graph.name(i) << " > " << doc.graph.name(t) << "\n";
        c.out << "layers: " << layer_text(doc.graph, f->layer) << "\n";
    }
    return 0;
}

int do_gflow_find(Ctx& c, const std::string& file) {
    ParsedDocument doc = load(c, file);
    print_bounds(c, doc.graph);
    auto gf = find_gflow(doc.graph);
    if (!gf) {
        if (c.structured()) c.out << "found=false\n";
        else c.out << "no gflow\n";
        return 1;
    }
    if (c.structured()) {
        c.out << "found=true\n"
              << "gflow=" << gflow_text(doc.graph, gf->corrector) << "\n"
              << "layers=" << layer_text(doc.graph, gf->layer) << "\n";
    } else {
        c.out << "gflow found, " << max_layer(gf->layer) << " measurement rounds\n";
        for (const auto& [i, set] : gf->corrector)
            c.out << "  " << doc.graph.name(i) << " > " << join(doc.graph, set, ",")
                  << "\n";
        c.out << "layers: " << layer_text(doc.graph, gf->layer) << "\n";
    }
    return 0;
}

int report_verification(Ctx& c, const OpenGraph& g, const VerifyReport& rep,
                        const char* kind) {
    if (rep.ok) {
        if (c.structured()) c.out << "ok=true\n";
        else c.out << kind << " witness verifies\n";
        return 0;
    }
    if (c.structured()) {
        c.out << "ok=false\n";
        for (const Violation& v : rep.violations)
            c.out << "violation=" << to_string(v.check) << ": " << v.detail << "\n";
    } else {
        c.out << kind << " witness rejected\n" << rep.summary(g);
    }
    return 1;
}

int do_flow_verify(Ctx& c, const std::string& file) {
    ParsedDocument doc = load(c, file);
    Flow f = doc.flow_witness();
    return report_verification(c, doc.graph, verify_flow(doc.graph, f), "flow");
}

int do_gflow_verify(Ctx& c, const std::string& file) {
    ParsedDocument doc = load(c, file);
    Gflow gf = doc.gflow_witness();
    return report_verification(c, doc.graph, verify_gflow(doc.graph, gf), "gflow");
}

// Flow from the document witness when present (it must verify), otherwise
// freshly found. nullopt means "report exit 1", with the reason printed.
std::optional<Flow> flow_for(Ctx& c, const ParsedDocument& doc) {
    if (doc.flow_successor) {
        Flow f = doc.flow_witness();
        VerifyReport rep = verify_flow(doc.graph, f);
        if (!rep.ok) {
            c.err << "flow witness rejected\n" << rep.summary(doc.graph);
            return std::nullopt;
        }
        return f;
    }
    auto f = find_flow(doc.graph);
    if (!f) c.err << "no flow\n";
    return f;
}

int do_paths(Ctx& c, const std::string& file) {
    ParsedDocument doc = load(c, file);
    auto f = flow_for(c, doc);
    if (!f) return 1;
    PathCover pc = path_cover_from_flow(doc.graph, *f);
    for (const VertexList& path : pc.paths) {
        if (c.structured()) c.out << "path=" << join(doc.graph, path, ",") << "\n";
        else c.out << join(doc.graph, path, " > ") << "\n";
    }
    return 0;
}

// Measurement order for scheduling: layers from the document witness or a
// fresh flow/gflow, highest layer first, canonical within a layer.
std::optional<VertexList> auto_order(Ctx& c, const ParsedDocument& doc) {
    std::optional<std::vector<int>> layers;
    if (doc.flow_successor) {
        Flow f = doc.flow_witness();
        if (!verify_flow(doc.graph, f).ok) {
            c.err << "flow witness rejected\n";
            return std::nullopt;
        }
        layers = f.layer;
    } else if (doc.gflow_corrector) {
        Gflow gf = doc.gflow_witness();
        if (!verify_gflow(doc.graph, gf).ok) {
            c.err << "gflow witness rejected\n";
            return std::nullopt;
        }
        layers = gf.layer;
    } else if (auto f = find_flow(doc.graph)) {
        layers = f->layer;
    } else if (auto gf = find_gflow(doc.graph)) {
        layers = gf->layer;
    } else {
        c.err << "no flow or gflow, so no measurement order\n";
        return std::nullopt;
    }
    VertexList order = doc.graph.non_outputs();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return (*layers)[a] > (*layers)[b]; });
    return order;
}

VertexList parse_order(const OpenGraph& g, const std::string& list) {
    VertexList order;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        std::string part =
            list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (part.empty()) throw ParameterError("empty name in order list");
        order.push_back(g.vertex(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return order;
}

int do_schedule(Ctx& c, const std::string& file, const std::string& order_arg) {
    ParsedDocument doc = load(c, file);
    VertexList order;
    if (order_arg == "auto") {
        auto got = auto_order(c, doc);
        if (!got) return 1;
        order = std::move(*got);
    } else {
        order = parse_order(doc.graph, order_arg);
    }
    Schedule s = lazy_schedule(doc.graph, order);
    if (auto bad = validate_schedule(doc.graph, s))
        throw InvariantError("generated schedule failed validation: " + *bad);
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        if (c.structured())
            c.out << "event=" << event_text(doc.graph, s.events[i])
                  << " live=" << s.live_profile[i] << "\n";
        else
            c.out << event_text(doc.graph, s.events[i]) << "  live=" << s.live_profile[i]
                  << "\n";
    }
    c.out << (c.structured() ? "peak_live=" : "peak live: ") << residency_max(s) << "\n";
    return 0;
}

std::size_t exact_cap(std::size_t from_option) {
    if (from_option > 0) return from_option;
    if (const char* env = std::getenv("MBQC_EXACT_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw ParameterError("MBQC_EXACT_CAP must be a positive integer");
    }
    return 12;
}

int do_minqr(Ctx& c, const std::string& file, bool greedy, bool exact,
             std::size_t cap_option) {
    ParsedDocument doc = load(c, file);
    print_bounds(c, doc.graph);

    std::optional<std::vector<int>> layers;
    if (doc.layers && doc.has_witness()) {
        if (doc.flow_successor && !verify_flow(doc.graph, doc.flow_witness()).ok) {
            c.err << "flow witness rejected\n";
            return 1;
        }
        if (doc.gflow_corrector && !verify_gflow(doc.graph, doc.gflow_witness()).ok) {
            c.err << "gflow witness rejected\n";
            return 1;
        }
        layers = *doc.layers;
    } else if (auto f = find_flow(doc.graph)) {
        layers = f->layer;
    } else if (auto gf = find_gflow(doc.graph)) {
        layers = gf->layer;
    } else {
        c.err << "no flow or gflow, so no measurement order to optimise over\n";
        return 1;
    }

    ResidencyResult res;
    const char* how;
    if (greedy) {
        res = min_qr_greedy(doc.graph, *layers);
        how = "greedy";
    } else {
        (void)exact; // the default
        res = min_qr_exact(doc.graph, *layers, exact_cap(cap_option));
        how = "exact";
    }
    if (c.structured()) {
        c.out << "method=" << how << "\n"
              << "value=" << res.value << "\n"
              << "order=" << join(doc.graph, res.order, ",") << "\n";
    } else {
        c.out << how << " minimum over measurement orders: " << res.value
              << " live qubits\n"
              << "order: " << join(doc.graph, res.order, ", ") << "\n";
    }
    return 0;
}

int do_classify(Ctx& c, const std::string& file) {
    ParsedDocument doc = load(c, file);
    FlowClass cls = classify_flow(doc.graph);
    if (c.structured()) c.out << "class=" << to_string(cls) << "\n";
    else c.out << to_string(cls) << "\n";
    return cls == FlowClass::None ? 1 : 0;
}

int do_rewrite(Ctx& c, const std::string& file, const std::string& vertex,
               const std::string& basis_name, const std::string& neighbor) {
    ParsedDocument doc = load(c, file);
    Vertex w = doc.graph.vertex(vertex);
    PauliBasis basis;
    if (basis_name == "X") basis = PauliBasis::X;
    else if (basis_name == "Y") basis = PauliBasis::Y;
    else if (basis_name == "Z") basis = PauliBasis::Z;
    else throw ParameterError("basis must be X, Y, or Z");
    std::optional<Vertex> b;
    if (!neighbor.empty()) b = doc.graph.vertex(neighbor);

    RewriteResult res = apply_pauli_rewrite(doc.graph, w, basis, b);
    FlowTransition tr = classify_flow_transition(doc.graph, res.graph);

    ParsedDocument out_doc{res.graph, {}, {}, {}, {}};
    for (const auto& [v, a] : doc.angles) {
        if (v == w) continue;
        out_doc.angles.emplace(res.graph.vertex(doc.graph.name(v)), a);
    }
    std::string note = "measured " + vertex + " in " + basis_name + "; byproduct:";
    if (res.byproduct.empty()) note += " none";
    for (const LocalGate& gate : res.byproduct)
        note += " " + to_string(gate.kind) + "(" + gate.vertex + ")";
    note += "\nflow class: " + to_string(tr.before) + " -> " + to_string(tr.after);
    c.out << emit_document(out_doc, note);
    return 0;
}

void print_state(Ctx& c, const OpenGraph& g, const State& state) {
    const VertexList& outs = g.outputs();
    if (c.structured()) c.out << "outputs=" << join(g, outs, ",") << "\n";
    else c.out << "output order: " << join(g, outs, " ") << "\n";
    char buf[64];
    for (std::size_t idx = 0; idx < state.size(); ++idx) {
        std::string bits;
        for (std::size_t k = 0; k < outs.size(); ++k)
            bits += ((idx >> k) & 1) ? '1' : '0';
        std::snprintf(buf, sizeof(buf), "%+.6f%+.6fi", state[idx].real(),
                      state[idx].imag());
        if (c.structured())
            c.out << "amp=" << (bits.empty() ? "-" : bits) << "," << buf << "\n";
        else
            c.out << "  |" << bits << "> " << buf << "\n";
    }
}

int do_simulate(Ctx& c, const std::string& file, const std::string& branches,
                std::uint64_t seed, bool check_det, std::size_t cap, double tolerance,
                bool no_corrections) {
    ParsedDocument doc = load(c, file);
    MeasurementPattern pattern = doc.to_pattern();
    const OpenGraph& g = doc.graph;

    Corrections corr = Corrections::none(g);
    std::string corr_source = "none";
    std::optional<std::vector<int>> layers;
    if (no_corrections) {
        // keep the witness order if there is one, just drop the corrections
        if (doc.flow_successor) layers = doc.flow_witness().layer;
        else if (doc.gflow_corrector) layers = doc.gflow_witness().layer;
        else if (auto f = find_flow(g)) layers = f->layer;
        else if (auto gf = find_gflow(g)) layers = gf->layer;
    } else if (doc.flow_successor) {
        Flow f = doc.flow_witness();
        if (!verify_flow(g, f).ok) {
            c.err << "flow witness rejected\n";
            return 1;
        }
        corr = Corrections::from_flow(g, f);
        corr_source = "flow witness";
        layers = f.layer;
    } else if (doc.gflow_corrector) {
        Gflow gf = doc.gflow_witness();
        if (!verify_gflow(g, gf).ok) {
            c.err << "gflow witness rejected\n";
            return 1;
        }
        corr = Corrections::from_gflow(g, gf);
        corr_source = "gflow witness";
        layers = gf.layer;
    } else if (auto f = find_flow(g)) {
        corr = Corrections::from_flow(g, *f);
        corr_source = "found flow";
        layers = f->layer;
    } else if (auto gf = find_gflow(g)) {
        corr = Corrections::from_gflow(g, *gf);
        corr_source = "found gflow";
        layers = gf->layer;
    }

    VertexList order = g.non_outputs();
    if (layers)
        std::stable_sort(order.begin(), order.end(),
                         [&](Vertex a, Vertex b) { return (*layers)[a] > (*layers)[b]; });
    Schedule s = lazy_schedule(g, order);

    if (c.structured()) c.out << "corrections=" << corr_source << "\n";
    else c.out << "corrections: " << corr_source << "\n";

    if (check_det) {
        DeterminismReport rep = branch_determinism_check(pattern, s, corr, tolerance, cap);
        if (c.structured())
            c.out << "branches=" << rep.branches << "\n"
                  << "max_distance=" << rep.max_distance << "\n"
                  << "deterministic=" << (rep.deterministic ? "true" : "false") << "\n";
        else
            c.out << rep.branches << " branches, max distance " << rep.max_distance
                  << (rep.deterministic ? ": deterministic\n" : ": NOT deterministic\n");
        return rep.deterministic ? 0 : 1;
    }

    if (branches == "all") {
        std::size_t k = g.non_outputs().size();
        if (k > cap)
            throw ParameterError("pattern measures " + std::to_string(k) +
                                 " vertices, above the branch-enumeration cap of " +
                                 std::to_string(cap));
        RunResult ref = execute(pattern, s, corr, OutcomePolicy::forced_bits(0));
        double worst = 0.0;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
            RunResult r = execute(pattern, s, corr, OutcomePolicy::forced_bits(bits));
            double d = state_distance(ref.output_state, r.output_state);
            worst = std::max(worst, d);
            std::string word;
            for (std::size_t i = 0; i < k; ++i) word += ((bits >> i) & 1) ? '1' : '0';
            if (c.structured())
                c.out << "branch=" << (word.empty() ? "-" : word) << " distance=" << d
                      << "\n";
            else
                c.out << "branch " << (word.empty() ? "-" : word) << ": distance " << d
                      << "\n";
        }
        if (c.structured()) c.out << "max_distance=" << worst << "\n";
        else c.out << "max distance " << worst << "\n";
        return worst <= tolerance ? 0 : 1;
    }

    RunResult r = execute(pattern, s, corr, OutcomePolicy::random(seed));
    if (c.structured()) {
        for (const auto& [v, bit] : r.outcomes)
            c.out << "outcome=" << g.name(v) << "=" << bit << "\n";
        c.out << "peak_live=" << r.peak_live << "\n";
    } else {
        c.out << "outcomes:";
        for (const auto& [v, bit] : r.outcomes) c.out << ' ' << g.name(v) << '=' << bit;
        c.out << "\npeak live: " << r.peak_live << "\n";
    }
    print_state(c, g, r.output_state);
    return 0;
}

int do_gen(Ctx& c, const std::string& family, int n, int m, std::uint64_t seed) {
    FamilyInstance inst = [&] {
        if (family == "hc") return gen_hc(n, m);
        if (family == "hn") return gen_hn(n, m);
        if (family == "hprime") return gen_hprime(n, m);
        if (family == "chain") return gen_linear_cluster(m);
        if (family == "random") return gen_random_flow_graph(n, m, seed);
        throw ParameterError("unknown family '" + family + "'");
    }();
    ParsedDocument doc{inst.graph, {}, {}, {}, {}};
    if (inst.flow_witness) {
        doc.flow_successor = inst.flow_witness->successor;
        doc.layers = inst.flow_witness->layer;
    } else if (inst.gflow_witness) {
        doc.gflow_corrector = inst.gflow_witness->corrector;
        doc.layers = inst.gflow_witness->layer;
    }
    c.out << emit_document(doc, inst.note);
    return 0;
}

int do_export(Ctx& c, const std::string& file, bool dot) {
    if (!dot) throw ParameterError("pick an export format (--dot)");
    ParsedDocument doc = load(c, file);
    std::optional<std::vector<int>> layers = doc.layers;
    std::optional<PathCover> paths;
    std::optional<Flow> f;
    if (doc.flow_successor && verify_flow(doc.graph, doc.flow_witness()).ok)
        f = doc.flow_witness();
    else if (!doc.has_witness())
        f = find_flow(doc.graph);
    if (f) {
        if (!layers) layers = f->layer;
        if (doc.graph.inputs().size() == doc.graph.outputs().size())
            paths = path_cover_from_flow(doc.graph, *f);
    }
    c.out << emit_dot(doc.graph, layers ? &*layers : nullptr, paths ? &*paths : nullptr);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            std::istream& in) {
    Ctx ctx{out, err, in};
    CLI::App app{"flow analysis, scheduling, and simulation for measurement patterns"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", ctx.format, "output style")
        ->check(CLI::IsMember({"human", "structured"}))
        ->capture_default_str();

    int rc = 0;

    std::string flow_file = "-";
    auto* flow = app.add_subcommand("flow", "find or verify a flow");
    flow->require_subcommand(1);
    flow->fallthrough();
    auto* flow_find_cmd = flow->add_subcommand("find", "search for a flow");
    flow_find_cmd->fallthrough();
    flow_find_cmd->add_option("file", flow_file, "document, - for stdin");
    flow_find_cmd->callback([&] { rc = do_flow_find(ctx, flow_file); });
    auto* flow_verify_cmd = flow->add_subcommand("verify", "check the document's witness");
    flow_verify_cmd->fallthrough();
    flow_verify_cmd->add_option("file", flow_file, "document, - for stdin");
    flow_verify_cmd->callback([&] { rc = do_flow_verify(ctx, flow_file); });

    std::string gflow_file = "-";
    auto* gflow = app.add_subcommand("gflow", "find or verify a gflow");
    gflow->require_subcommand(1);
    gflow->fallthrough();
    auto* gflow_find_cmd = gflow->add_subcommand("find", "search for a gflow");
    gflow_find_cmd->fallthrough();
    gflow_find_cmd->add_option("file", gflow_file, "document, - for stdin");
    gflow_find_cmd->callback([&] { rc = do_gflow_find(ctx, gflow_file); });
    auto* gflow_verify_cmd =
        gflow->add_subcommand("verify", "check the document's witness");
    gflow_verify_cmd->fallthrough();
    gflow_verify_cmd->add_option("file", gflow_file, "document, - for stdin");
    gflow_verify_cmd->callback([&] { rc = do_gflow_verify(ctx, gflow_file); });

    std::string paths_file = "-";
    auto* paths_cmd = app.add_subcommand("paths", "vertex-disjoint flow paths");
    paths_cmd->fallthrough();
    paths_cmd->add_option("file", paths_file, "document, - for stdin");
    paths_cmd->callback([&] { rc = do_paths(ctx, paths_file); });

    std::string sched_file = "-";
    std::string order_arg = "auto";
    auto* sched_cmd = app.add_subcommand("schedule", "just-in-time event schedule");
    sched_cmd->fallthrough();
    sched_cmd->add_option("--order", order_arg,
                          "auto or a comma-separated measurement order");
    sched_cmd->add_option("file", sched_file, "document, - for stdin");
    sched_cmd->callback([&] { rc = do_schedule(ctx, sched_file, order_arg); });

    std::string minqr_file = "-";
    bool minqr_exact_flag = false, minqr_greedy_flag = false;
    std::size_t minqr_cap = 0;
    auto* minqr_cmd = app.add_subcommand("minqr", "fewest simultaneously live qubits");
    minqr_cmd->fallthrough();
    auto* exact_opt = minqr_cmd->add_flag("--exact", minqr_exact_flag,
                                          "exhaustive minimum (default)");
    minqr_cmd->add_flag("--greedy", minqr_greedy_flag, "fast upper bound")
        ->excludes(exact_opt);
    minqr_cmd->add_option("--cap", minqr_cap,
                          "vertex cap for the exhaustive search (default 12, or "
                          "MBQC_EXACT_CAP)");
    minqr_cmd->add_option("file", minqr_file, "document, - for stdin");
    minqr_cmd->callback([&] {
        rc = do_minqr(ctx, minqr_file, minqr_greedy_flag, minqr_exact_flag, minqr_cap);
    });

    std::string classify_file = "-";
    auto* classify_cmd = app.add_subcommand("classify", "flow / gflow-only / none");
    classify_cmd->fallthrough();
    classify_cmd->add_option("file", classify_file, "document, - for stdin");
    classify_cmd->callback([&] { rc = do_classify(ctx, classify_file); });

    std::string rw_file = "-", rw_vertex, rw_basis, rw_neighbor;
    auto* rw_cmd = app.add_subcommand("rewrite", "measure a Pauli vertex away");
    rw_cmd->fallthrough();
    rw_cmd->add_option("--vertex", rw_vertex, "vertex to measure")->required();
    rw_cmd->add_option("--basis", rw_basis, "X, Y, or Z")->required();
    rw_cmd->add_option("--neighbor", rw_neighbor, "pivot neighbour for X");
    rw_cmd->add_option("file", rw_file, "document, - for stdin");
    rw_cmd->callback([&] { rc = do_rewrite(ctx, rw_file, rw_vertex, rw_basis, rw_neighbor); });

    std::string sim_file = "-", sim_branches;
    std::uint64_t sim_seed = 0;
    bool sim_check = false, sim_bare = false;
    std::size_t sim_cap = 10;
    double sim_tol = 1e-9;
    auto* sim_cmd = app.add_subcommand("simulate", "run the pattern");
    sim_cmd->fallthrough();
    sim_cmd->add_option("--branches", sim_branches, "'all' enumerates outcome branches")
        ->check(CLI::IsMember({"all"}));
    sim_cmd->add_option("--seed", sim_seed, "seed for sampled outcomes");
    sim_cmd->add_flag("--check-determinism", sim_check,
                      "compare every branch against branch zero");
    sim_cmd->add_flag("--no-corrections", sim_bare, "run without any corrections");
    sim_cmd->add_option("--cap", sim_cap, "branch-enumeration cap (default 10)");
    sim_cmd->add_option("--tolerance", sim_tol, "distance tolerance (default 1e-9)");
    sim_cmd->add_option("file", sim_file, "document, - for stdin");
    sim_cmd->callback([&] {
        rc = do_simulate(ctx, sim_file, sim_branches, sim_seed, sim_check, sim_cap,
                         sim_tol, sim_bare);
    });

    std::string gen_family;
    int gen_n = 2, gen_m = 0;
    std::uint64_t gen_seed = 0;
    auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark family instance");
    gen_cmd->fallthrough();
    gen_cmd->add_option("family", gen_family, "hc, hn, hprime, chain, or random")
        ->required()
        ->check(CLI::IsMember({"hc", "hn", "hprime", "chain", "random"}));
    gen_cmd->add_option("--n", gen_n, "inputs / paths (default 2)");
    gen_cmd->add_option("--m", gen_m, "total vertices")->required();
    gen_cmd->add_option("--seed", gen_seed, "seed for the random family");
    gen_cmd->callback([&] { rc = do_gen(ctx, gen_family, gen_n, gen_m, gen_seed); });

    std::string export_file = "-";
    bool export_dot = false;
    auto* export_cmd = app.add_subcommand("export", "render the graph");
    export_cmd->fallthrough();
    export_cmd->add_flag("--dot", export_dot, "Graphviz output");
    export_cmd->add_option("file", export_file, "document, - for stdin");
    export_cmd->callback([&] { rc = do_export(ctx, export_file, export_dot); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace mbqc
