#include "mbqc/document.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

const char* kFields[] = {"vertices", "inputs", "outputs", "edges",
                         "angles",   "flow",   "gflow",   "layers"};

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '=' || c == '>' ||
            c == '-' || c == ',' || c == ':' || c == '#')
            return false;
    return true;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct RawLine {
    int number;
    std::string body;
};

// Field line split into "name: rest", comments and blank lines dropped.
std::map<std::string, RawLine> collect_fields(std::istream& in) {
    std::map<std::string, RawLine> fields;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string trimmed = line;
        auto l = trimmed.find_first_not_of(" \t\r");
        if (l == std::string::npos) continue;
        auto r = trimmed.find_last_not_of(" \t\r");
        trimmed = trimmed.substr(l, r - l + 1);

        auto colon = trimmed.find(':');
        if (colon == std::string::npos)
            throw ParseError(number, "expected 'field: values'");
        std::string name = trimmed.substr(0, colon);
        if (std::find_if(std::begin(kFields), std::end(kFields), [&](const char* f) {
                return name == f;
            }) == std::end(kFields))
            throw ParseError(number, "unknown field '" + name + "'");
        if (fields.count(name))
            throw ParseError(number, "duplicate field '" + name + "'");
        fields[name] = {number, trimmed.substr(colon + 1)};
    }
    return fields;
}

Vertex lookup(const OpenGraph& g, const std::string& name, int line) {
    auto v = g.find(name);
    if (!v) throw ParseError(line, "unknown vertex '" + name + "'");
    return *v;
}

// "a=value" with both halves nonempty.
std::pair<std::string, std::string> split_assign(const std::string& tok, int line) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
        throw ParseError(line, "expected 'vertex=value', got '" + tok + "'");
    return {tok.substr(0, eq), tok.substr(eq + 1)};
}

} // namespace

Flow ParsedDocument::flow_witness() const {
    if (!flow_successor) throw ParameterError("document carries no flow witness");
    return {*flow_successor, *layers};
}

Gflow ParsedDocument::gflow_witness() const {
    if (!gflow_corrector) throw ParameterError("document carries no gflow witness");
    return {*gflow_corrector, *layers};
}

MeasurementPattern ParsedDocument::to_pattern() const {
    MeasurementPattern p{graph, {}, {}};
    p.angles.resize(graph.size());
    for (const auto& [v, a] : angles) p.angles[v] = a;
    p.validate();
    return p;
}

ParsedDocument parse_document(const std::string& text) {
    std::istringstream in(text);
    return parse_document(in);
}

ParsedDocument parse_document(std::istream& in) {
    auto fields = collect_fields(in);
    auto need = [&](const char* f) -> RawLine& {
        auto it = fields.find(f);
        if (it == fields.end()) throw ParseError("missing field '" + std::string(f) + "'");
        return it->second;
    };

    RawLine& vline = need("vertices");
    std::vector<std::string> names = split_ws(vline.body);
    if (names.empty()) throw ParseError(vline.number, "no vertices");
    for (const std::string& n : names) {
        if (!valid_name(n))
            throw ParseError(vline.number, "bad vertex name '" + n + "'");
    }

    std::vector<std::pair<std::string, std::string>> edges;
    if (auto it = fields.find("edges"); it != fields.end()) {
        for (const std::string& tok : split_ws(it->second.body)) {
            auto dash = tok.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
                throw ParseError(it->second.number, "expected 'a-b', got '" + tok + "'");
            edges.emplace_back(tok.substr(0, dash), tok.substr(dash + 1));
        }
    }

    OpenGraph graph = [&] {
        try {
            return OpenGraph(names, edges, split_ws(need("inputs").body),
                             split_ws(need("outputs").body));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(vline.number, e.what());
        }
    }();

    ParsedDocument doc{std::move(graph), {}, {}, {}, {}};
    const OpenGraph& g = doc.graph;

    if (auto it = fields.find("angles"); it != fields.end()) {
        for (const std::string& tok : split_ws(it->second.body)) {
            auto [name, value] = split_assign(tok, it->second.number);
            Vertex v = lookup(g, name, it->second.number);
            if (doc.angles.count(v))
                throw ParseError(it->second.number, "duplicate angle for '" + name + "'");
            try {
                doc.angles.emplace(v, Angle::parse(value));
            } catch (const Error& e) {
                throw ParseError(it->second.number, e.what());
            }
        }
    }

    if (auto it = fields.find("layers"); it != fields.end()) {
        std::vector<int> layers(g.size(), -1);
        for (const std::string& tok : split_ws(it->second.body)) {
            auto [name, value] = split_assign(tok, it->second.number);
            Vertex v = lookup(g, name, it->second.number);
            if (layers[v] != -1)
                throw ParseError(it->second.number, "duplicate layer for '" + name + "'");
            std::size_t used = 0;
            int l = 0;
            try {
                l = std::stoi(value, &used);
            } catch (const std::exception&) {
                throw ParseError(it->second.number, "bad layer '" + value + "'");
            }
            if (used != value.size())
                throw ParseError(it->second.number, "bad layer '" + value + "'");
            if (l < 0) throw ParseError(it->second.number, "layers are non-negative");
            layers[v] = l;
        }
        for (Vertex v = 0; v < g.size(); ++v)
            if (layers[v] == -1)
                throw ParseError(it->second.number,
                                 "layers must cover every vertex; '" + g.name(v) +
                                     "' is missing");
        doc.layers = std::move(layers);
    }

    if (fields.count("flow") && fields.count("gflow"))
        throw ParseError(fields["gflow"].number, "at most one witness per document");

    if (auto it = fields.find("flow"); it != fields.end()) {
        std::map<Vertex, Vertex> successor;
        for (const std::string& tok : split_ws(it->second.body)) {
            auto gt = tok.find('>');
            if (gt == std::string::npos || gt == 0 || gt + 1 == tok.size())
                throw ParseError(it->second.number, "expected 'a>b', got '" + tok + "'");
            Vertex from = lookup(g, tok.substr(0, gt), it->second.number);
            Vertex to = lookup(g, tok.substr(gt + 1), it->second.number);
            if (successor.count(from))
                throw ParseError(it->second.number,
                                 "duplicate successor for '" + g.name(from) + "'");
            successor[from] = to;
        }
        doc.flow_successor = std::move(successor);
    }

    if (auto it = fields.find("gflow"); it != fields.end()) {
        std::map<Vertex, VertexList> corrector;
        for (const std::string& tok : split_ws(it->second.body)) {
            auto gt = tok.find('>');
            if (gt == std::string::npos || gt == 0 || gt + 1 == tok.size())
                throw ParseError(it->second.number, "expected 'a>b,c', got '" + tok + "'");
            Vertex from = lookup(g, tok.substr(0, gt), it->second.number);
            if (corrector.count(from))
                throw ParseError(it->second.number,
                                 "duplicate correction set for '" + g.name(from) + "'");
            VertexList set;
            std::string rest = tok.substr(gt + 1);
            std::size_t pos = 0;
            while (pos <= rest.size()) {
                auto comma = rest.find(',', pos);
                std::string part = rest.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                if (part.empty())
                    throw ParseError(it->second.number, "empty name in '" + tok + "'");
                set.push_back(lookup(g, part, it->second.number));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            std::sort(set.begin(), set.end());
            if (std::adjacent_find(set.begin(), set.end()) != set.end())
                throw ParseError(it->second.number, "repeated vertex in '" + tok + "'");
            corrector[from] = std::move(set);
        }
        doc.gflow_corrector = std::move(corrector);
    }

    if (doc.has_witness() && !doc.layers) {
        int at = fields.count("flow") ? fields["flow"].number : fields["gflow"].number;
        throw ParseError(at, "a witness needs a layers line");
    }
    return doc;
}

std::string emit_document(const ParsedDocument& doc, const std::string& comment) {
    const OpenGraph& g = doc.graph;
    std::ostringstream out;
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string l;
        while (std::getline(lines, l)) out << "# " << l << "\n";
    }
    auto names = [&](const VertexList& vs) {
        std::string s;
        for (Vertex v : vs) {
            if (!s.empty()) s += ' ';
            s += g.name(v);
        }
        return s;
    };
    out << "vertices:";
    for (Vertex v = 0; v < g.size(); ++v) out << ' ' << g.name(v);
    out << "\n";
    out << "inputs: " << names(g.inputs()) << "\n";
    out << "outputs: " << names(g.outputs()) << "\n";
    if (!g.edges().empty()) {
        out << "edges:";
        for (const auto& [u, v] : g.edges()) out << ' ' << g.name(u) << '-' << g.name(v);
        out << "\n";
    }
    if (!doc.angles.empty()) {
        out << "angles:";
        for (const auto& [v, a] : doc.angles) out << ' ' << g.name(v) << '=' << a.str();
        out << "\n";
    }
    if (doc.flow_successor) {
        out << "flow:";
        for (const auto& [i, s] : *doc.flow_successor)
            out << ' ' << g.name(i) << '>' << g.name(s);
        out << "\n";
    }
    if (doc.gflow_corrector) {
        out << "gflow:";
        for (const auto& [i, set] : *doc.gflow_corrector) {
            out << ' ' << g.name(i) << '>';
            for (std::size_t k = 0; k < set.size(); ++k)
                out << (k ? "," : "") << g.name(set[k]);
        }
        out << "\n";
    }
    if (doc.layers) {
        out << "layers:";
        for (Vertex v = 0; v < g.size(); ++v) out << ' ' << g.name(v) << '=' << (*doc.layers)[v];
        out << "\n";
    }
    return out.str();
}

std::string emit_dot(const OpenGraph& g, const std::vector<int>* layers,
                     const PathCover* paths) {
    std::ostringstream out;
    out << "graph pattern {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (Vertex v = 0; v < g.size(); ++v) {
        out << "  \"" << g.name(v) << "\" [";
        if (g.is_input(v)) out << "shape=box, ";
        if (g.is_output(v)) out << "peripheries=2, ";
        out << "label=\"" << g.name(v);
        if (layers) out << "\\n" << (*layers)[v];
        out << "\"];\n";
    }
    for (const auto& [u, v] : g.edges()) {
        bool on_path = false;
        if (paths && paths->path_of[u] >= 0 && paths->path_of[u] == paths->path_of[v]) {
            const VertexList& p = paths->paths[static_cast<std::size_t>(paths->path_of[u])];
            for (std::size_t k = 0; k + 1 < p.size(); ++k)
                if ((p[k] == u && p[k + 1] == v) || (p[k] == v && p[k + 1] == u))
                    on_path = true;
        }
        out << "  \"" << g.name(u) << "\" -- \"" << g.name(v) << "\"";
        if (on_path) out << " [penwidth=2]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace mbqc
