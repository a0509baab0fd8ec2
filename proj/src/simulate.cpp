#include "mbqc/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

constexpr std::size_t kNoAxis = static_cast<std::size_t>(-1);

long double squared_norm(const State& v) {
    long double n2 = 0.0L;
    for (const Amplitude& a : v) n2 += static_cast<long double>(std::norm(a));
    return n2;
}

// State vector over the currently live qubits only. Axis k of the vector is
// bit k of the amplitude index; preparing adds the top axis and measuring
// contracts one out.
struct StreamState {
    State amp;
    std::vector<Vertex> axis_vertex;
    std::vector<std::size_t> axis_of;
    int peak = 0;

    explicit StreamState(std::size_t vertices)
        : amp{Amplitude(1.0, 0.0)}, axis_of(vertices, kNoAxis) {}

    std::size_t axes() const { return axis_vertex.size(); }

    void note_peak() { peak = std::max(peak, static_cast<int>(axes())); }

    void allocate(Vertex v, bool minus) {
        std::size_t k = axes();
        if (k >= 62) throw ParameterError("too many simultaneously live qubits");
        State next(amp.size() * 2);
        double r = 1.0 / std::sqrt(2.0);
        double sign = minus ? -r : r;
        for (std::size_t i = 0; i < amp.size(); ++i) {
            next[i] = amp[i] * r;
            next[i + (std::size_t{1} << k)] = amp[i] * sign;
        }
        amp = std::move(next);
        axis_vertex.push_back(v);
        axis_of[v] = k;
        note_peak();
    }

    void cz(Vertex u, Vertex v) {
        std::size_t bu = std::size_t{1} << axis_of[u];
        std::size_t bv = std::size_t{1} << axis_of[v];
        for (std::size_t i = 0; i < amp.size(); ++i)
            if ((i & bu) && (i & bv)) amp[i] = -amp[i];
    }

    void gate_x(Vertex v) {
        std::size_t b = std::size_t{1} << axis_of[v];
        for (std::size_t i = 0; i < amp.size(); ++i)
            if (!(i & b)) std::swap(amp[i], amp[i | b]);
    }

    void gate_z(Vertex v) {
        std::size_t b = std::size_t{1} << axis_of[v];
        for (std::size_t i = 0; i < amp.size(); ++i)
            if (i & b) amp[i] = -amp[i];
    }

    // Squared norm of the projection onto outcome `s` at angle alpha,
    // without committing to it.
    double outcome_weight(Vertex v, double alpha, int s) const {
        std::size_t k = axis_of[v];
        std::size_t bit = std::size_t{1} << k;
        Amplitude w = std::polar(1.0, -alpha);
        if (s) w = -w;
        long double n2 = 0.0L;
        for (std::size_t j = 0; j < amp.size() / 2; ++j) {
            std::size_t low = j & (bit - 1);
            std::size_t i0 = ((j >> k) << (k + 1)) | low;
            Amplitude c = (amp[i0] + w * amp[i0 | bit]) / std::sqrt(2.0);
            n2 += static_cast<long double>(std::norm(c));
        }
        return static_cast<double>(n2);
    }

    // Projects v onto outcome `s`, removes its axis, and returns the squared
    // norm of the unnormalised result.
    double project(Vertex v, double alpha, int s) {
        std::size_t k = axis_of[v];
        std::size_t bit = std::size_t{1} << k;
        Amplitude w = std::polar(1.0, -alpha);
        if (s) w = -w;
        State next(amp.size() / 2);
        for (std::size_t j = 0; j < next.size(); ++j) {
            std::size_t low = j & (bit - 1);
            std::size_t i0 = ((j >> k) << (k + 1)) | low;
            next[j] = (amp[i0] + w * amp[i0 | bit]) / std::sqrt(2.0);
        }
        amp = std::move(next);
        axis_vertex.erase(axis_vertex.begin() + static_cast<std::ptrdiff_t>(k));
        axis_of[v] = kNoAxis;
        for (std::size_t j = k; j < axis_vertex.size(); ++j) axis_of[axis_vertex[j]] = j;
        return static_cast<double>(squared_norm(amp));
    }

    void scale(double factor) {
        for (Amplitude& a : amp) a *= factor;
    }
};

std::size_t measured_rank(const OpenGraph& g, Vertex v) {
    const VertexList& nc = g.non_outputs();
    return static_cast<std::size_t>(
        std::lower_bound(nc.begin(), nc.end(), v) - nc.begin());
}

void require_corrections(const OpenGraph& g, const Corrections& c) {
    if (c.x_targets.size() != g.size() || c.z_targets.size() != g.size())
        throw ParameterError("corrections must cover every vertex index");
    for (Vertex v = 0; v < g.size(); ++v) {
        for (Vertex t : c.x_targets[v])
            if (t >= g.size()) throw IdentifierError("correction target outside the graph");
        for (Vertex t : c.z_targets[v])
            if (t >= g.size()) throw IdentifierError("correction target outside the graph");
    }
}

} // namespace

void MeasurementPattern::validate() const {
    if (angles.size() != graph.size())
        throw ParameterError("need one angle slot per vertex");
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (graph.is_output(v)) {
            if (angles[v])
                throw ParameterError("output '" + graph.name(v) + "' carries an angle");
        } else if (!angles[v]) {
            throw ParameterError("non-output '" + graph.name(v) + "' has no angle");
        }
    }
    if (!input_state.empty()) {
        std::size_t ni = graph.inputs().size();
        if (ni >= 62) throw ParameterError("too many inputs for an explicit input state");
        if (input_state.size() != (std::size_t{1} << ni))
            throw ParameterError("input state must have one amplitude per input basis state");
        for (const Amplitude& a : input_state)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw ParameterError("input state must be finite");
        if (squared_norm(input_state) < 1e-24L)
            throw ParameterError("input state must not be zero");
    }
}

Corrections Corrections::none(const OpenGraph& g) {
    Corrections c;
    c.x_targets.resize(g.size());
    c.z_targets.resize(g.size());
    return c;
}

Corrections Corrections::from_flow(const OpenGraph& g, const Flow& f) {
    Corrections c = none(g);
    for (Vertex v : g.non_outputs()) {
        auto it = f.successor.find(v);
        if (it == f.successor.end())
            throw ParameterError("flow lacks a successor for '" + g.name(v) + "'");
        Vertex fv = it->second;
        if (fv >= g.size()) throw IdentifierError("successor outside the graph");
        c.x_targets[v].push_back(fv);
        for (Vertex u : g.neighbors(fv))
            if (u != v) c.z_targets[v].push_back(u);
    }
    return c;
}

Corrections Corrections::from_gflow(const OpenGraph& g, const Gflow& gf) {
    Corrections c = none(g);
    for (Vertex v : g.non_outputs()) {
        auto it = gf.corrector.find(v);
        if (it == gf.corrector.end())
            throw ParameterError("gflow lacks a correction set for '" + g.name(v) + "'");
        for (Vertex t : it->second) {
            if (t >= g.size()) throw IdentifierError("correction set outside the graph");
            c.x_targets[v].push_back(t);
        }
        for (Vertex u : g.odd_neighborhood(it->second))
            if (u != v) c.z_targets[v].push_back(u);
    }
    return c;
}

OutcomePolicy OutcomePolicy::random(std::uint64_t seed) {
    OutcomePolicy p;
    p.mode = Mode::Random;
    p.seed = seed;
    return p;
}

OutcomePolicy OutcomePolicy::forced(std::map<Vertex, int> by_vertex) {
    OutcomePolicy p;
    p.mode = Mode::ForcedMap;
    p.by_vertex = std::move(by_vertex);
    return p;
}

OutcomePolicy OutcomePolicy::forced_bits(std::uint64_t bits) {
    OutcomePolicy p;
    p.mode = Mode::ForcedBits;
    p.bits = bits;
    return p;
}

RunResult execute(const MeasurementPattern& p, const Schedule& s,
                  const Corrections& c, const OutcomePolicy& policy) {
    p.validate();
    const OpenGraph& g = p.graph;
    if (auto bad = validate_schedule(g, s))
        throw ParameterError("schedule: " + *bad);
    require_corrections(g, c);

    std::size_t measured_count = g.non_outputs().size();
    if (policy.mode == OutcomePolicy::Mode::ForcedBits) {
        if (measured_count < 64 && (policy.bits >> measured_count) != 0)
            throw ParameterError("forced bit word names more outcomes than there are measurements");
    }
    if (policy.mode == OutcomePolicy::Mode::ForcedMap) {
        for (const auto& [v, s_bit] : policy.by_vertex) {
            if (v >= g.size()) throw IdentifierError("forced outcome outside the graph");
            if (g.is_output(v))
                throw ParameterError("forced outcome for output '" + g.name(v) + "'");
            if (s_bit != 0 && s_bit != 1)
                throw ParameterError("outcomes are single bits");
        }
    }

    StreamState st(g.size());
    const VertexList& ins = g.inputs();
    if (ins.empty()) {
        st.amp = {Amplitude(1.0, 0.0)};
    } else {
        std::size_t dim = std::size_t{1} << ins.size();
        if (p.input_state.empty()) {
            double r = std::pow(2.0, -static_cast<double>(ins.size()) / 2.0);
            st.amp.assign(dim, Amplitude(r, 0.0));
        } else {
            st.amp = p.input_state;
            double n = std::sqrt(static_cast<double>(squared_norm(st.amp)));
            st.scale(1.0 / n);
        }
        for (std::size_t k = 0; k < ins.size(); ++k) {
            st.axis_vertex.push_back(ins[k]);
            st.axis_of[ins[k]] = k;
        }
    }
    st.note_peak();

    std::mt19937_64 rng(policy.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<int> sx(g.size(), 0), sz(g.size(), 0);
    RunResult result;

    for (const Event& ev : s.events) {
        switch (ev.kind) {
        case EventKind::Prepare:
            st.allocate(ev.a, sz[ev.a] != 0);
            sz[ev.a] = 0;
            break;
        case EventKind::Entangle:
            st.cz(ev.a, ev.b);
            break;
        case EventKind::Measure: {
            Vertex v = ev.a;
            double alpha = p.angles[v]->radians();
            double adapted = (sx[v] ? -alpha : alpha) + (sz[v] ? M_PI : 0.0);
            int outcome;
            switch (policy.mode) {
            case OutcomePolicy::Mode::Random: {
                double p0 = st.outcome_weight(v, adapted, 0);
                outcome = coin(rng) < p0 ? 0 : 1;
                break;
            }
            case OutcomePolicy::Mode::ForcedMap: {
                auto it = policy.by_vertex.find(v);
                if (it == policy.by_vertex.end())
                    throw ParameterError("no forced outcome for '" + g.name(v) + "'");
                outcome = it->second;
                break;
            }
            case OutcomePolicy::Mode::ForcedBits:
                outcome = static_cast<int>((policy.bits >> measured_rank(g, v)) & 1);
                break;
            default:
                throw ParameterError("unknown outcome policy");
            }
            double n2 = st.project(v, adapted, outcome);
            if (n2 < 1e-18)
                throw ParameterError("outcome branch has vanishing probability at '" +
                                     g.name(v) + "'");
            st.scale(1.0 / std::sqrt(n2));
            result.outcomes[v] = outcome;
            if (outcome) {
                for (Vertex t : c.x_targets[v]) {
                    if (result.outcomes.count(t))
                        throw ParameterError("correction targets '" + g.name(t) +
                                             "' after its measurement");
                    sx[t] ^= 1;
                }
                for (Vertex t : c.z_targets[v]) {
                    if (result.outcomes.count(t))
                        throw ParameterError("correction targets '" + g.name(t) +
                                             "' after its measurement");
                    sz[t] ^= 1;
                }
            }
            break;
        }
        case EventKind::Discard:
            break; // the axis went away with the projection
        }
    }

    for (Vertex v : g.outputs()) {
        if (sx[v]) st.gate_x(v);
        if (sz[v]) st.gate_z(v);
    }

    const VertexList& outs = g.outputs();
    State out(std::size_t{1} << outs.size());
    for (std::size_t i = 0; i < st.amp.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < outs.size(); ++k)
            if ((i >> st.axis_of[outs[k]]) & 1) j |= std::size_t{1} << k;
        out[j] = st.amp[i];
    }
    long double n2 = squared_norm(out);
    if (std::fabs(static_cast<double>(n2) - 1.0) > 1e-12)
        throw InvariantError("final state norm drifted away from 1");
    result.output_state = std::move(out);
    result.peak_live = st.peak;
    return result;
}

double state_distance(const State& a, const State& b) {
    if (a.size() != b.size() || a.empty())
        throw ParameterError("states must have the same nonzero dimension");
    long double na = squared_norm(a), nb = squared_norm(b);
    if (na < 1e-24L || nb < 1e-24L) throw ParameterError("states must not be zero");
    std::complex<long double> ip(0.0L, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::complex<long double> ca(a[i].real(), a[i].imag());
        std::complex<long double> cb(b[i].real(), b[i].imag());
        ip += std::conj(ca) * cb;
    }
    long double overlap = std::abs(ip) / std::sqrt(na * nb);
    double d = 1.0 - static_cast<double>(overlap);
    return d < 0.0 ? 0.0 : d;
}

namespace {

DeterminismReport determinism_impl(const MeasurementPattern& p, const Schedule& s,
                                   const Corrections& c, double tolerance,
                                   std::size_t cap, bool parallel) {
    p.validate();
    std::size_t k = p.graph.non_outputs().size();
    if (k > cap)
        throw ParameterError("pattern measures " + std::to_string(k) +
                             " vertices, above the branch-enumeration cap of " +
                             std::to_string(cap));
    if (k > 20) throw ParameterError("too many branches to enumerate");

    std::uint64_t branches = std::uint64_t{1} << k;
    RunResult ref = execute(p, s, c, OutcomePolicy::forced_bits(0));
    double max_distance = 0.0;

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : max_distance)
#endif
        for (std::uint64_t b = 1; b < branches; ++b) {
            RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(b));
            double d = state_distance(ref.output_state, r.output_state);
            max_distance = std::max(max_distance, d);
        }
    } else {
        for (std::uint64_t b = 1; b < branches; ++b) {
            RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(b));
            double d = state_distance(ref.output_state, r.output_state);
            max_distance = std::max(max_distance, d);
        }
    }

    DeterminismReport rep;
    rep.branches = static_cast<int>(branches);
    rep.max_distance = max_distance;
    rep.deterministic = max_distance <= tolerance;
    return rep;
}

} // namespace

DeterminismReport branch_determinism_check(const MeasurementPattern& p, const Schedule& s,
                                           const Corrections& c, double tolerance,
                                           std::size_t cap) {
    return determinism_impl(p, s, c, tolerance, cap, true);
}

DeterminismReport branch_determinism_check_serial(const MeasurementPattern& p,
                                                  const Schedule& s, const Corrections& c,
                                                  double tolerance, std::size_t cap) {
    return determinism_impl(p, s, c, tolerance, cap, false);
}

EquivalenceReport schedule_equivalence(const MeasurementPattern& p, const Schedule& a,
                                       const Schedule& b, const Corrections& c,
                                       double tolerance, std::size_t cap) {
    p.validate();
    std::size_t k = p.graph.non_outputs().size();
    if (k > cap)
        throw ParameterError("pattern measures " + std::to_string(k) +
                             " vertices, above the branch-enumeration cap of " +
                             std::to_string(cap));
    std::uint64_t branches = std::uint64_t{1} << k;
    double max_distance = 0.0;
    for (std::uint64_t bits = 0; bits < branches; ++bits) {
        RunResult ra = execute(p, a, c, OutcomePolicy::forced_bits(bits));
        RunResult rb = execute(p, b, c, OutcomePolicy::forced_bits(bits));
        max_distance = std::max(max_distance,
                                state_distance(ra.output_state, rb.output_state));
    }
    EquivalenceReport rep;
    rep.branches = static_cast<int>(branches);
    rep.max_distance = max_distance;
    rep.equivalent = max_distance <= tolerance;
    return rep;
}

} // namespace mbqc
