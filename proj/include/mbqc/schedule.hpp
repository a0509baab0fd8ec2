#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

enum class EventKind : std::uint8_t { Prepare, Entangle, Measure, Discard };

struct Event {
    EventKind kind;
    Vertex a = 0;
    Vertex b = 0; // Entangle only
    friend bool operator==(const Event&, const Event&) = default;
};

// Inputs are live before the first event and never prepared; every other
// vertex becomes live at its Prepare event and a measured vertex stops being
// live at its Discard event, which follows its measurement immediately.
struct Schedule {
    std::vector<Event> events;
    std::vector<int> live_profile; // live count after each event
    int initial_live = 0;          // |I|
};

int residency_max(const Schedule& s);

// Just-in-time schedule: each measured vertex prepares itself and its still
// untouched neighbours, applies its remaining edges, then measures and
// discards. Outputs and edges between outputs are finished at the end.
// `order` must be a permutation of the non-outputs.
Schedule lazy_schedule(const OpenGraph& g, const VertexList& order);

// All preparations and entanglements first, then the measurements.
Schedule eager_schedule(const OpenGraph& g, const VertexList& order);

// Replays an arbitrary event list against the graph and checks every
// schedule rule. Returns nullopt when valid, else a description of the first
// problem found.
std::optional<std::string> validate_schedule(const OpenGraph& g, const Schedule& s);

// O_w has two readings in circulation; the per-vertex one is what lazy
// scheduling realises and is the default everywhere.
enum class TouchedRule {
    PerVertex, // v is touched when v itself has a measured neighbour
    PerTarget, // every unmeasured v counts once w has a measured neighbour
};

// The sets that must be live when it is w's turn, given the measured prefix.
struct LiveSets {
    Vertex w;
    VertexList unmeasured;            // all unmeasured vertices except w
    VertexList measured;              // the prefix, in canonical order
    VertexList unmeasured_neighbors;  // N(w) among unmeasured
    VertexList unmeasured_inputs;     // inputs among unmeasured, w excluded
    VertexList touched;               // unmeasured with a measured neighbour
    VertexList required_live;         // union of the previous three
};
LiveSets compute_live_sets(const OpenGraph& g, const VertexList& measured_prefix, Vertex w,
                           TouchedRule rule = TouchedRule::PerVertex);

struct ResidencyResult {
    int value = 0;
    VertexList order;          // witness measurement order
    std::vector<int> profile;  // live profile of the witness schedule
};

// Residency of a flow graph: always min(n+1, m) for |I| = |O| = n. The
// returned schedule achieves it; the equality is checked and a failure
// raises InvariantError rather than returning a wrong number.
ResidencyResult min_qr_flow(const OpenGraph& g, const Flow& f);

// Greedy linear extension of the layer order, always picking the candidate
// whose block adds the fewest preparations. Upper bound on the optimum.
ResidencyResult min_qr_greedy(const OpenGraph& g, const std::vector<int>& layers);

// Exhaustive minimum over every linear extension of the layer order.
// Refuses graphs larger than `cap` vertices. min_qr_exact explores disjoint
// subtrees in parallel when OpenMP is enabled; the serial variant is the
// plain reference. Both return the same value and witness.
ResidencyResult min_qr_exact(const OpenGraph& g, const std::vector<int>& layers,
                             std::size_t cap = 12);
ResidencyResult min_qr_exact_serial(const OpenGraph& g, const std::vector<int>& layers,
                                    std::size_t cap = 12);

// min over non-outputs of degree+1: no schedule can measure w with fewer
// qubits than w and its whole neighbourhood.
int degree_lower_bound(const OpenGraph& g);

} // namespace mbqc
