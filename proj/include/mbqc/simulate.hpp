#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mbqc/angle.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/schedule.hpp"

namespace mbqc {

using Amplitude = std::complex<double>;
using State = std::vector<Amplitude>;

// A graph, one measurement angle per non-output, and an optional input
// state over the inputs in canonical order (2^|I| amplitudes; empty means
// the all-plus state).
struct MeasurementPattern {
    OpenGraph graph;
    std::vector<std::optional<Angle>> angles;
    State input_state;

    void validate() const; // throws ParameterError on any mismatch
};

// Which frame bits each measurement outcome toggles. x_targets[v] get an X,
// z_targets[v] get a Z, both conditioned on v's outcome.
struct Corrections {
    std::vector<VertexList> x_targets;
    std::vector<VertexList> z_targets;

    static Corrections none(const OpenGraph& g);
    static Corrections from_flow(const OpenGraph& g, const Flow& f);
    static Corrections from_gflow(const OpenGraph& g, const Gflow& gf);
};

// How measurement outcomes are chosen during a run: sampled from the Born
// rule, forced per vertex, or forced from a bit word indexed by the
// vertex's rank among the non-outputs (so branch labels do not depend on
// the schedule).
struct OutcomePolicy {
    enum class Mode : std::uint8_t { Random, ForcedMap, ForcedBits };
    Mode mode = Mode::Random;
    std::uint64_t seed = 0;
    std::map<Vertex, int> by_vertex;
    std::uint64_t bits = 0;

    static OutcomePolicy random(std::uint64_t seed);
    static OutcomePolicy forced(std::map<Vertex, int> by_vertex);
    static OutcomePolicy forced_bits(std::uint64_t bits);
};

struct RunResult {
    std::map<Vertex, int> outcomes;
    State output_state; // outputs in canonical order, normalised
    int peak_live = 0;  // largest number of simultaneously allocated qubits
};

// Streams the schedule through a state vector that only ever holds the live
// qubits: Prepare allocates an axis, Measure projects it out. Correction
// bits stay virtual: a pending Z folds into the preparation, both bits fold
// into the measurement angle as alpha' = (-1)^x alpha + z*pi, and outputs
// receive their X then Z at the end.
RunResult execute(const MeasurementPattern& p, const Schedule& s,
                  const Corrections& c, const OutcomePolicy& policy);

// 1 - |<a|b>| after normalising, so global phase never matters.
double state_distance(const State& a, const State& b);

struct DeterminismReport {
    int branches = 0;
    double max_distance = 0.0;
    bool deterministic = false;
};

// Runs every outcome branch and compares all output states against branch
// zero. Patterns with more than `cap` measured vertices are refused. The
// default variant fans the branches out across OpenMP threads; the serial
// one is the plain loop kept as a reference.
DeterminismReport branch_determinism_check(const MeasurementPattern& p, const Schedule& s,
                                           const Corrections& c, double tolerance = 1e-9,
                                           std::size_t cap = 10);
DeterminismReport branch_determinism_check_serial(const MeasurementPattern& p,
                                                  const Schedule& s, const Corrections& c,
                                                  double tolerance = 1e-9,
                                                  std::size_t cap = 10);

struct EquivalenceReport {
    int branches = 0;
    double max_distance = 0.0;
    bool equivalent = false;
};

// Runs both schedules on every branch and compares the final states.
EquivalenceReport schedule_equivalence(const MeasurementPattern& p, const Schedule& a,
                                       const Schedule& b, const Corrections& c,
                                       double tolerance = 1e-9, std::size_t cap = 10);

} // namespace mbqc
