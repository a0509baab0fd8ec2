#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mbqc/flow.hpp"
#include "mbqc/open_graph.hpp"

namespace mbqc {

// A generated benchmark graph together with the witness its construction
// guarantees. Witnesses are verified before being returned; a generator that
// cannot verify its own witness raises InvariantError.
struct FamilyInstance {
    OpenGraph graph;
    std::optional<Flow> flow_witness;
    std::optional<Gflow> gflow_witness;
    std::string note;
};

// Sparse seed family on m vertices with inputs i1..in and the rest v1..vm',
// m' = m - n: a chain hanging off output vn with tails to i1..i(n-1), while
// i(n) and v(n-1) stay isolated. Has neither flow nor gflow. Needs n >= 2
// and m >= 2n + 1.
FamilyInstance gen_hc(int n, int m);

// Edge complement of gen_hc on the same vertices: dense (every internal
// vertex has degree at least m - 3), admits gflow but no flow.
FamilyInstance gen_hn(int n, int m);

// gen_hc plus a hub vertex y adjacent to everything (m + 1 vertices in
// total). The hub restores flow.
FamilyInstance gen_hprime(int n, int m);

// Path q0 - q1 - ... - q(m-1) with one input and one output.
FamilyInstance gen_linear_cluster(int m);

// n vertex-disjoint successor paths covering m vertices plus random extra
// edges, each accepted only when it keeps the path flow valid, so the
// instance always carries a verified flow witness.
FamilyInstance gen_random_flow_graph(int n, int m, std::uint64_t seed);

} // namespace mbqc
