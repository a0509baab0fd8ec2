#include <doctest.h>

#include "mbqc/errors.hpp"
#include "mbqc/generators.hpp"
#include "mbqc/rewrite.hpp"

using namespace mbqc;

namespace {

OpenGraph path_awc() {
    return OpenGraph({"a", "w", "c"},
                     std::vector<std::pair<std::string, std::string>>{{"a", "w"},
                                                                      {"w", "c"}},
                     {"a"}, {"c"});
}

} // namespace

TEST_SUITE("rewrite") {

TEST_CASE("measuring the middle of a path in Y fuses its neighbours") {
    OpenGraph g = path_awc();
    RewriteResult r = measure_y(g, g.vertex("w"));
    CHECK(r.graph.size() == 2);
    CHECK(r.graph.has_edge(r.graph.vertex("a"), r.graph.vertex("c")));
    CHECK(r.graph.edges().size() == 1);
    CHECK(r.graph.is_input(r.graph.vertex("a")));
    CHECK(r.graph.is_output(r.graph.vertex("c")));
    CHECK(r.byproduct == std::vector<LocalGate>{{LocalGateKind::S, "a"},
                                                {LocalGateKind::S, "c"}});
}

TEST_CASE("measuring a triangle corner in Y disconnects the other two") {
    OpenGraph tri({"a", "b", "c"},
                  std::vector<std::pair<std::string, std::string>>{
                      {"a", "b"}, {"b", "c"}, {"a", "c"}},
                  {"a"}, {"c"});
    RewriteResult r = measure_y(tri, tri.vertex("b"));
    CHECK(r.graph.edges().empty());
    CHECK(r.graph.size() == 2);
}

TEST_CASE("measuring in Z just deletes the vertex") {
    OpenGraph g = gen_linear_cluster(5).graph;
    RewriteResult r = measure_z(g, g.vertex("q2"));
    CHECK(r.byproduct.empty());
    CHECK(r.graph.size() == 4);
    CHECK(r.graph.has_edge(r.graph.vertex("q0"), r.graph.vertex("q1")));
    CHECK(r.graph.has_edge(r.graph.vertex("q3"), r.graph.vertex("q4")));
    CHECK(r.graph.edges().size() == 2);

    FlowTransition t = classify_flow_transition(g, r.graph);
    CHECK(t.before == FlowClass::Flow);
    CHECK(t.after == FlowClass::None); // the cut strands the output side
}

TEST_CASE("measuring the middle of a path in X keeps the ends joined") {
    OpenGraph g = path_awc();
    RewriteResult r = apply_pauli_rewrite(g, g.vertex("w"), PauliBasis::X);
    CHECK(r.graph.size() == 2);
    CHECK(r.graph.has_edge(r.graph.vertex("a"), r.graph.vertex("c")));
    CHECK(r.graph.edges().size() == 1);
    // default pivot is the lowest-index neighbour a; c is outside N(a)
    CHECK(r.byproduct == std::vector<LocalGate>{{LocalGateKind::X, "a"},
                                                {LocalGateKind::H, "a"},
                                                {LocalGateKind::Z, "c"}});
}

TEST_CASE("the X pivot changes the byproduct but stays a neighbour") {
    OpenGraph g = path_awc();
    RewriteResult r = measure_x(g, g.vertex("w"), g.vertex("c"));
    CHECK(r.byproduct == std::vector<LocalGate>{{LocalGateKind::X, "c"},
                                                {LocalGateKind::H, "c"},
                                                {LocalGateKind::Z, "a"}});
    CHECK(r.graph.has_edge(r.graph.vertex("a"), r.graph.vertex("c")));
    CHECK_THROWS_AS(measure_x(g, g.vertex("w"), g.vertex("w")), ParameterError);

    OpenGraph far({"a", "w", "c", "d"},
                  std::vector<std::pair<std::string, std::string>>{
                      {"a", "w"}, {"w", "c"}, {"c", "d"}},
                  {"a"}, {"d"});
    CHECK_THROWS_AS(measure_x(far, far.vertex("w"), far.vertex("d")), ParameterError);
}

TEST_CASE("rewrites refuse boundary vertices and stray pivots") {
    OpenGraph g = path_awc();
    CHECK_THROWS_AS(measure_y(g, g.vertex("a")), ParameterError);
    CHECK_THROWS_AS(measure_y(g, g.vertex("c")), ParameterError);
    CHECK_THROWS_AS(measure_z(g, 17), IdentifierError);
    CHECK_THROWS_AS(apply_pauli_rewrite(g, g.vertex("w"), PauliBasis::Z, g.vertex("a")),
                    ParameterError);
    CHECK_THROWS_AS(apply_pauli_rewrite(g, g.vertex("w"), PauliBasis::Y, g.vertex("a")),
                    ParameterError);

    OpenGraph lonely({"a", "w", "c"},
                     std::vector<std::pair<std::string, std::string>>{{"a", "c"}},
                     {"a"}, {"c"});
    CHECK_THROWS_AS(apply_pauli_rewrite(lonely, lonely.vertex("w"), PauliBasis::X),
                    ParameterError);
}

TEST_CASE("measuring the hub in Y collapses the hub family onto the dense family") {
    for (auto [n, m] : {std::pair{2, 5}, std::pair{3, 8}}) {
        FamilyInstance hub = gen_hprime(n, m);
        FamilyInstance dense = gen_hn(n, m);
        RewriteResult r = measure_y(hub.graph, hub.graph.vertex("y"));
        CHECK(r.graph == dense.graph);
        REQUIRE(r.byproduct.size() == static_cast<std::size_t>(m));
        for (const LocalGate& gate : r.byproduct) CHECK(gate.kind == LocalGateKind::S);

        FlowTransition t = classify_flow_transition(hub.graph, r.graph);
        CHECK(t.before == FlowClass::Flow);
        CHECK(t.after == FlowClass::GflowOnly);
    }
}

TEST_CASE("flow classes of the three families") {
    CHECK(classify_flow(gen_linear_cluster(4).graph) == FlowClass::Flow);
    CHECK(classify_flow(gen_hprime(2, 5).graph) == FlowClass::Flow);
    CHECK(classify_flow(gen_hn(2, 5).graph) == FlowClass::GflowOnly);
    CHECK(classify_flow(gen_hn(3, 8).graph) == FlowClass::GflowOnly);
    CHECK(classify_flow(gen_hc(2, 5).graph) == FlowClass::None);
    CHECK(to_string(FlowClass::GflowOnly) == "gflow-only");
}

TEST_CASE("a Y rewrite of an internal vertex keeps gflow existence") {
    FamilyInstance inst = gen_hn(2, 5);
    RewriteResult r = measure_y(inst.graph, inst.graph.vertex("v3"));
    auto gf = find_gflow(r.graph);
    REQUIRE(gf.has_value());
    CHECK(verify_gflow(r.graph, *gf).ok);
    CHECK(gf->corrector.at(r.graph.vertex("i1")) == VertexList{r.graph.vertex("v1")});
}

} // TEST_SUITE
