#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mbqc/errors.hpp"
#include "mbqc/generators.hpp"
#include "mbqc/simulate.hpp"
#include "oracles.hpp"

using namespace mbqc;

namespace {

// angle slots in non-output canonical order, outputs left empty
std::vector<std::optional<Angle>> slots(const OpenGraph& g, std::vector<Angle> per) {
    std::vector<std::optional<Angle>> a(g.size());
    REQUIRE(per.size() == g.non_outputs().size());
    for (std::size_t k = 0; k < per.size(); ++k) a[g.non_outputs()[k]] = per[k];
    return a;
}

VertexList layer_order(const OpenGraph& g, const std::vector<int>& layer) {
    VertexList order = g.non_outputs();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return layer[a] > layer[b]; });
    return order;
}

void check_against_dense(const MeasurementPattern& p, const VertexList& order,
                         const Corrections& c) {
    Schedule s = lazy_schedule(p.graph, order);
    std::size_t k = p.graph.non_outputs().size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(bits));
        State dense = test::dense_reference_run(p, order, c, bits);
        CHECK(state_distance(r.output_state, dense) < 1e-12);
    }
}

} // namespace

TEST_SUITE("simulate") {

TEST_CASE("a two-vertex path at angle zero teleports plus into zero") {
    FamilyInstance inst = gen_linear_cluster(2);
    MeasurementPattern p{inst.graph, slots(inst.graph, {Angle::pi_times(0)}), {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule s = lazy_schedule(inst.graph, {0});
    State zero{1.0, 0.0};
    for (std::uint64_t bits = 0; bits < 2; ++bits) {
        RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(bits));
        CHECK(state_distance(r.output_state, zero) < 1e-12);
        CHECK(r.outcomes.at(0) == static_cast<int>(bits));
        CHECK(r.peak_live == 2);
    }
}

TEST_CASE("a three-vertex path at angle zero is the identity on plus") {
    FamilyInstance inst = gen_linear_cluster(3);
    MeasurementPattern p{
        inst.graph, slots(inst.graph, {Angle::pi_times(0), Angle::pi_times(0)}), {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule s = lazy_schedule(inst.graph, {0, 1});
    State plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    for (std::uint64_t bits = 0; bits < 4; ++bits) {
        RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(bits));
        CHECK(state_distance(r.output_state, plus) < 1e-12);
    }
}

TEST_CASE("streamed runs match the dense reference on a path") {
    FamilyInstance inst = gen_linear_cluster(3);
    MeasurementPattern p{
        inst.graph, slots(inst.graph, {Angle::pi_times(1, 4), Angle::pi_times(1, 3)}), {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    check_against_dense(p, {0, 1}, c);
    SUBCASE("also without corrections") {
        check_against_dense(p, {0, 1}, Corrections::none(inst.graph));
    }
    SUBCASE("also under an eager schedule") {
        Schedule s = eager_schedule(inst.graph, {0, 1});
        for (std::uint64_t bits = 0; bits < 4; ++bits) {
            RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(bits));
            State dense = test::dense_reference_run(p, {0, 1}, c, bits);
            CHECK(state_distance(r.output_state, dense) < 1e-12);
            CHECK(r.peak_live == 3);
        }
    }
}

TEST_CASE("streamed runs match the dense reference on the dense family") {
    FamilyInstance inst = gen_hn(2, 5);
    auto gf = find_gflow(inst.graph);
    REQUIRE(gf.has_value());
    MeasurementPattern p{
        inst.graph,
        slots(inst.graph,
              {Angle::pi_times(1, 4), Angle::pi_times(1, 5), Angle::pi_times(2, 7)}),
        {}};
    Corrections c = Corrections::from_gflow(inst.graph, *gf);
    check_against_dense(p, layer_order(inst.graph, gf->layer), c);
}

TEST_CASE("streamed runs match the dense reference on random flow graphs") {
    for (std::uint64_t seed : {3u, 8u}) {
        FamilyInstance inst = gen_random_flow_graph(2, 6, seed);
        std::vector<Angle> per;
        for (std::size_t k = 0; k < inst.graph.non_outputs().size(); ++k)
            per.push_back(Angle::pi_times(static_cast<long long>(k) + 1, 7));
        MeasurementPattern p{inst.graph, slots(inst.graph, per), {}};
        Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
        check_against_dense(p, layer_order(inst.graph, inst.flow_witness->layer), c);
    }
}

TEST_CASE("corrections make every branch agree and their absence does not") {
    FamilyInstance inst = gen_hn(2, 5);
    auto gf = find_gflow(inst.graph);
    MeasurementPattern p{
        inst.graph,
        slots(inst.graph,
              {Angle::pi_times(1, 4), Angle::pi_times(1, 5), Angle::pi_times(2, 7)}),
        {}};
    Schedule s = lazy_schedule(inst.graph, layer_order(inst.graph, gf->layer));

    Corrections c = Corrections::from_gflow(inst.graph, *gf);
    DeterminismReport rep = branch_determinism_check(p, s, c);
    CHECK(rep.branches == 8);
    CHECK(rep.deterministic);
    CHECK(rep.max_distance < 1e-9);

    DeterminismReport serial = branch_determinism_check_serial(p, s, c);
    CHECK(serial.branches == rep.branches);
    CHECK(serial.deterministic == rep.deterministic);
    CHECK(serial.max_distance == doctest::Approx(rep.max_distance).epsilon(1e-12));

    DeterminismReport bare =
        branch_determinism_check(p, s, Corrections::none(inst.graph));
    CHECK_FALSE(bare.deterministic);
    CHECK(bare.max_distance > 0.1);

    CHECK_THROWS_AS(branch_determinism_check(p, s, c, 1e-9, 2), ParameterError);
}

TEST_CASE("flow corrections keep a path deterministic") {
    FamilyInstance inst = gen_linear_cluster(4);
    MeasurementPattern p{inst.graph,
                         slots(inst.graph, {Angle::pi_times(1, 3), Angle::pi_times(1, 6),
                                            Angle::pi_times(5, 9)}),
                         {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule s = lazy_schedule(inst.graph, {0, 1, 2});
    DeterminismReport rep = branch_determinism_check(p, s, c);
    CHECK(rep.branches == 8);
    CHECK(rep.deterministic);
}

TEST_CASE("lazy and eager schedules produce the same branch states") {
    FamilyInstance inst = gen_linear_cluster(3);
    MeasurementPattern p{
        inst.graph, slots(inst.graph, {Angle::pi_times(1, 4), Angle::pi_times(1, 3)}), {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule lazy = lazy_schedule(inst.graph, {0, 1});
    Schedule eager = eager_schedule(inst.graph, {0, 1});
    EquivalenceReport rep = schedule_equivalence(p, lazy, eager, c);
    CHECK(rep.branches == 4);
    CHECK(rep.equivalent);
}

TEST_CASE("two linear extensions of the layer order are equivalent") {
    FamilyInstance inst = gen_hn(2, 5);
    auto gf = find_gflow(inst.graph);
    MeasurementPattern p{
        inst.graph,
        slots(inst.graph,
              {Angle::pi_times(1, 4), Angle::pi_times(1, 5), Angle::pi_times(2, 7)}),
        {}};
    Corrections c = Corrections::from_gflow(inst.graph, *gf);
    Vertex i1 = inst.graph.vertex("i1"), i2 = inst.graph.vertex("i2");
    Vertex v3 = inst.graph.vertex("v3");
    Schedule a = lazy_schedule(inst.graph, {i1, i2, v3});
    Schedule b = lazy_schedule(inst.graph, {i2, i1, v3});
    EquivalenceReport rep = schedule_equivalence(p, a, b, c);
    CHECK(rep.equivalent);
    CHECK(rep.max_distance < 1e-9);
}

TEST_CASE("outcome policies pick the requested branches") {
    FamilyInstance inst = gen_linear_cluster(3);
    MeasurementPattern p{
        inst.graph, slots(inst.graph, {Angle::pi_times(1, 4), Angle::pi_times(1, 3)}), {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule s = lazy_schedule(inst.graph, {0, 1});

    RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(0b10));
    CHECK(r.outcomes == std::map<Vertex, int>{{0, 0}, {1, 1}});

    RunResult m = execute(p, s, c, OutcomePolicy::forced({{0, 1}, {1, 0}}));
    CHECK(m.outcomes == std::map<Vertex, int>{{0, 1}, {1, 0}});

    CHECK_THROWS_AS(execute(p, s, c, OutcomePolicy::forced_bits(0b100)), ParameterError);
    CHECK_THROWS_AS(execute(p, s, c, OutcomePolicy::forced({{0, 1}})), ParameterError);
    CHECK_THROWS_AS(execute(p, s, c, OutcomePolicy::forced({{0, 2}, {1, 0}})),
                    ParameterError);
    CHECK_THROWS_AS(execute(p, s, c, OutcomePolicy::forced({{2, 0}})), ParameterError);
}

TEST_CASE("sampled outcomes follow the born rule on a fair coin") {
    FamilyInstance inst = gen_linear_cluster(2);
    MeasurementPattern p{inst.graph, slots(inst.graph, {Angle::pi_times(1, 2)}), {}};
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule s = lazy_schedule(inst.graph, {0});
    int ones = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        RunResult r = execute(p, s, c, OutcomePolicy::random(seed));
        ones += r.outcomes.at(0);
    }
    double freq = ones / 1000.0;
    CHECK(std::fabs(freq - 0.5) < 0.1);
}

TEST_CASE("explicit input states are honoured") {
    FamilyInstance inst = gen_linear_cluster(2);
    MeasurementPattern p{inst.graph, slots(inst.graph, {Angle::pi_times(0)}),
                         State{1.0, 0.0}}; // input starts in |0>
    Corrections c = Corrections::from_flow(inst.graph, *inst.flow_witness);
    Schedule s = lazy_schedule(inst.graph, {0});
    State plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    for (std::uint64_t bits = 0; bits < 2; ++bits) {
        RunResult r = execute(p, s, c, OutcomePolicy::forced_bits(bits));
        CHECK(state_distance(r.output_state, plus) < 1e-12);
        State dense = test::dense_reference_run(p, {0}, c, bits);
        CHECK(state_distance(r.output_state, dense) < 1e-12);
    }
}

TEST_CASE("state distance ignores phase and scale but not direction") {
    State zero{1.0, 0.0}, one{0.0, 1.0};
    CHECK(state_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(state_distance(zero, one) == doctest::Approx(1.0));
    State phased{std::polar(1.0, 0.7), 0.0};
    CHECK(state_distance(zero, phased) < 1e-15);
    State scaled{3.0, 0.0};
    CHECK(state_distance(zero, scaled) < 1e-15);
    CHECK_THROWS_AS(state_distance(zero, State{1.0}), ParameterError);
    CHECK_THROWS_AS(state_distance(State{}, State{}), ParameterError);
    CHECK_THROWS_AS(state_distance(zero, State{0.0, 0.0}), ParameterError);
}

TEST_CASE("impossible branches are reported") {
    OpenGraph g({"a", "b"}, std::vector<std::pair<std::string, std::string>>{}, {},
                {"b"});
    MeasurementPattern p{g, slots(g, {Angle::pi_times(1)}), {}};
    Schedule s = lazy_schedule(g, {0});
    CHECK_THROWS_AS(execute(p, s, Corrections::none(g), OutcomePolicy::forced_bits(0)),
                    ParameterError);
    // the other branch is certain instead
    RunResult r = execute(p, s, Corrections::none(g), OutcomePolicy::forced_bits(1));
    CHECK(r.outcomes.at(0) == 1);
}

TEST_CASE("corrections may not fire backwards in time") {
    FamilyInstance inst = gen_linear_cluster(3);
    MeasurementPattern p{
        inst.graph, slots(inst.graph, {Angle::pi_times(1, 4), Angle::pi_times(1, 3)}), {}};
    Corrections c = Corrections::none(inst.graph);
    c.x_targets[1] = {0}; // q1's outcome would correct the already measured q0
    Schedule s = lazy_schedule(inst.graph, {0, 1});
    CHECK_THROWS_AS(execute(p, s, c, OutcomePolicy::forced_bits(0b10)), ParameterError);
}

TEST_CASE("patterns validate their shape") {
    FamilyInstance inst = gen_linear_cluster(2);
    const OpenGraph& g = inst.graph;
    MeasurementPattern good{g, slots(g, {Angle::pi_times(0)}), {}};
    CHECK_NOTHROW(good.validate());

    MeasurementPattern short_angles{g, {}, {}};
    CHECK_THROWS_AS(short_angles.validate(), ParameterError);

    MeasurementPattern missing{g, {std::nullopt, std::nullopt}, {}};
    CHECK_THROWS_AS(missing.validate(), ParameterError);

    MeasurementPattern extra{g, {Angle::pi_times(0), Angle::pi_times(0)}, {}};
    CHECK_THROWS_AS(extra.validate(), ParameterError);

    MeasurementPattern badin{g, slots(g, {Angle::pi_times(0)}), State{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(badin.validate(), ParameterError);

    MeasurementPattern zeroin{g, slots(g, {Angle::pi_times(0)}), State{0.0, 0.0}};
    CHECK_THROWS_AS(zeroin.validate(), ParameterError);

    Flow missing_flow;
    CHECK_THROWS_AS(Corrections::from_flow(g, missing_flow), ParameterError);
}

} // TEST_SUITE
