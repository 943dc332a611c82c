#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "mpamo/conflicts.hpp"
#include "mpamo/sim.hpp"

using namespace mpamo;

TEST_CASE("AA vertex conflict splits into two vertex constraints") {
    Conflict c = AAVertexConflict{0, 1, Cell{2, 2}, 3};
    auto out = generate_constraints(c);
    REQUIRE(out.size() == 2);
    REQUIRE(out[0] == Constraint{VertexConstraint{0, Cell{2, 2}, 3}});
    REQUIRE(out[1] == Constraint{VertexConstraint{1, Cell{2, 2}, 3}});
}

TEST_CASE("AA edge conflict constrains both directions") {
    Conflict c = AAEdgeConflict{0, 1, Edge{Cell{0, 0}, Cell{1, 0}}, 1};
    auto out = generate_constraints(c);
    REQUIRE(out.size() == 2);
    REQUIRE(out[0] == Constraint{EdgeConstraint{0, Edge{Cell{0, 0}, Cell{1, 0}}, 1}});
    REQUIRE(out[1] == Constraint{EdgeConstraint{1, Edge{Cell{1, 0}, Cell{0, 0}}, 1}});
}

TEST_CASE("AB vertex conflict: vertex constraint on the agent, edge constraint on the pusher") {
    Conflict c = ABVertexConflict{0, 2, Cell{3, 1}, 4,
                                  Push{1, Edge{Cell{1, 1}, Cell{2, 1}}}};
    auto out = generate_constraints(c);
    REQUIRE(out.size() == 2);
    REQUIRE(out[0] == Constraint{VertexConstraint{0, Cell{3, 1}, 4}});
    REQUIRE(out[1] == Constraint{EdgeConstraint{1, Edge{Cell{1, 1}, Cell{2, 1}}, 4}});
}

TEST_CASE("AB edge conflict constrains the agent's edge and the pusher's edge") {
    Conflict c = ABEdgeConflict{1, 0, Edge{Cell{1, 0}, Cell{2, 0}}, 2,
                                Push{0, Edge{Cell{4, 0}, Cell{3, 0}}}};
    auto out = generate_constraints(c);
    REQUIRE(out.size() == 2);
    // ordered by constrained agent id
    REQUIRE(out[0] == Constraint{EdgeConstraint{0, Edge{Cell{4, 0}, Cell{3, 0}}, 2}});
    REQUIRE(out[1] == Constraint{EdgeConstraint{1, Edge{Cell{1, 0}, Cell{2, 0}}, 2}});
}

TEST_CASE("BB conflicts constrain each present pusher") {
    Conflict both = BBVertexConflict{0, 1, Cell{2, 0}, 1,
                                     Push{0, Edge{Cell{0, 0}, Cell{1, 0}}},
                                     Push{1, Edge{Cell{4, 0}, Cell{3, 0}}}};
    auto out = generate_constraints(both);
    REQUIRE(out.size() == 2);

    Conflict one = BBVertexConflict{0, 1, Cell{2, 0}, 1,
                                    Push{0, Edge{Cell{0, 0}, Cell{1, 0}}}, std::nullopt};
    out = generate_constraints(one);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0] == Constraint{EdgeConstraint{0, Edge{Cell{0, 0}, Cell{1, 0}}, 1}});
}

TEST_CASE("BPR yields a single edge constraint") {
    auto out = generate_constraints(BprViolation{0, Edge{Cell{1, 0}, Cell{2, 0}}, 2});
    REQUIRE(out.size() == 1);
    REQUIRE(out[0] == Constraint{EdgeConstraint{0, Edge{Cell{1, 0}, Cell{2, 0}}, 2}});
}

TEST_CASE("split soundness: each side of the split removes the conflict") {
    // For conflicts produced by simulation on a micro-instance, a joint path
    // obeying either generated constraint cannot reproduce the identical
    // conflict step.
    auto inst = test_helpers::instance({".B...", ".....", "....."},
                                       {{Cell{0, 0}, Cell{4, 0}}, {Cell{0, 1}, Cell{4, 1}}});
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int round = 0; round < 300 && checked < 40; ++round) {
        JointPath jp = test_helpers::random_walk(inst, 5, rng);
        SimResult res = sim_and_conflict_check(inst, jp);
        if (res.clean() || res.bpr) continue;
        auto constraints = generate_constraints(*res.conflict);
        ++checked;
        for (const Constraint& w : constraints) {
            // the offending joint path must violate each constraint
            int agent = constrained_agent(w);
            if (w.index() == 0) {
                const auto& v = std::get<VertexConstraint>(w);
                REQUIRE(position_at(jp[agent], v.time) == v.cell);
            } else {
                const auto& e = std::get<EdgeConstraint>(w);
                REQUIRE(position_at(jp[agent], e.time - 1) == e.edge.from);
                REQUIRE(position_at(jp[agent], e.time) == e.edge.to);
            }
        }
    }
    REQUIRE(checked >= 20);
}
