#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "helpers.hpp"
#include "mpamo/oracle.hpp"
#include "mpamo/sim.hpp"

using namespace mpamo;
using test_helpers::instance;

TEST_CASE("oracle: single agent, no boxes, Manhattan distance") {
    auto inst = instance({"...", "...", "..."}, {{Cell{0, 0}, Cell{2, 2}}});
    auto res = solve_exact(inst);
    REQUIRE(res.solved());
    REQUIRE(res.soc == 4);
    REQUIRE(validate_solution(inst, res.witness).ok);
}

TEST_CASE("oracle: push-through corridor costs 2") {
    auto inst = instance({".B.."}, {{Cell{0, 0}, Cell{2, 0}}});
    auto res = solve_exact(inst);
    REQUIRE(res.solved());
    REQUIRE(res.soc == 2);
    REQUIRE(validate_solution(inst, res.witness).ok);
}

TEST_CASE("oracle: trapped box makes the goal unreachable") {
    auto inst = instance({".B."}, {{Cell{0, 0}, Cell{2, 0}}});
    OracleLimits limits;
    limits.horizon = 20;
    auto res = solve_exact(inst, limits);
    REQUIRE(res.status == OracleResult::Status::infeasible_within_horizon);
}

TEST_CASE("oracle: crossing agents, one waits") {
    auto inst = instance({"...", "...", "..."},
                         {{Cell{0, 1}, Cell{2, 1}}, {Cell{1, 0}, Cell{1, 2}}});
    auto res = solve_exact(inst);
    REQUIRE(res.solved());
    REQUIRE(res.soc == 5);
    REQUIRE(validate_solution(inst, res.witness).ok);
}

TEST_CASE("oracle: agent already at goal contributes zero") {
    auto inst = instance({"...", "..."},
                         {{Cell{0, 0}, Cell{0, 0}}, {Cell{1, 0}, Cell{2, 0}}});
    auto res = solve_exact(inst);
    REQUIRE(res.solved());
    REQUIRE(res.soc == 1);
    REQUIRE(res.witness[0] == TimedPath{Cell{0, 0}});
}

TEST_CASE("oracle: ducking off the goal charges the full arrival time") {
    // agent 1 starts on its goal, which is the only passage for agent 0; it
    // waits, ducks into the pocket while agent 0 passes, and returns. The
    // wait spent on the goal before leaving must be charged retroactively:
    // its arrival is 3, not the 2 a naive step-count would report.
    auto inst = instance({".....", "@@.@@"},
                         {{Cell{0, 0}, Cell{4, 0}}, {Cell{2, 0}, Cell{2, 0}}});
    auto res = solve_exact(inst);
    REQUIRE(res.solved());
    REQUIRE(res.soc == 7);  // 4 for agent 0, 3 for agent 1
    REQUIRE(validate_solution(inst, res.witness).ok);
    REQUIRE(sum_of_costs(res.witness) == res.soc);
}

TEST_CASE("oracle: state bound refusal is explicit") {
    Instance inst;
    inst.map = GridMap(32, 32);
    for (int i = 0; i < 6; ++i)
        inst.agents.push_back(AgentTask{Cell{i, 0}, Cell{i, 31}});
    inst.validate();
    OracleLimits limits;
    limits.state_cap = 1000;
    auto res = solve_exact(inst, limits);
    REQUIRE(res.status == OracleResult::Status::state_bound_exceeded);
}

TEST_CASE("oracle transitions agree with the simulator's clean-step predicate") {
    // mini version of the exhaustive acceptance check: empty 3x3, 2 agents,
    // 1 box; every legal oracle step must simulate clean and vice versa
    GridMap map(3, 3);
    std::vector<Cell> cells;
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) cells.push_back(Cell{x, y});

    int steps_checked = 0, legal_steps = 0;
    for (const Cell& box : cells)
        for (const Cell& a0 : cells)
            for (const Cell& a1 : cells) {
                if (a0 == box || a1 == box || a0 == a1) continue;
                Instance inst;
                inst.map = map;
                // goals play no role in step legality; park them anywhere distinct
                inst.agents = {{a0, Cell{0, 0}}, {a1, Cell{2, 2}}};
                inst.boxes = {box};
                for (int d0 = 0; d0 <= kNumDirs; ++d0)
                    for (int d1 = 0; d1 <= kNumDirs; ++d1) {
                        auto dest = [&](const Cell& c, int d) {
                            return d == kNumDirs ? c
                                                 : Cell{c.x + kDirDx[d], c.y + kDirDy[d]};
                        };
                        Cell n0 = dest(a0, d0), n1 = dest(a1, d1);
                        if (!map.in_bounds(n0) || !map.in_bounds(n1)) continue;

                        oracle_detail::JointState cur;
                        cur.agents = {a0, a1};
                        cur.boxes = {box};
                        cur.last_off = {0, 0};
                        std::vector<Cell> agents_next, boxes_next;
                        bool oracle_legal = oracle_detail::apply_joint_action(
                            inst, cur, {d0, d1}, agents_next, boxes_next);

                        bool sim_clean;
                        {
                            std::map<int, Push> pushes;
                            BoxConfig prev_cfg;
                            BoxConfig moved = sim_step(inst, prev_cfg, {a0, a1}, {n0, n1}, pushes);
                            sim_clean =
                                !check(inst, prev_cfg, moved, {a0, a1}, {n0, n1}, pushes, 1)
                                     .has_value();
                        }
                        ++steps_checked;
                        if (oracle_legal) ++legal_steps;
                        REQUIRE(oracle_legal == sim_clean);
                    }
            }
    REQUIRE(steps_checked > 5000);
    REQUIRE(legal_steps > 1000);
}
