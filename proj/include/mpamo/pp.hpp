#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "mpamo/cbs.hpp"
#include "mpamo/dynamic_obstacles.hpp"
#include "mpamo/sim.hpp"
#include "mpamo/st_pamo.hpp"

namespace mpamo {

// PP-PAMO*: fixed-priority sequential planning. Earlier agents' paths become
// dynamic obstacles for later ones, and NoAffectPlannedPaths forbids pushes
// onto any cell a planned agent still needs. Each agent plans against the
// instance's initial boxes, so the assembled joint path is re-simulated at
// the end; a residual conflict is a failure, not a solution.
inline SolveOutput solve_pp(const Instance& inst, const SolverConfig& cfg = {}) {
    SolveOutput out;
    SolveStats& st = out.stats;
    SearchBudget budget(cfg.time_limit_ms);
    const int A = inst.num_agents();
    const int area = inst.map.width() * inst.map.height();

    std::vector<int> order = cfg.priority_order;
    if (order.empty()) {
        order.resize(A);
        std::iota(order.begin(), order.end(), 0);
    }

    DynamicObstacles dyn;
    JointPath solution(A);
    for (int k = 0; k < A; ++k) {
        const int agent = order[k];
        if (cfg.include_hp_box_occupancy && k > 0) {
            // Box occupancy induced by the planned prefix, obtained by joint
            // simulation of those agents alone.
            Instance prefix = inst;
            prefix.agents.clear();
            JointPath prefix_paths;
            for (int j = 0; j < k; ++j) {
                prefix.agents.push_back(inst.agents[order[j]]);
                prefix_paths.push_back(dyn.agent_paths[j]);
            }
            SimResult sim = sim_and_conflict_check(prefix, prefix_paths);
            budget.charge(SearchBudget::kSimStep * std::uint64_t(makespan(prefix_paths) + 1));
            if (!sim.clean()) {
                st.outcome = Outcome::stuck;
                st.detail = "planned prefix is not box-consistent before agent " +
                            std::to_string(agent) + ": " +
                            (sim.bpr ? to_string(*sim.bpr) : to_string(*sim.conflict));
                st.runtime_ms = budget.used_ms();
                return out;
            }
            dyn.box_cells.clear();
            for (const BoxConfig& bc : sim.box_trajectory)
                dyn.box_cells.push_back(bc.all_positions(prefix));
        }

        DistanceField dist(inst.map, inst.agents[agent].goal);
        ConstraintTable ct;  // PP adds no constraints
        int horizon = cfg.horizon_factor * area;
        ++st.ll_calls;
        PamoStats pstats;
        PlanResult r = plan_st_pamo(inst, agent, ct, k > 0 ? &dyn : nullptr,
                                    k > 0 ? &dyn.agent_paths : nullptr, horizon, dist, budget,
                                    &pstats);
        st.ll_expansions += pstats.expansions;
        st.guard_calls += pstats.guard_calls;
        if (r.failure == PlanFailure::timeout) {
            st.outcome = Outcome::timeout;
            st.runtime_ms = budget.used_ms();
            return out;
        }
        if (!r.ok()) {
            st.outcome = Outcome::stuck;
            st.detail = "no path for agent " + std::to_string(agent) + " (priority " +
                        std::to_string(k) + ") against higher-priority traffic";
            st.runtime_ms = budget.used_ms();
            return out;
        }
        dyn.agent_paths.push_back(r.path);
        solution[agent] = std::move(r.path);
    }

    SimResult sim = sim_and_conflict_check(inst, solution);
    budget.charge(SearchBudget::kSimStep * std::uint64_t(makespan(solution) + 1));
    if (!sim.clean()) {
        st.outcome = Outcome::stuck;
        st.detail = "assembled joint path fails validation: " +
                    (sim.bpr ? to_string(*sim.bpr) : to_string(*sim.conflict));
        st.runtime_ms = budget.used_ms();
        return out;
    }
    out.solution = std::move(solution);
    st.outcome = Outcome::solved;
    st.runtime_ms = budget.used_ms();
    return out;
}

}  // namespace mpamo
