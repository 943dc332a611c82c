#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "mpamo/astar_moh.hpp"
#include "mpamo/budget.hpp"
#include "mpamo/conflicts.hpp"
#include "mpamo/core.hpp"
#include "mpamo/heuristic.hpp"
#include "mpamo/sim.hpp"
#include "mpamo/st_pamo.hpp"

namespace mpamo {

enum class Outcome { solved, timeout, stuck, infeasible_root };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::solved: return "solved";
        case Outcome::timeout: return "timeout";
        case Outcome::stuck: return "stuck";
        default: return "infeasible-root";
    }
}

struct SolveStats {
    std::uint64_t hl_generated = 0;  // CT nodes queued, root included
    std::uint64_t hl_expanded = 0;   // CT nodes popped and checked
    std::uint64_t ll_calls = 0;
    std::uint64_t ll_expansions = 0;
    std::uint64_t guard_calls = 0;   // NoAffectPlannedPaths invocations (PP)
    std::uint64_t runtime_ms = 0;    // virtual, see budget.hpp
    Outcome outcome = Outcome::stuck;
    std::string detail;              // human-readable failure info
};

struct SolverConfig {
    std::uint64_t time_limit_ms = 60000;
    int horizon_factor = 2;
    // pp only:
    bool include_hp_box_occupancy = false;
    std::vector<int> priority_order;  // empty = instance order
};

struct SolveOutput {
    std::optional<JointPath> solution;
    SolveStats stats;
};

enum class LowLevel { moh, mol };

namespace detail {

struct CTNode {
    JointPath paths;
    int cost = 0;
    std::optional<Constraint> added;  // constraint introduced at this node
    int parent = -1;
    int depth = 0;
    int n_constraints = 0;
};

inline std::vector<Constraint> constraints_for(const std::vector<CTNode>& arena, int node,
                                               int agent) {
    std::vector<Constraint> out;
    for (int n = node; n != -1; n = arena[n].parent)
        if (arena[n].added && constrained_agent(*arena[n].added) == agent)
            out.push_back(*arena[n].added);
    return out;
}

inline bool chain_contains(const std::vector<CTNode>& arena, int node, const Constraint& c) {
    for (int n = node; n != -1; n = arena[n].parent)
        if (arena[n].added && *arena[n].added == c) return true;
    return false;
}

}  // namespace detail

// High-level of CBS-MOH and CBS-MOL (they differ only in the low-level
// plug). OPEN is ordered by cost, then fewer constraints, then insertion.
// A child whose constraint already exists on its branch would replicate its
// parent exactly; such branches are closed as stuck instead of looping.
inline SolveOutput solve_cbs(const Instance& inst, LowLevel low_level,
                             const SolverConfig& cfg = {}) {
    SolveOutput out;
    SolveStats& st = out.stats;
    SearchBudget budget(cfg.time_limit_ms);
    const int A = inst.num_agents();
    const int area = inst.map.width() * inst.map.height();

    std::vector<DistanceField> dist;
    dist.reserve(A);
    for (int i = 0; i < A; ++i) dist.emplace_back(inst.map, inst.agents[i].goal);

    auto replan = [&](int node, int agent, const std::vector<detail::CTNode>& arena,
                      const std::optional<Constraint>& extra) -> PlanResult {
        std::vector<Constraint> cs = detail::constraints_for(arena, node, agent);
        if (extra) cs.push_back(*extra);
        ConstraintTable ct(inst.agents[agent].goal, cs, agent);
        int horizon = ct.max_time() + cfg.horizon_factor * area;
        ++st.ll_calls;
        PlanResult r;
        if (low_level == LowLevel::moh) {
            r = plan_moh(inst.map, inst.agents[agent].start, inst.agents[agent].goal, ct, horizon,
                         dist[agent], budget);
        } else {
            r = plan_st_pamo(inst, agent, ct, nullptr, nullptr, horizon, dist[agent], budget);
        }
        st.ll_expansions += r.expansions;
        return r;
    };

    std::vector<detail::CTNode> arena;
    arena.emplace_back();
    detail::CTNode& root = arena.back();
    root.paths.resize(A);
    for (int i = 0; i < A; ++i) {
        PlanResult r = replan(0, i, arena, std::nullopt);
        if (r.failure == PlanFailure::timeout) {
            st.outcome = Outcome::timeout;
            st.runtime_ms = budget.used_ms();
            return out;
        }
        if (!r.ok()) {
            st.outcome = Outcome::infeasible_root;
            st.detail = "no path for agent " + std::to_string(i) + " with empty constraints";
            st.runtime_ms = budget.used_ms();
            return out;
        }
        arena[0].paths[i] = std::move(r.path);
    }
    arena[0].cost = sum_of_costs(arena[0].paths);

    struct QEntry {
        int cost;
        int n_constraints;
        std::uint64_t seq;
        int node;
        bool operator>(const QEntry& o) const {
            if (cost != o.cost) return cost > o.cost;
            if (n_constraints != o.n_constraints) return n_constraints > o.n_constraints;
            return seq > o.seq;
        }
    };
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> open;
    std::uint64_t seq = 0;
    open.push(QEntry{arena[0].cost, 0, seq++, 0});
    ++st.hl_generated;

    std::uint64_t stuck_closed = 0;
    while (!open.empty()) {
        if (budget.exhausted()) {
            st.outcome = Outcome::timeout;
            st.runtime_ms = budget.used_ms();
            return out;
        }
        QEntry top = open.top();
        open.pop();
        ++st.hl_expanded;
        budget.charge(SearchBudget::kHighLevelNode);

        SimResult sim = sim_and_conflict_check(inst, arena[top.node].paths);
        budget.charge(SearchBudget::kSimStep *
                      std::uint64_t(makespan(arena[top.node].paths) + 1));
        if (sim.clean()) {
            out.solution = arena[top.node].paths;
            st.outcome = Outcome::solved;
            st.runtime_ms = budget.used_ms();
            return out;
        }

        std::vector<Constraint> branch =
            sim.bpr ? generate_constraints(*sim.bpr) : generate_constraints(*sim.conflict);
        for (const Constraint& w : branch) {
            if (detail::chain_contains(arena, top.node, w)) {
                ++stuck_closed;  // child would equal its parent; non-progress
                continue;
            }
            int agent = constrained_agent(w);
            PlanResult r = replan(top.node, agent, arena, w);
            if (r.failure == PlanFailure::timeout) {
                st.outcome = Outcome::timeout;
                st.runtime_ms = budget.used_ms();
                return out;
            }
            if (!r.ok()) continue;  // prune child
            detail::CTNode child;
            child.paths = arena[top.node].paths;
            child.paths[agent] = std::move(r.path);
            child.cost = sum_of_costs(child.paths);
            child.added = w;
            child.parent = top.node;
            child.depth = arena[top.node].depth + 1;
            child.n_constraints = arena[top.node].n_constraints + 1;
            arena.push_back(std::move(child));
            open.push(QEntry{arena.back().cost, arena.back().n_constraints, seq++,
                             int(arena.size()) - 1});
            ++st.hl_generated;
        }
    }
    st.outcome = Outcome::stuck;
    st.detail = "constraint tree exhausted (" + std::to_string(stuck_closed) +
                " stuck branches closed)";
    st.runtime_ms = budget.used_ms();
    return out;
}

}  // namespace mpamo
