#pragma once

#include <cstdint>
#include <queue>
#include <unordered_set>
#include <vector>

#include "mpamo/astar_moh.hpp"
#include "mpamo/budget.hpp"
#include "mpamo/constraint_table.hpp"
#include "mpamo/core.hpp"
#include "mpamo/dynamic_obstacles.hpp"
#include "mpamo/heuristic.hpp"

namespace mpamo {

// Agent-and-box state in the time-augmented configuration space.
struct PamoState {
    Cell cell;
    BoxConfig boxes;  // sparse delta over the instance's initial boxes
    int t = 0;

    friend bool operator==(const PamoState& a, const PamoState& b) {
        return a.t == b.t && a.cell == b.cell && a.boxes == b.boxes;
    }
};

struct PamoStateHash {
    std::size_t operator()(const PamoState& s) const {
        std::uint64_t h = hash_mix(std::uint64_t(std::uint32_t(s.t)),
                                   (std::uint64_t(std::uint32_t(s.cell.x)) << 32) |
                                       std::uint32_t(s.cell.y));
        return std::size_t(hash_mix(h, s.boxes.hash()));
    }
};

struct PamoStats {
    std::uint64_t expansions = 0;
    std::uint64_t guard_calls = 0;
};

// Successor states of `state` for actions E,W,S,N,wait, applying push
// conditions, the constraint filter, dynamic obstacles and the
// NoAffectPlannedPaths guard. Filtering only; never fails.
inline std::vector<PamoState> pamo_successors(const Instance& inst, const PamoState& state,
                                              const ConstraintTable& ct,
                                              const DynamicObstacles* dyn,
                                              const std::vector<TimedPath>* hp_guard,
                                              PamoStats* stats = nullptr,
                                              SearchBudget* budget = nullptr) {
    std::vector<PamoState> out;
    const int nt = state.t + 1;
    auto consider = [&](const Cell& target, bool is_move) {
        if (is_move && !inst.map.passable(target)) return;
        BoxConfig next_boxes = state.boxes;
        if (is_move) {
            if (auto box = state.boxes.occupant(target, inst)) {
                Cell pt = push_target(state.cell, target);
                // push condition (iii): target cell must be free space
                if (!inst.map.passable(pt)) return;
                if (state.boxes.occupant(pt, inst)) return;  // no chain pushes
                if (dyn && dyn->agent_at(pt, nt)) return;
                if (dyn && dyn->box_at(pt, nt)) return;
                if (hp_guard) {
                    auto g = detail::guard_scan(pt, nt, *hp_guard);
                    if (stats) ++stats->guard_calls;
                    if (budget)
                        budget->charge(SearchBudget::kGuardBase +
                                       SearchBudget::kGuardPerCell * g.cells_scanned);
                    if (!g.ok) return;
                }
                next_boxes = state.boxes.with(*box, pt, inst.boxes);
            }
        }
        if (ct.vertex_blocked(target, nt)) return;
        if (is_move && ct.edge_blocked(state.cell, target, nt)) return;
        if (dyn && dyn->agent_at(target, nt)) return;
        if (dyn && is_move && dyn->agent_swap(state.cell, target, nt)) return;
        if (dyn && dyn->box_at(target, nt)) return;
        out.push_back(PamoState{target, std::move(next_boxes), nt});
    };
    for (int d = 0; d < kNumDirs; ++d)
        consider(Cell{state.cell.x + kDirDx[d], state.cell.y + kDirDy[d]}, true);
    consider(state.cell, false);
    return out;
}

// ST-PAMO*: best-first search over PamoState with cost = t and the
// boxes-ignored BFS distance as heuristic. Returns the agent's cell sequence
// only; box motion is re-derivable by simulation. Every low-level call
// starts from the instance's initial box configuration.
inline PlanResult plan_st_pamo(const Instance& inst, int agent, const ConstraintTable& ct,
                               const DynamicObstacles* dyn,
                               const std::vector<TimedPath>* hp_guard, int horizon,
                               const DistanceField& dist_to_goal, SearchBudget& budget,
                               PamoStats* stats_out = nullptr) {
    PlanResult res;
    PamoStats stats;
    const Cell start = inst.agents[agent].start;
    const Cell goal = inst.agents[agent].goal;
    if (!dist_to_goal.reachable(start)) {
        res.failure = PlanFailure::exhausted;
        return res;
    }

    struct Node {
        PamoState state;
        int parent;
    };
    struct QEntry {
        int f;
        int g;
        std::uint64_t seq;
        int node;
        bool operator>(const QEntry& o) const {
            if (f != o.f) return f > o.f;
            if (g != o.g) return g < o.g;
            return seq > o.seq;
        }
    };

    std::vector<Node> nodes;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> open;
    // Keyed on (cell, canonical delta, t); with cost = t a state can never be
    // rediscovered cheaper, so visited-at-generation is exact.
    std::unordered_set<PamoState, PamoStateHash> visited;
    std::uint64_t seq = 0;

    PamoState root{start, BoxConfig{}, 0};
    visited.insert(root);
    nodes.push_back(Node{root, -1});
    open.push(QEntry{dist_to_goal.at(start), 0, seq++, 0});

    while (!open.empty()) {
        if (budget.exhausted()) {
            res.failure = PlanFailure::timeout;
            if (stats_out) *stats_out = stats;
            res.expansions = stats.expansions;
            return res;
        }
        QEntry top = open.top();
        open.pop();
        const Node cur = nodes[top.node];  // copy; nodes may reallocate below
        ++stats.expansions;
        budget.charge(SearchBudget::kPamoExpansion);

        if (cur.state.cell == goal && cur.state.t > ct.latest_goal_vertex_time()) {
            TimedPath path(cur.state.t + 1);
            for (int n = top.node; n != -1; n = nodes[n].parent)
                path[nodes[n].state.t] = nodes[n].state.cell;
            res.path = std::move(path);
            res.expansions = stats.expansions;
            if (stats_out) *stats_out = stats;
            return res;
        }
        if (cur.state.t >= horizon) continue;

        for (PamoState& s : pamo_successors(inst, cur.state, ct, dyn, hp_guard, &stats, &budget)) {
            if (!visited.insert(s).second) continue;
            int f = s.t + dist_to_goal.at(s.cell);
            nodes.push_back(Node{std::move(s), top.node});
            open.push(QEntry{f, nodes.back().state.t, seq++, int(nodes.size()) - 1});
        }
    }
    res.failure = PlanFailure::exhausted;
    res.expansions = stats.expansions;
    if (stats_out) *stats_out = stats;
    return res;
}

}  // namespace mpamo
