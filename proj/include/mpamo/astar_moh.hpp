#pragma once

#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "mpamo/budget.hpp"
#include "mpamo/constraint_table.hpp"
#include "mpamo/core.hpp"
#include "mpamo/heuristic.hpp"

namespace mpamo {

enum class PlanFailure { none, exhausted, timeout };

struct PlanResult {
    TimedPath path;                          // empty on failure
    PlanFailure failure = PlanFailure::none;
    std::uint64_t expansions = 0;

    bool ok() const { return failure == PlanFailure::none; }
};

// Minimum-arrival-time single-agent search in space-time under vertex/edge
// constraints, ignoring all boxes (the CBS-MOH low-level). Tie-breaking:
// among equal f, larger g first, then insertion order (successors are
// generated E,W,S,N with wait last).
inline PlanResult plan_moh(const GridMap& map, const Cell& start, const Cell& goal,
                           const ConstraintTable& ct, int horizon,
                           const DistanceField& dist_to_goal, SearchBudget& budget) {
    PlanResult res;
    if (!dist_to_goal.reachable(start)) {
        res.failure = PlanFailure::exhausted;
        return res;
    }

    struct Node {
        Cell cell;
        int t;
        int parent;
    };
    struct QEntry {
        int f;
        int g;
        std::uint64_t seq;
        int node;
        bool operator>(const QEntry& o) const {
            if (f != o.f) return f > o.f;
            if (g != o.g) return g < o.g;  // deeper first
            return seq > o.seq;
        }
    };

    // Beyond the last constraint time the time component is irrelevant;
    // collapsing it keeps wait chains from flooding the closed set.
    const int t_collapse = ct.max_time() + 1;
    auto state_key = [&](const Cell& c, int t) {
        int tc = t < t_collapse ? t : t_collapse;
        return (std::uint64_t(std::uint32_t(tc)) << 40) |
               (std::uint64_t(std::uint32_t(c.y)) << 20) | std::uint32_t(c.x);
    };

    std::vector<Node> nodes;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> open;
    std::unordered_set<std::uint64_t> closed;
    std::uint64_t seq = 0;

    nodes.push_back(Node{start, 0, -1});
    open.push(QEntry{dist_to_goal.at(start), 0, seq++, 0});

    while (!open.empty()) {
        if (budget.exhausted()) {
            res.failure = PlanFailure::timeout;
            return res;
        }
        QEntry top = open.top();
        open.pop();
        Node cur = nodes[top.node];
        if (!closed.insert(state_key(cur.cell, cur.t)).second) continue;
        ++res.expansions;
        budget.charge(SearchBudget::kMohExpansion);

        if (cur.cell == goal && cur.t > ct.latest_goal_vertex_time()) {
            TimedPath path(cur.t + 1);
            for (int n = top.node; n != -1; n = nodes[n].parent) path[nodes[n].t] = nodes[n].cell;
            res.path = std::move(path);
            return res;
        }
        if (cur.t >= horizon) continue;

        const int nt = cur.t + 1;
        auto try_push = [&](const Cell& nc, bool is_move) {
            if (is_move && (!map.in_bounds(nc) || map.is_static(nc))) return;
            if (!dist_to_goal.reachable(nc)) return;
            if (ct.vertex_blocked(nc, nt)) return;
            if (is_move && ct.edge_blocked(cur.cell, nc, nt)) return;
            if (closed.count(state_key(nc, nt))) return;
            nodes.push_back(Node{nc, nt, top.node});
            open.push(QEntry{nt + dist_to_goal.at(nc), nt, seq++, int(nodes.size()) - 1});
        };
        for (int d = 0; d < kNumDirs; ++d)
            try_push(Cell{cur.cell.x + kDirDx[d], cur.cell.y + kDirDy[d]}, true);
        try_push(cur.cell, false);
    }
    res.failure = PlanFailure::exhausted;
    return res;
}

}  // namespace mpamo
