#pragma once

#include <cstdint>
#include <vector>

#include "mpamo/core.hpp"

namespace mpamo {

// Trajectories of already-planned (higher-priority) agents, stay-at-goal
// extended, plus optionally the box occupancy those agents induce.
struct DynamicObstacles {
    std::vector<TimedPath> agent_paths;
    // box cells per timestep (index t, clamped to the last entry afterwards);
    // empty when box occupancy is not tracked
    std::vector<std::vector<Cell>> box_cells;

    bool agent_at(const Cell& c, int t) const {
        for (const TimedPath& p : agent_paths)
            if (position_at(p, t) == c) return true;
        return false;
    }

    bool agent_swap(const Cell& from, const Cell& to, int t_arrive) const {
        for (const TimedPath& p : agent_paths)
            if (position_at(p, t_arrive - 1) == to && position_at(p, t_arrive) == from)
                return true;
        return false;
    }

    bool box_at(const Cell& c, int t) const {
        if (box_cells.empty()) return false;
        const auto& cells =
            box_cells[std::size_t(t) < box_cells.size() ? std::size_t(t) : box_cells.size() - 1];
        for (const Cell& b : cells)
            if (b == c) return true;
        return false;
    }
};

namespace detail {

struct GuardOutcome {
    bool ok;
    std::uint64_t cells_scanned;
};

// Deliberately a linear scan over the planned paths — this check runs on
// every push successor and its cost is part of the planner's reported work.
inline GuardOutcome guard_scan(const Cell& box_cell, int t,
                               const std::vector<TimedPath>& higher_paths) {
    GuardOutcome out{true, 0};
    for (const TimedPath& p : higher_paths) {
        if (p.back() == box_cell) {  // rests there forever
            out.ok = false;
            return out;
        }
        for (int tau = t; tau < int(p.size()); ++tau) {
            ++out.cells_scanned;
            if (p[tau] == box_cell) {
                out.ok = false;
                return out;
            }
        }
    }
    return out;
}

}  // namespace detail

// True iff no higher-priority agent occupies box_new_cell at any time >= t.
// Conservative: the box is assumed to rest there forever once pushed.
inline bool no_affect_planned_paths(const Cell& box_new_cell, int t,
                                    const std::vector<TimedPath>& higher_paths) {
    return detail::guard_scan(box_new_cell, t, higher_paths).ok;
}

}  // namespace mpamo
