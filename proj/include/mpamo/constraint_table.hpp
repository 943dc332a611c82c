#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "mpamo/conflicts.hpp"
#include "mpamo/core.hpp"

namespace mpamo {

// Constraints of a single agent, indexed for the low-level search loops.
class ConstraintTable {
public:
    ConstraintTable() = default;

    ConstraintTable(const Cell& goal, const std::vector<Constraint>& constraints, int agent) {
        for (const Constraint& c : constraints) {
            if (constrained_agent(c) != agent) continue;
            if (c.index() == 0) {
                const auto& v = std::get<VertexConstraint>(c);
                vertex_.insert(key(v.cell, v.time));
                if (v.cell == goal && v.time > latest_goal_vertex_) latest_goal_vertex_ = v.time;
                if (v.time > max_time_) max_time_ = v.time;
            } else {
                const auto& e = std::get<EdgeConstraint>(c);
                edge_.insert(edge_key(e.edge, e.time));
                if (e.time > max_time_) max_time_ = e.time;
            }
        }
    }

    bool vertex_blocked(const Cell& c, int t) const {
        return vertex_.count(key(c, t)) != 0;
    }
    bool edge_blocked(const Cell& from, const Cell& to, int t) const {
        return edge_.count(edge_key(Edge{from, to}, t)) != 0;
    }

    // Arrival at the goal must be strictly later than every vertex
    // constraint placed on it (the agent rests there forever).
    int latest_goal_vertex_time() const { return latest_goal_vertex_; }
    int max_time() const { return max_time_; }

private:
    std::uint64_t key(const Cell& c, int t) const {
        return (std::uint64_t(std::uint32_t(t)) << 40) |
               (std::uint64_t(std::uint32_t(c.y)) << 20) | std::uint32_t(c.x);
    }
    std::uint64_t edge_key(const Edge& e, int t) const {
        return hash_mix(key(e.from, t), key(e.to, 0));
    }

    int latest_goal_vertex_ = -1;
    int max_time_ = 0;
    std::unordered_set<std::uint64_t> vertex_;
    std::unordered_set<std::uint64_t> edge_;
};

}  // namespace mpamo
