#pragma once

#include <deque>
#include <limits>
#include <vector>

#include "mpamo/core.hpp"

namespace mpamo {

inline constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

// Exact BFS distance-to-goal over the static map, ignoring boxes and agents.
// Admissible for every planner here: pushing never shortens the pusher's own
// route.
class DistanceField {
public:
    DistanceField() = default;
    DistanceField(const GridMap& map, const Cell& goal)
        : width_(map.width()), dist_(map.size(), kUnreachable) {
        std::deque<Cell> queue;
        if (map.passable(goal)) {
            dist_[map.index(goal)] = 0;
            queue.push_back(goal);
        }
        while (!queue.empty()) {
            Cell c = queue.front();
            queue.pop_front();
            int d = dist_[map.index(c)];
            for (int k = 0; k < kNumDirs; ++k) {
                Cell n{c.x + kDirDx[k], c.y + kDirDy[k]};
                if (!map.passable(n)) continue;
                if (dist_[map.index(n)] <= d + 1) continue;
                dist_[map.index(n)] = d + 1;
                queue.push_back(n);
            }
        }
    }

    int at(const Cell& c) const { return dist_[std::size_t(c.y) * width_ + c.x]; }
    bool reachable(const Cell& c) const { return at(c) < kUnreachable; }

private:
    int width_ = 0;
    std::vector<int> dist_;
};

}  // namespace mpamo
