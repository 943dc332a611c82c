#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpamo {

// 64-bit mix, used by all hashers so containers never depend on libstdc++'s
// default hash quality.
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    v ^= v >> 31;
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct Cell {
    int x = 0;  // column
    int y = 0;  // row

    friend bool operator==(const Cell& a, const Cell& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
    friend bool operator<(const Cell& a, const Cell& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
    friend std::ostream& operator<<(std::ostream& os, const Cell& c) {
        return os << "(" << c.x << "," << c.y << ")";
    }
};

struct CellHash {
    std::size_t operator()(const Cell& c) const {
        return static_cast<std::size_t>(
            hash_mix(0x5bd1e995, (std::uint64_t(std::uint32_t(c.x)) << 32) | std::uint32_t(c.y)));
    }
};

// Deterministic neighbor order: E, W, S, N (fixes tie-breaking everywhere).
inline constexpr int kNumDirs = 4;
inline constexpr int kDirDx[kNumDirs] = {1, -1, 0, 0};
inline constexpr int kDirDy[kNumDirs] = {0, 0, 1, -1};

class GridMap {
public:
    GridMap() = default;
    GridMap(int width, int height, std::vector<Cell> static_obstacles = {})
        : width_(width), height_(height), blocked_(std::size_t(width) * height, 0) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GridMap: non-positive dimensions");
        for (const Cell& c : static_obstacles) {
            if (!in_bounds(c)) throw std::invalid_argument("GridMap: obstacle out of bounds");
            blocked_[index(c)] = 1;
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return blocked_.size(); }

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    bool is_static(const Cell& c) const { return blocked_[index(c)] != 0; }
    // Free of static obstacles; says nothing about boxes or agents.
    bool passable(const Cell& c) const { return in_bounds(c) && !is_static(c); }

    std::size_t index(const Cell& c) const {
        return std::size_t(c.y) * width_ + c.x;
    }
    Cell cell_at(std::size_t idx) const {
        return Cell{int(idx % width_), int(idx / width_)};
    }

    int num_static() const {
        return int(std::count(blocked_.begin(), blocked_.end(), std::uint8_t(1)));
    }

    // In-bounds 4-neighbors in E,W,S,N order. Includes static-obstacle cells;
    // callers filter.
    std::vector<Cell> neighbors(const Cell& c) const {
        std::vector<Cell> out;
        out.reserve(4);
        for (int d = 0; d < kNumDirs; ++d) {
            Cell n{c.x + kDirDx[d], c.y + kDirDy[d]};
            if (in_bounds(n)) out.push_back(n);
        }
        return out;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> blocked_;
};

// Cell one step beyond `box` along the push direction (box - from). May be
// out of bounds; callers decide what an illegal target means.
inline Cell push_target(const Cell& from, const Cell& box) {
    int dx = box.x - from.x;
    int dy = box.y - from.y;
    if (std::abs(dx) + std::abs(dy) != 1)
        throw std::logic_error("push_target: cells not 4-adjacent");
    return Cell{box.x + dx, box.y + dy};
}

struct AgentTask {
    Cell start;
    Cell goal;
};

struct Instance {
    GridMap map;
    std::vector<AgentTask> agents;
    std::vector<Cell> boxes;  // index = box id

    int num_agents() const { return int(agents.size()); }
    int num_boxes() const { return int(boxes.size()); }

    // Enforces the placement invariants; throws with a message naming the
    // offending entity.
    void validate() const {
        auto check_cell = [&](const Cell& c, const std::string& what) {
            if (!map.in_bounds(c)) throw std::invalid_argument(what + " out of bounds");
            if (map.is_static(c)) throw std::invalid_argument(what + " on a static obstacle");
        };
        for (std::size_t i = 0; i < agents.size(); ++i) {
            check_cell(agents[i].start, "agent " + std::to_string(i) + " start");
            check_cell(agents[i].goal, "agent " + std::to_string(i) + " goal");
            for (std::size_t j = i + 1; j < agents.size(); ++j) {
                if (agents[i].start == agents[j].start)
                    throw std::invalid_argument("agents " + std::to_string(i) + "," +
                                                std::to_string(j) + " share a start");
                if (agents[i].goal == agents[j].goal)
                    throw std::invalid_argument("agents " + std::to_string(i) + "," +
                                                std::to_string(j) + " share a goal");
            }
        }
        for (std::size_t b = 0; b < boxes.size(); ++b) {
            check_cell(boxes[b], "box " + std::to_string(b));
            for (std::size_t c = b + 1; c < boxes.size(); ++c)
                if (boxes[b] == boxes[c])
                    throw std::invalid_argument("boxes " + std::to_string(b) + "," +
                                                std::to_string(c) + " share a cell");
            for (std::size_t i = 0; i < agents.size(); ++i) {
                if (boxes[b] == agents[i].start || boxes[b] == agents[i].goal)
                    throw std::invalid_argument("box " + std::to_string(b) +
                                                " overlaps agent " + std::to_string(i) +
                                                " start or goal");
            }
        }
    }
};

// Per-timestep cell sequence; cost = arrival time = cells.size() - 1. After
// the last cell the agent stays there forever.
using TimedPath = std::vector<Cell>;

inline int path_cost(const TimedPath& p) { return int(p.size()) - 1; }

inline Cell position_at(const TimedPath& p, int t) {
    return t < int(p.size()) ? p[t] : p.back();
}

using JointPath = std::vector<TimedPath>;

inline int sum_of_costs(const JointPath& jp) {
    int soc = 0;
    for (const TimedPath& p : jp) soc += path_cost(p);
    return soc;
}

inline int makespan(const JointPath& jp) {
    int m = 0;
    for (const TimedPath& p : jp) m = std::max(m, path_cost(p));
    return m;
}

// Sparse box-position delta over an Instance's initial configuration.
// Canonical form: sorted by box id, never mapping a box to its initial cell.
class BoxConfig {
public:
    BoxConfig() = default;

    bool empty() const { return delta_.empty(); }
    std::size_t delta_size() const { return delta_.size(); }
    const std::vector<std::pair<int, Cell>>& delta() const { return delta_; }

    Cell resolve(int box_id, const std::vector<Cell>& initial) const {
        for (const auto& [id, c] : delta_)
            if (id == box_id) return c;
        return initial[box_id];
    }

    // box id occupying `c`, if any.
    std::optional<int> occupant(const Cell& c, const Instance& inst) const {
        for (const auto& [id, cell] : delta_)
            if (cell == c) return id;
        for (int b = 0; b < inst.num_boxes(); ++b) {
            if (inst.boxes[b] == c && !moved(b)) return b;
        }
        return std::nullopt;
    }

    bool moved(int box_id) const {
        for (const auto& [id, c] : delta_)
            if (id == box_id) return true;
        return false;
    }

    // Returns the canonicalized config with box_id at `to`.
    BoxConfig with(int box_id, const Cell& to, const std::vector<Cell>& initial) const {
        BoxConfig out = *this;
        auto it = std::find_if(out.delta_.begin(), out.delta_.end(),
                               [&](const auto& e) { return e.first == box_id; });
        if (to == initial[box_id]) {
            if (it != out.delta_.end()) out.delta_.erase(it);
        } else if (it != out.delta_.end()) {
            it->second = to;
        } else {
            auto pos = std::lower_bound(out.delta_.begin(), out.delta_.end(), box_id,
                                        [](const auto& e, int id) { return e.first < id; });
            out.delta_.insert(pos, {box_id, to});
        }
        return out;
    }

    std::vector<Cell> all_positions(const Instance& inst) const {
        std::vector<Cell> out = inst.boxes;
        for (const auto& [id, c] : delta_) out[id] = c;
        return out;
    }

    friend bool operator==(const BoxConfig& a, const BoxConfig& b) {
        return a.delta_ == b.delta_;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        for (const auto& [id, c] : delta_) {
            h = hash_mix(h, std::uint64_t(id));
            h = hash_mix(h, (std::uint64_t(std::uint32_t(c.x)) << 32) | std::uint32_t(c.y));
        }
        return h;
    }

private:
    std::vector<std::pair<int, Cell>> delta_;  // sorted by box id
};

}  // namespace mpamo
