#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mpamo/budget.hpp"
#include "mpamo/core.hpp"
#include "mpamo/heuristic.hpp"

namespace mpamo {

// Exact brute-force solver over the joint (agents x boxes x time) space for
// micro-instances. Ground truth for regressions and optimality gaps; not a
// competitor to the planners.
//
// Transition legality is implemented here from scratch, independent of the
// simulation module, so the two can be cross-checked against each other:
// per-agent moves stay on the map and off static obstacles; a move onto a
// box pushes it one cell onward, and the push target must be on the map and
// off static obstacles; after resolving pushes, no two entities may share a
// cell and no two entities may swap over an edge.
//
// Cost model: sum of arrival times. An agent waiting on its goal accrues
// nothing; if it leaves the goal later, the waits it spent there are charged
// retroactively, so accumulated cost always equals the sum of final arrival
// times. The duplicate-detection key carries each agent's last-departure
// time because two ways of reaching the same configuration with different
// pending goal-wait debts are not interchangeable.

struct OracleResult {
    enum class Status { solved, infeasible_within_horizon, state_bound_exceeded };
    Status status = Status::infeasible_within_horizon;
    int soc = -1;
    JointPath witness;  // one optimal joint path (agent cells only)
    std::uint64_t expansions = 0;

    bool solved() const { return status == Status::solved; }
};

struct OracleLimits {
    int horizon = 0;               // 0 = width*height*(agents+boxes)
    int soc_cap = -1;              // -1 = no cap
    std::uint64_t state_cap = 20000000;  // refuse instances that could exceed this
    std::uint64_t expansion_cap = 0;     // 0 = no cap; safety valve for sweeps
};

namespace oracle_detail {

struct JointState {
    std::vector<Cell> agents;
    std::vector<Cell> boxes;    // by box id
    std::vector<int> last_off;  // per agent: last time it ended a step off its goal
    int t = 0;

    friend bool operator==(const JointState& a, const JointState& b) {
        return a.t == b.t && a.agents == b.agents && a.boxes == b.boxes &&
               a.last_off == b.last_off;
    }
};

struct JointStateHash {
    std::size_t operator()(const JointState& s) const {
        std::uint64_t h = std::uint64_t(std::uint32_t(s.t));
        for (const Cell& c : s.agents)
            h = hash_mix(h, (std::uint64_t(std::uint32_t(c.x)) << 32) | std::uint32_t(c.y));
        h = hash_mix(h, 0xb0c5ULL);
        for (const Cell& c : s.boxes)
            h = hash_mix(h, (std::uint64_t(std::uint32_t(c.x)) << 32) | std::uint32_t(c.y));
        for (int v : s.last_off) h = hash_mix(h, std::uint64_t(std::uint32_t(v)));
        return std::size_t(h);
    }
};

// Applies one joint action (direction index per agent, kNumDirs = wait).
// Returns false when the step is illegal.
inline bool apply_joint_action(const Instance& inst, const JointState& cur,
                               const std::vector<int>& action, std::vector<Cell>& agents_next,
                               std::vector<Cell>& boxes_next) {
    const int A = int(cur.agents.size());
    const int B = int(cur.boxes.size());
    agents_next = cur.agents;
    boxes_next = cur.boxes;

    for (int i = 0; i < A; ++i) {
        if (action[i] == kNumDirs) continue;  // wait
        Cell to{cur.agents[i].x + kDirDx[action[i]], cur.agents[i].y + kDirDy[action[i]]};
        if (!inst.map.passable(to)) return false;
        agents_next[i] = to;
        for (int b = 0; b < B; ++b) {
            if (cur.boxes[b] != to) continue;
            Cell target{to.x + kDirDx[action[i]], to.y + kDirDy[action[i]]};
            if (!inst.map.passable(target)) return false;  // box pushing rules
            boxes_next[b] = target;
        }
    }
    // no two entities on one cell
    for (int i = 0; i < A; ++i) {
        for (int j = i + 1; j < A; ++j)
            if (agents_next[i] == agents_next[j]) return false;
        for (int b = 0; b < B; ++b)
            if (agents_next[i] == boxes_next[b]) return false;
    }
    for (int b = 0; b < B; ++b)
        for (int c = b + 1; c < B; ++c)
            if (boxes_next[b] == boxes_next[c]) return false;
    // no edge swaps, between any pair of entities
    auto swapped = [](const Cell& p1, const Cell& n1, const Cell& p2, const Cell& n2) {
        return p1 != n1 && n1 == p2 && n2 == p1;
    };
    for (int i = 0; i < A; ++i) {
        for (int j = i + 1; j < A; ++j)
            if (swapped(cur.agents[i], agents_next[i], cur.agents[j], agents_next[j]))
                return false;
        for (int b = 0; b < B; ++b)
            if (swapped(cur.agents[i], agents_next[i], cur.boxes[b], boxes_next[b]))
                return false;
    }
    for (int b = 0; b < B; ++b)
        for (int c = b + 1; c < B; ++c)
            if (swapped(cur.boxes[b], boxes_next[b], cur.boxes[c], boxes_next[c])) return false;
    return true;
}

}  // namespace oracle_detail

inline std::uint64_t oracle_state_bound(const Instance& inst) {
    const std::uint64_t cells = std::uint64_t(inst.map.width()) * inst.map.height();
    std::uint64_t bound = 1;
    for (int i = 0; i < inst.num_agents() + inst.num_boxes(); ++i) {
        if (bound > (std::uint64_t(1) << 50) / cells) return std::uint64_t(1) << 60;
        bound *= cells;
    }
    return bound;
}

inline OracleResult solve_exact(const Instance& inst, OracleLimits limits = {},
                                SearchBudget* budget = nullptr) {
    using oracle_detail::JointState;
    OracleResult res;
    const int A = inst.num_agents();
    const int B = inst.num_boxes();
    if (limits.horizon <= 0)
        limits.horizon = inst.map.width() * inst.map.height() * (A + B == 0 ? 1 : A + B);
    if (oracle_state_bound(inst) > limits.state_cap) {
        res.status = OracleResult::Status::state_bound_exceeded;
        return res;
    }

    std::vector<DistanceField> dist;
    dist.reserve(A);
    for (int i = 0; i < A; ++i) dist.emplace_back(inst.map, inst.agents[i].goal);

    // Admissible: an off-goal agent has already prepaid one step in its
    // arrival estimate, hence dist - 1.
    auto heuristic = [&](const JointState& s) {
        int h = 0;
        for (int i = 0; i < A; ++i) {
            int d = dist[i].at(s.agents[i]);
            if (d >= kUnreachable) return kUnreachable;
            if (s.agents[i] != inst.agents[i].goal) h += d - 1;
        }
        return h;
    };

    struct Node {
        JointState state;
        int g;
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

    JointState root;
    root.agents.reserve(A);
    for (const AgentTask& a : inst.agents) root.agents.push_back(a.start);
    root.boxes = inst.boxes;
    // last_off[i] = last time agent i ended a step off its goal (-1 if
    // never); the running arrival estimate is last_off + 1 and g maintains
    // the invariant g == sum(last_off + 1).
    root.last_off.resize(A);
    int g_root = 0;
    for (int i = 0; i < A; ++i) {
        root.last_off[i] = root.agents[i] == inst.agents[i].goal ? -1 : 0;
        g_root += root.last_off[i] + 1;
    }

    int h0 = heuristic(root);
    if (h0 >= kUnreachable) {
        res.status = OracleResult::Status::infeasible_within_horizon;
        return res;
    }

    std::vector<Node> nodes;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> open;
    std::unordered_map<JointState, int, oracle_detail::JointStateHash> best_g;
    std::uint64_t seq = 0;

    nodes.push_back(Node{root, g_root, -1});
    best_g[root] = g_root;
    open.push(QEntry{g_root + h0, g_root, seq++, 0});

    std::vector<int> action(A, 0);
    std::vector<Cell> agents_next, boxes_next;

    while (!open.empty()) {
        if (budget && budget->exhausted()) break;
        if (limits.expansion_cap && res.expansions >= limits.expansion_cap) break;
        QEntry top = open.top();
        open.pop();
        Node cur = nodes[top.node];
        auto it = best_g.find(cur.state);
        if (it != best_g.end() && it->second < cur.g) continue;  // stale entry
        ++res.expansions;
        if (budget) budget->charge(SearchBudget::kOracleExpansion);

        bool all_at_goal = true;
        for (int i = 0; i < A && all_at_goal; ++i)
            all_at_goal = cur.state.agents[i] == inst.agents[i].goal;
        if (all_at_goal) {
            res.status = OracleResult::Status::solved;
            res.soc = cur.g;
            // reconstruct and trim trailing goal waits per agent
            std::vector<const JointState*> chain;
            for (int n = top.node; n != -1; n = nodes[n].parent) chain.push_back(&nodes[n].state);
            std::reverse(chain.begin(), chain.end());
            res.witness.assign(A, {});
            for (int i = 0; i < A; ++i) {
                int arrive = cur.state.last_off[i] + 1;  // 0 if never off goal
                if (arrive > cur.state.t) arrive = cur.state.t;
                for (int t = 0; t <= arrive && t < int(chain.size()); ++t)
                    res.witness[i].push_back(chain[t]->agents[i]);
            }
            return res;
        }

        if (cur.state.t >= limits.horizon) continue;

        // enumerate joint actions lexicographically (agent 0 fastest axis E,W,S,N,wait)
        std::fill(action.begin(), action.end(), 0);
        while (true) {
            if (oracle_detail::apply_joint_action(inst, cur.state, action, agents_next,
                                                  boxes_next)) {
                JointState nxt;
                nxt.agents = agents_next;
                nxt.boxes = boxes_next;
                nxt.t = cur.state.t + 1;
                nxt.last_off = cur.state.last_off;
                int ng = cur.g;
                for (int i = 0; i < A; ++i) {
                    if (agents_next[i] != inst.agents[i].goal) {
                        // charge this step and any goal waits being abandoned
                        ng += nxt.t - nxt.last_off[i];
                        nxt.last_off[i] = nxt.t;
                    }
                }
                if ((limits.soc_cap < 0 || ng <= limits.soc_cap)) {
                    int h = heuristic(nxt);
                    if (h < kUnreachable) {
                        auto [slot, fresh] = best_g.try_emplace(nxt, ng);
                        if (fresh || slot->second > ng) {
                            slot->second = ng;
                            nodes.push_back(Node{std::move(nxt), ng, top.node});
                            open.push(QEntry{ng + h, ng, seq++, int(nodes.size()) - 1});
                        }
                    }
                }
            }
            // next joint action
            int i = 0;
            for (; i < A; ++i) {
                if (++action[i] <= kNumDirs) break;
                action[i] = 0;
            }
            if (i == A) break;
        }
    }
    res.status = OracleResult::Status::infeasible_within_horizon;
    return res;
}

}  // namespace mpamo
