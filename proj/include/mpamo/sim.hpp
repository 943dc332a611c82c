#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mpamo/conflicts.hpp"
#include "mpamo/core.hpp"

namespace mpamo {

struct SimResult {
    // exactly one of conflict / bpr set on a dirty run
    std::optional<Conflict> conflict;
    std::optional<BprViolation> bpr;
    // per-timestep box configuration, [0..t_max]; only meaningful when clean
    std::vector<BoxConfig> box_trajectory;

    bool clean() const { return !conflict && !bpr; }
};

// One simulation step: every agent that moves onto a cell holding a box
// tentatively pushes that box one cell onward. Tentative positions may
// collide, leave the map or land on obstacles — Check sorts that out.
// When several agents enter the same box cell, the lowest-id pusher decides
// the tentative position (the step is doomed to an AA vertex conflict
// anyway); `pushes` maps box id -> that pusher.
inline BoxConfig sim_step(const Instance& inst, const BoxConfig& boxes_prev,
                          const std::vector<Cell>& agents_prev,
                          const std::vector<Cell>& agents_next,
                          std::map<int, Push>& pushes) {
    pushes.clear();
    BoxConfig next = boxes_prev;
    for (std::size_t i = 0; i < agents_prev.size(); ++i) {
        if (agents_prev[i] == agents_next[i]) continue;
        auto box = boxes_prev.occupant(agents_next[i], inst);
        if (!box) continue;
        if (pushes.count(*box)) continue;
        Cell target = push_target(agents_prev[i], agents_next[i]);
        pushes[*box] = Push{int(i), Edge{agents_prev[i], agents_next[i]}};
        next = next.with(*box, target, inst.boxes);
    }
    return next;
}

namespace detail {

inline std::optional<Push> pusher_of(const std::map<int, Push>& pushes, int box) {
    auto it = pushes.find(box);
    if (it == pushes.end()) return std::nullopt;
    return it->second;
}

}  // namespace detail

// Scans step t in the fixed order: BPR, AA vertex, AA edge, AB vertex,
// AB edge, BB vertex, BB edge; ascending ids within each category. Returns
// the first violation, or neither when the step is clean.
inline std::optional<std::variant<Conflict, BprViolation>> check(
    const Instance& inst, const BoxConfig& boxes_prev, const BoxConfig& boxes_next,
    const std::vector<Cell>& agents_prev, const std::vector<Cell>& agents_next,
    const std::map<int, Push>& pushes, int t) {
    const int A = int(agents_prev.size());
    const int B = inst.num_boxes();

    // (1) BPR: recomputed per pushing agent, so a second pusher of an
    // already-claimed box is still checked against its own target.
    for (int i = 0; i < A; ++i) {
        if (agents_prev[i] == agents_next[i]) continue;
        if (!boxes_prev.occupant(agents_next[i], inst)) continue;
        Cell target = push_target(agents_prev[i], agents_next[i]);
        if (!inst.map.in_bounds(target) || inst.map.is_static(target))
            return BprViolation{i, Edge{agents_prev[i], agents_next[i]}, t};
    }
    // (2) AA vertex
    for (int i = 0; i < A; ++i)
        for (int j = i + 1; j < A; ++j)
            if (agents_next[i] == agents_next[j])
                return Conflict{AAVertexConflict{i, j, agents_next[i], t}};
    // (3) AA edge
    for (int i = 0; i < A; ++i)
        for (int j = i + 1; j < A; ++j)
            if (agents_prev[i] != agents_next[i] && agents_next[i] == agents_prev[j] &&
                agents_next[j] == agents_prev[i])
                return Conflict{AAEdgeConflict{i, j, Edge{agents_prev[i], agents_next[i]}, t}};

    std::vector<Cell> bprev(B), bnext(B);
    for (int b = 0; b < B; ++b) {
        bprev[b] = boxes_prev.resolve(b, inst.boxes);
        bnext[b] = boxes_next.resolve(b, inst.boxes);
    }
    // (4) AB vertex
    for (int i = 0; i < A; ++i)
        for (int b = 0; b < B; ++b)
            if (agents_next[i] == bnext[b]) {
                auto p = detail::pusher_of(pushes, b);
                if (!p) throw std::logic_error("AB vertex conflict with a stationary box");
                return Conflict{ABVertexConflict{i, b, agents_next[i], t, *p}};
            }
    // (5) AB edge
    for (int i = 0; i < A; ++i)
        for (int b = 0; b < B; ++b)
            if (agents_prev[i] != agents_next[i] && bprev[b] != bnext[b] &&
                agents_next[i] == bprev[b] && bnext[b] == agents_prev[i]) {
                auto p = detail::pusher_of(pushes, b);
                if (!p) throw std::logic_error("AB edge conflict with a stationary box");
                return Conflict{
                    ABEdgeConflict{i, b, Edge{agents_prev[i], agents_next[i]}, t, *p}};
            }
    // (6) BB vertex
    for (int m = 0; m < B; ++m)
        for (int n = m + 1; n < B; ++n)
            if (bnext[m] == bnext[n]) {
                auto pm = detail::pusher_of(pushes, m);
                auto pn = detail::pusher_of(pushes, n);
                if (!pm && !pn) throw std::logic_error("BB vertex conflict with no pusher");
                return Conflict{BBVertexConflict{m, n, bnext[m], t, pm, pn}};
            }
    // (7) BB edge
    for (int m = 0; m < B; ++m)
        for (int n = m + 1; n < B; ++n)
            if (bprev[m] != bnext[m] && bprev[n] != bnext[n] && bnext[m] == bprev[n] &&
                bnext[n] == bprev[m]) {
                auto pm = detail::pusher_of(pushes, m);
                auto pn = detail::pusher_of(pushes, n);
                return Conflict{
                    BBEdgeConflict{m, n, Edge{bprev[m], bnext[m]}, t, pm, pn}};
            }
    return std::nullopt;
}

// Thrown when a joint path is structurally malformed (not a conflict —
// a contract violation by the caller).
struct PathValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_well_formed(const Instance& inst, const JointPath& jp) {
    if (int(jp.size()) != inst.num_agents())
        throw PathValidationError("joint path has " + std::to_string(jp.size()) +
                                  " paths for " + std::to_string(inst.num_agents()) + " agents");
    for (std::size_t i = 0; i < jp.size(); ++i) {
        const TimedPath& p = jp[i];
        if (p.empty())
            throw PathValidationError("agent " + std::to_string(i) + ": empty path");
        for (std::size_t t = 0; t < p.size(); ++t) {
            std::ostringstream os;
            os << "agent " << i << " at t=" << t << " cell " << p[t];
            if (!inst.map.in_bounds(p[t])) throw PathValidationError(os.str() + ": out of bounds");
            if (inst.map.is_static(p[t]))
                throw PathValidationError(os.str() + ": on a static obstacle");
            if (t > 0) {
                int d = std::abs(p[t].x - p[t - 1].x) + std::abs(p[t].y - p[t - 1].y);
                if (d > 1) {
                    std::ostringstream om;
                    om << "agent " << i << " step t=" << t << ": " << p[t - 1] << " -> " << p[t]
                       << " is not a wait or 4-adjacent move";
                    throw PathValidationError(om.str());
                }
            }
        }
    }
}

}  // namespace detail

// Simulates box motion induced by the agents' joint path over
// t = 1..makespan (stay-at-goal extended) and returns the first violation,
// else the clean per-step box trajectory. Deterministic.
inline SimResult sim_and_conflict_check(const Instance& inst, const JointPath& jp) {
    detail::require_well_formed(inst, jp);
    SimResult res;
    const int t_max = makespan(jp);
    const int A = inst.num_agents();

    BoxConfig boxes;
    res.box_trajectory.push_back(boxes);
    std::vector<Cell> prev(A), next(A);
    for (int i = 0; i < A; ++i) prev[i] = position_at(jp[i], 0);

    std::map<int, Push> pushes;
    for (int t = 1; t <= t_max; ++t) {
        for (int i = 0; i < A; ++i) next[i] = position_at(jp[i], t);
        BoxConfig moved = sim_step(inst, boxes, prev, next, pushes);
        auto violation = check(inst, boxes, moved, prev, next, pushes, t);
        if (violation) {
            res.box_trajectory.clear();
            if (violation->index() == 0)
                res.conflict = std::get<Conflict>(*violation);
            else
                res.bpr = std::get<BprViolation>(*violation);
            return res;
        }
        boxes = moved;
        res.box_trajectory.push_back(boxes);
        prev = next;
    }
    return res;
}

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> lines;

    std::string text() const {
        std::string out;
        for (const auto& l : lines) {
            out += l;
            out += '\n';
        }
        return out;
    }
};

// Full solution gate: endpoint checks plus sim_and_conflict_check.
inline ValidationReport validate_solution(const Instance& inst, const JointPath& jp) {
    ValidationReport rep;
    try {
        detail::require_well_formed(inst, jp);
    } catch (const PathValidationError& e) {
        rep.lines.push_back(std::string("FAIL malformed path: ") + e.what());
        return rep;
    }
    bool endpoints_ok = true;
    for (int i = 0; i < inst.num_agents(); ++i) {
        if (jp[i].front() != inst.agents[i].start) {
            std::ostringstream os;
            os << "FAIL agent " << i << " starts at " << jp[i].front() << ", instance says "
               << inst.agents[i].start;
            rep.lines.push_back(os.str());
            endpoints_ok = false;
        }
        if (jp[i].back() != inst.agents[i].goal) {
            std::ostringstream os;
            os << "FAIL agent " << i << " ends at " << jp[i].back() << ", instance says "
               << inst.agents[i].goal;
            rep.lines.push_back(os.str());
            endpoints_ok = false;
        }
    }
    if (endpoints_ok) rep.lines.push_back("PASS endpoints match instance");
    SimResult sim = sim_and_conflict_check(inst, jp);
    if (sim.clean()) {
        rep.lines.push_back("PASS simulation clean (no conflicts, no box-pushing violations)");
    } else if (sim.bpr) {
        rep.lines.push_back("FAIL " + to_string(*sim.bpr));
    } else {
        rep.lines.push_back("FAIL " + to_string(*sim.conflict));
    }
    rep.ok = endpoints_ok && sim.clean();
    rep.lines.push_back(rep.ok ? "RESULT pass" : "RESULT fail");
    return rep;
}

}  // namespace mpamo
