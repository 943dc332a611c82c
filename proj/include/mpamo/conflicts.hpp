#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mpamo/core.hpp"

namespace mpamo {

struct Edge {
    Cell from;
    Cell to;

    friend bool operator==(const Edge& a, const Edge& b) { return a.from == b.from && a.to == b.to; }
    friend std::ostream& operator<<(std::ostream& os, const Edge& e) {
        return os << e.from << "->" << e.to;
    }
};

// A push action: the agent that moved and the edge it traversed while doing so.
struct Push {
    int agent = -1;
    Edge edge;

    friend bool operator==(const Push& a, const Push& b) { return a.agent == b.agent && a.edge == b.edge; }
};

struct AAVertexConflict {
    int agent_a, agent_b;
    Cell cell;
    int time;
};

struct AAEdgeConflict {
    int agent_a, agent_b;
    Edge edge;  // as traversed by agent_a; agent_b traverses the reverse
    int time;
};

struct ABVertexConflict {
    int agent;  // the agent standing on / arriving at the cell
    int box;
    Cell cell;
    int time;
    Push pusher;  // who pushed the box there this step
};

struct ABEdgeConflict {
    int agent;
    int box;
    Edge edge;  // as traversed by the agent; the box traverses the reverse
    int time;
    Push pusher;
};

struct BBVertexConflict {
    int box_a, box_b;
    Cell cell;
    int time;
    std::optional<Push> pusher_a;  // absent when that box did not move this step
    std::optional<Push> pusher_b;
};

struct BBEdgeConflict {
    int box_a, box_b;
    Edge edge;  // as traversed by box_a; box_b traverses the reverse
    int time;
    std::optional<Push> pusher_a;
    std::optional<Push> pusher_b;
};

using Conflict = std::variant<AAVertexConflict, AAEdgeConflict, ABVertexConflict,
                              ABEdgeConflict, BBVertexConflict, BBEdgeConflict>;

// A move that would push a box onto a static obstacle or off the map.
struct BprViolation {
    int agent;
    Edge edge;
    int time;
};

struct VertexConstraint {
    int agent;
    Cell cell;
    int time;

    friend bool operator==(const VertexConstraint& a, const VertexConstraint& b) {
        return a.agent == b.agent && a.cell == b.cell && a.time == b.time;
    }
};

struct EdgeConstraint {
    int agent;
    Edge edge;
    int time;  // arrival time of the forbidden traversal; >= 1

    friend bool operator==(const EdgeConstraint& a, const EdgeConstraint& b) {
        return a.agent == b.agent && a.edge == b.edge && a.time == b.time;
    }
};

using Constraint = std::variant<VertexConstraint, EdgeConstraint>;

inline bool operator==(const Constraint& a, const Constraint& b) {
    if (a.index() != b.index()) return false;
    if (a.index() == 0) return std::get<0>(a) == std::get<0>(b);
    return std::get<1>(a) == std::get<1>(b);
}

inline int constrained_agent(const Constraint& c) {
    return c.index() == 0 ? std::get<VertexConstraint>(c).agent : std::get<EdgeConstraint>(c).agent;
}

inline std::string to_string(const Constraint& c) {
    std::ostringstream os;
    if (c.index() == 0) {
        const auto& v = std::get<VertexConstraint>(c);
        os << "vertex(agent " << v.agent << ", " << v.cell << ", t=" << v.time << ")";
    } else {
        const auto& e = std::get<EdgeConstraint>(c);
        os << "edge(agent " << e.agent << ", " << e.edge << ", t=" << e.time << ")";
    }
    return os.str();
}

inline std::string to_string(const BprViolation& b) {
    std::ostringstream os;
    os << "bpr(agent " << b.agent << ", " << b.edge << ", t=" << b.time << ")";
    return os.str();
}

inline std::string to_string(const Conflict& c) {
    std::ostringstream os;
    switch (c.index()) {
        case 0: {
            const auto& v = std::get<AAVertexConflict>(c);
            os << "aa-vertex(agents " << v.agent_a << "," << v.agent_b << ", " << v.cell
               << ", t=" << v.time << ")";
            break;
        }
        case 1: {
            const auto& v = std::get<AAEdgeConflict>(c);
            os << "aa-edge(agents " << v.agent_a << "," << v.agent_b << ", " << v.edge
               << ", t=" << v.time << ")";
            break;
        }
        case 2: {
            const auto& v = std::get<ABVertexConflict>(c);
            os << "ab-vertex(agent " << v.agent << ", box " << v.box << ", " << v.cell
               << ", t=" << v.time << ", pusher " << v.pusher.agent << " via " << v.pusher.edge
               << ")";
            break;
        }
        case 3: {
            const auto& v = std::get<ABEdgeConflict>(c);
            os << "ab-edge(agent " << v.agent << ", box " << v.box << ", " << v.edge
               << ", t=" << v.time << ", pusher " << v.pusher.agent << ")";
            break;
        }
        case 4: {
            const auto& v = std::get<BBVertexConflict>(c);
            os << "bb-vertex(boxes " << v.box_a << "," << v.box_b << ", " << v.cell
               << ", t=" << v.time << ")";
            break;
        }
        default: {
            const auto& v = std::get<BBEdgeConflict>(c);
            os << "bb-edge(boxes " << v.box_a << "," << v.box_b << ", " << v.edge
               << ", t=" << v.time << ")";
            break;
        }
    }
    return os.str();
}

// Branching rule of both CBS variants. Returns 1 or 2 constraints; the first
// targets the lower-indexed agent mentioned by the conflict, so CT shape is
// deterministic. Boxes are never constrained directly, only the agents that
// push them.
inline std::vector<Constraint> generate_constraints(const Conflict& c) {
    std::vector<Constraint> out;
    switch (c.index()) {
        case 0: {
            const auto& v = std::get<AAVertexConflict>(c);
            out.push_back(VertexConstraint{v.agent_a, v.cell, v.time});
            out.push_back(VertexConstraint{v.agent_b, v.cell, v.time});
            break;
        }
        case 1: {
            const auto& v = std::get<AAEdgeConflict>(c);
            out.push_back(EdgeConstraint{v.agent_a, v.edge, v.time});
            out.push_back(EdgeConstraint{v.agent_b, Edge{v.edge.to, v.edge.from}, v.time});
            break;
        }
        case 2: {
            const auto& v = std::get<ABVertexConflict>(c);
            out.push_back(VertexConstraint{v.agent, v.cell, v.time});
            out.push_back(EdgeConstraint{v.pusher.agent, v.pusher.edge, v.time});
            break;
        }
        case 3: {
            const auto& v = std::get<ABEdgeConflict>(c);
            out.push_back(EdgeConstraint{v.agent, v.edge, v.time});
            out.push_back(EdgeConstraint{v.pusher.agent, v.pusher.edge, v.time});
            break;
        }
        case 4: {
            const auto& v = std::get<BBVertexConflict>(c);
            if (v.pusher_a) out.push_back(EdgeConstraint{v.pusher_a->agent, v.pusher_a->edge, v.time});
            if (v.pusher_b) out.push_back(EdgeConstraint{v.pusher_b->agent, v.pusher_b->edge, v.time});
            if (out.empty()) throw std::logic_error("BB vertex conflict with no pusher");
            break;
        }
        default: {
            const auto& v = std::get<BBEdgeConflict>(c);
            if (v.pusher_a) out.push_back(EdgeConstraint{v.pusher_a->agent, v.pusher_a->edge, v.time});
            if (v.pusher_b) out.push_back(EdgeConstraint{v.pusher_b->agent, v.pusher_b->edge, v.time});
            if (out.empty()) throw std::logic_error("BB edge conflict with no pusher");
            break;
        }
    }
    if (out.size() == 2 && constrained_agent(out[1]) < constrained_agent(out[0]))
        std::swap(out[0], out[1]);
    return out;
}

inline std::vector<Constraint> generate_constraints(const BprViolation& b) {
    return {EdgeConstraint{b.agent, b.edge, b.time}};
}

}  // namespace mpamo
