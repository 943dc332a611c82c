#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpamo/core.hpp"
#include "mpamo/sim.hpp"

namespace mpamo {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io_detail {

[[noreturn]] inline void fail(const std::string& what, int line, int column = -1) {
    std::ostringstream os;
    os << what << " (line " << line;
    if (column >= 0) os << ", column " << column + 1;
    os << ")";
    throw ParseError(os.str());
}

inline std::string expect_line(std::istream& in, int& lineno) {
    std::string line;
    if (!std::getline(in, line)) fail("unexpected end of file", lineno + 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline long parse_int(const std::string& token, const std::string& what, int lineno) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(token, &pos);
    } catch (const std::exception&) {
        fail("expected integer for " + what + ", got '" + token + "'", lineno);
    }
    if (pos != token.size()) fail("trailing characters after " + what + " '" + token + "'", lineno);
    return v;
}

}  // namespace io_detail

// Map file: `height H`, `width W`, `map`, then H rows of W characters from
// {. @ B}. Character at row r, column c is cell (x=c, y=r); boxes are
// numbered in row-major order.
struct ParsedMap {
    GridMap map;
    std::vector<Cell> boxes;
};

inline ParsedMap parse_map(std::istream& in) {
    using io_detail::expect_line;
    using io_detail::fail;
    int lineno = 0;

    auto header = [&](const std::string& key) -> long {
        std::string line = expect_line(in, lineno);
        std::istringstream ss(line);
        std::string k, v, extra;
        ss >> k >> v;
        if (k != key || v.empty() || (ss >> extra))
            fail("expected '" + key + " <n>', got '" + line + "'", lineno);
        long n = io_detail::parse_int(v, key, lineno);
        if (n <= 0) fail(key + " must be positive", lineno);
        return n;
    };
    long height = header("height");
    long width = header("width");
    std::string map_line = expect_line(in, lineno);
    if (map_line != "map") fail("expected 'map', got '" + map_line + "'", lineno);

    std::vector<Cell> statics, boxes;
    for (long r = 0; r < height; ++r) {
        std::string row = expect_line(in, lineno);
        if (long(row.size()) != width)
            fail("map row has " + std::to_string(row.size()) + " characters, expected " +
                     std::to_string(width),
                 lineno);
        for (long c = 0; c < width; ++c) {
            switch (row[c]) {
                case '.': break;
                case '@': statics.push_back(Cell{int(c), int(r)}); break;
                case 'B': boxes.push_back(Cell{int(c), int(r)}); break;
                default:
                    fail(std::string("invalid map character '") + row[c] + "'", lineno, int(c));
            }
        }
    }
    return ParsedMap{GridMap(int(width), int(height), statics), std::move(boxes)};
}

// Agents file: one `sx sy gx gy` per line; '#' starts a comment line.
inline std::vector<AgentTask> parse_agents(std::istream& in) {
    using io_detail::fail;
    std::vector<AgentTask> agents;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long v[4];
        std::string tok, extra;
        for (int k = 0; k < 4; ++k) {
            if (!(ss >> tok)) fail("expected 'sx sy gx gy', got '" + line + "'", lineno);
            v[k] = io_detail::parse_int(tok, "coordinate", lineno);
        }
        if (ss >> extra) fail("trailing characters '" + extra + "'", lineno);
        agents.push_back(
            AgentTask{Cell{int(v[0]), int(v[1])}, Cell{int(v[2]), int(v[3])}});
    }
    return agents;
}

inline Instance load_instance(const std::string& map_path, const std::string& agents_path) {
    std::ifstream mf(map_path);
    if (!mf) throw ParseError("cannot open map file '" + map_path + "'");
    ParsedMap pm = parse_map(mf);
    std::ifstream af(agents_path);
    if (!af) throw ParseError("cannot open agents file '" + agents_path + "'");
    Instance inst{std::move(pm.map), parse_agents(af), std::move(pm.boxes)};
    inst.validate();
    return inst;
}

inline void write_map(std::ostream& out, const GridMap& map, const std::vector<Cell>& boxes) {
    out << "height " << map.height() << "\n";
    out << "width " << map.width() << "\n";
    out << "map\n";
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            Cell c{x, y};
            char ch = map.is_static(c) ? '@' : '.';
            for (const Cell& b : boxes)
                if (b == c) ch = 'B';
            out << ch;
        }
        out << "\n";
    }
}

inline void write_agents(std::ostream& out, const std::vector<AgentTask>& agents) {
    for (const AgentTask& a : agents)
        out << a.start.x << " " << a.start.y << " " << a.goal.x << " " << a.goal.y << "\n";
}

// Solution record. The field set is frozen; readers reject unknown fields.
struct SolutionRecord {
    std::string algorithm;
    bool solved = false;
    int soc = -1;
    int makespan = -1;
    std::uint64_t runtime_ms = 0;
    std::uint64_t hl_generated = 0;
    std::uint64_t hl_expanded = 0;
    std::uint64_t ll_expansions = 0;
    JointPath paths;
    std::string config_echo;

    friend bool operator==(const SolutionRecord& a, const SolutionRecord& b) {
        return a.algorithm == b.algorithm && a.solved == b.solved && a.soc == b.soc &&
               a.makespan == b.makespan && a.runtime_ms == b.runtime_ms &&
               a.hl_generated == b.hl_generated && a.hl_expanded == b.hl_expanded &&
               a.ll_expansions == b.ll_expansions && a.paths == b.paths &&
               a.config_echo == b.config_echo;
    }
};

inline void write_solution(std::ostream& out, const SolutionRecord& rec) {
    out << "algorithm: " << rec.algorithm << "\n";
    out << "solved: " << (rec.solved ? "true" : "false") << "\n";
    out << "soc: " << rec.soc << "\n";
    out << "makespan: " << rec.makespan << "\n";
    out << "runtime_ms: " << rec.runtime_ms << "\n";
    out << "hl_generated: " << rec.hl_generated << "\n";
    out << "hl_expanded: " << rec.hl_expanded << "\n";
    out << "ll_expansions: " << rec.ll_expansions << "\n";
    out << "paths:\n";
    for (const TimedPath& p : rec.paths) {
        out << "- [";
        for (std::size_t t = 0; t < p.size(); ++t) {
            if (t) out << ",";
            out << "[" << p[t].x << "," << p[t].y << "]";
        }
        out << "]\n";
    }
    out << "config_echo: " << rec.config_echo << "\n";
}

inline SolutionRecord parse_solution(std::istream& in) {
    using io_detail::fail;
    SolutionRecord rec;
    std::string line;
    int lineno = 0;
    bool in_paths = false;
    std::vector<std::string> seen;

    auto mark = [&](const std::string& key) {
        for (const auto& s : seen)
            if (s == key) fail("duplicate field '" + key + "'", lineno);
        seen.push_back(key);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (in_paths && line.size() >= 2 && line[0] == '-') {
            std::size_t i = 1;
            while (i < line.size() && line[i] == ' ') ++i;
            if (i >= line.size() || line[i] != '[') fail("expected '- [..]' path row", lineno);
            TimedPath path;
            ++i;  // past outer '['
            while (i < line.size() && line[i] != ']') {
                if (line[i] == ',') {
                    ++i;
                    continue;
                }
                if (line[i] != '[') fail("expected '[x,y]'", lineno, int(i));
                std::size_t close = line.find(']', i);
                if (close == std::string::npos) fail("unterminated cell", lineno, int(i));
                std::string cell = line.substr(i + 1, close - i - 1);
                std::size_t comma = cell.find(',');
                if (comma == std::string::npos) fail("expected 'x,y' in cell", lineno, int(i));
                path.push_back(
                    Cell{int(io_detail::parse_int(cell.substr(0, comma), "x", lineno)),
                         int(io_detail::parse_int(cell.substr(comma + 1), "y", lineno))});
                i = close + 1;
            }
            if (path.empty()) fail("empty path row", lineno);
            rec.paths.push_back(std::move(path));
            continue;
        }
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) fail("expected 'key: value', got '" + line + "'", lineno);
        std::string key = line.substr(0, colon);
        std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
        in_paths = false;
        if (key == "algorithm") {
            mark(key);
            rec.algorithm = value;
        } else if (key == "solved") {
            mark(key);
            if (value != "true" && value != "false") fail("solved must be true/false", lineno);
            rec.solved = value == "true";
        } else if (key == "soc") {
            mark(key);
            rec.soc = int(io_detail::parse_int(value, key, lineno));
        } else if (key == "makespan") {
            mark(key);
            rec.makespan = int(io_detail::parse_int(value, key, lineno));
        } else if (key == "runtime_ms") {
            mark(key);
            rec.runtime_ms = io_detail::parse_int(value, key, lineno);
        } else if (key == "hl_generated") {
            mark(key);
            rec.hl_generated = io_detail::parse_int(value, key, lineno);
        } else if (key == "hl_expanded") {
            mark(key);
            rec.hl_expanded = io_detail::parse_int(value, key, lineno);
        } else if (key == "ll_expansions") {
            mark(key);
            rec.ll_expansions = io_detail::parse_int(value, key, lineno);
        } else if (key == "paths") {
            mark(key);
            in_paths = true;
        } else if (key == "config_echo") {
            mark(key);
            rec.config_echo = value;
        } else {
            fail("unknown field '" + key + "'", lineno);
        }
    }
    for (const char* req : {"algorithm", "solved", "soc", "makespan", "runtime_ms",
                            "hl_generated", "hl_expanded", "ll_expansions", "paths",
                            "config_echo"}) {
        bool found = false;
        for (const auto& s : seen) found = found || s == req;
        if (!found) throw ParseError(std::string("missing field '") + req + "'");
    }
    return rec;
}

inline SolutionRecord load_solution(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open solution file '" + path + "'");
    return parse_solution(f);
}

// Text frames of the executed solution, one per timestep. Precedence:
// agents (digits, 1-based, mod 10) over boxes (letters) over goals '*'
// over statics '@'.
inline std::vector<std::string> render_frames(const Instance& inst, const JointPath& jp) {
    SimResult sim = sim_and_conflict_check(inst, jp);
    if (!sim.clean())
        throw std::runtime_error("cannot render a conflicted solution: " +
                                 (sim.bpr ? to_string(*sim.bpr) : to_string(*sim.conflict)));
    const int t_max = makespan(jp);
    std::vector<std::string> frames;
    for (int t = 0; t <= t_max; ++t) {
        std::string frame;
        std::vector<std::string> grid(inst.map.height(), std::string(inst.map.width(), '.'));
        auto put = [&](const Cell& c, char ch) { grid[c.y][c.x] = ch; };
        for (int y = 0; y < inst.map.height(); ++y)
            for (int x = 0; x < inst.map.width(); ++x)
                if (inst.map.is_static(Cell{x, y})) grid[y][x] = '@';
        for (const AgentTask& a : inst.agents)
            if (grid[a.goal.y][a.goal.x] == '.') put(a.goal, '*');
        const BoxConfig& boxes = sim.box_trajectory[t];
        for (int b = 0; b < inst.num_boxes(); ++b)
            put(boxes.resolve(b, inst.boxes), char('a' + b % 26));
        for (std::size_t i = 0; i < jp.size(); ++i)
            put(position_at(jp[i], t), char('0' + int(i + 1) % 10));
        for (const std::string& row : grid) {
            frame += row;
            frame += '\n';
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

}  // namespace mpamo
