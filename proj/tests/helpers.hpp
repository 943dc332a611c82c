#pragma once

#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpamo/bench.hpp"
#include "mpamo/core.hpp"
#include "mpamo/io.hpp"

namespace test_helpers {

// Builds a map + boxes from rows of {'.', '@', 'B'}; row 0 is y=0.
inline mpamo::ParsedMap grid(const std::vector<std::string>& rows) {
    std::ostringstream os;
    os << "height " << rows.size() << "\n";
    os << "width " << rows[0].size() << "\n";
    os << "map\n";
    for (const std::string& r : rows) os << r << "\n";
    std::istringstream in(os.str());
    return mpamo::parse_map(in);
}

inline mpamo::Instance instance(const std::vector<std::string>& rows,
                                const std::vector<mpamo::AgentTask>& agents) {
    mpamo::ParsedMap pm = grid(rows);
    mpamo::Instance inst{std::move(pm.map), agents, std::move(pm.boxes)};
    inst.validate();
    return inst;
}

inline std::string instance_dir() {
    const char* dir = std::getenv("MPAMO_INSTANCE_DIR");
    return dir ? dir : "instances";
}

inline mpamo::Instance load_named(const std::string& name) {
    return mpamo::load_instance(instance_dir() + "/" + name + ".map",
                                instance_dir() + "/" + name + ".agents");
}

// Random joint path by legal-single-agent random walk (wait or 4-adjacent,
// in bounds, off statics). Conflicts with boxes/agents are intentionally
// possible; simulation is the thing under test.
inline mpamo::JointPath random_walk(const mpamo::Instance& inst, int steps,
                                    std::mt19937_64& rng) {
    mpamo::JointPath jp;
    for (const mpamo::AgentTask& task : inst.agents) {
        mpamo::TimedPath p{task.start};
        for (int t = 0; t < steps; ++t) {
            mpamo::Cell cur = p.back();
            std::vector<mpamo::Cell> options{cur};
            for (int d = 0; d < mpamo::kNumDirs; ++d) {
                mpamo::Cell n{cur.x + mpamo::kDirDx[d], cur.y + mpamo::kDirDy[d]};
                if (inst.map.passable(n)) options.push_back(n);
            }
            p.push_back(options[mpamo::bounded_rand(rng, options.size())]);
        }
        jp.push_back(std::move(p));
    }
    return jp;
}

}  // namespace test_helpers
