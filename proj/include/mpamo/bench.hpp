#pragma once

#include <cstdint>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpamo/cbs.hpp"
#include "mpamo/core.hpp"
#include "mpamo/io.hpp"
#include "mpamo/pp.hpp"

namespace mpamo {

// Uniform integer in [0, n) from the raw engine stream; rejection sampling,
// so results do not depend on the standard library's distribution
// implementation.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded_rand: empty range");
    const std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

namespace bench_detail {

// Deterministic sample of k distinct elements (partial Fisher-Yates).
inline std::vector<Cell> sample_cells(std::vector<Cell>& pool, std::size_t k,
                                      std::mt19937_64& rng) {
    if (k > pool.size()) throw std::invalid_argument("not enough free cells to sample from");
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + std::size_t(bounded_rand(rng, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<Cell> out(pool.begin(), pool.begin() + k);
    pool.erase(pool.begin(), pool.begin() + k);
    return out;
}

}  // namespace bench_detail

// Seeded pseudo-random instance: statics first (floor(density * area)
// cells), then distinct starts and distinct goals on free cells, then
// boxes avoiding statics, starts and goals. Densities are integer percents
// so cell counts are exact. Instances are not guaranteed feasible.
inline Instance generate_instance(int width, int height, int static_pct, int box_pct,
                                  int n_agents, std::uint64_t seed) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("bad grid dimensions");
    if (static_pct < 0 || static_pct > 100 || box_pct < 0 || box_pct > 100)
        throw std::invalid_argument("densities must be percentages in [0,100]");
    const long area = long(width) * height;
    const std::size_t n_static = std::size_t(long(static_pct) * area / 100);
    const std::size_t n_boxes = std::size_t(long(box_pct) * area / 100);

    std::mt19937_64 rng(seed);
    std::vector<Cell> all;
    all.reserve(area);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) all.push_back(Cell{x, y});

    std::vector<Cell> statics = bench_detail::sample_cells(all, n_static, rng);
    GridMap map(width, height, statics);

    std::vector<Cell> free_pool = all;  // statics already removed
    if (free_pool.size() < std::size_t(n_agents))
        throw std::invalid_argument("not enough free cells for agent starts");
    std::vector<Cell> starts = bench_detail::sample_cells(free_pool, std::size_t(n_agents), rng);

    std::vector<Cell> goal_pool = all;  // goals may coincide with starts
    std::vector<Cell> goals = bench_detail::sample_cells(goal_pool, std::size_t(n_agents), rng);

    std::vector<Cell> box_pool;
    for (const Cell& c : all) {
        bool used = false;
        for (const Cell& s : starts) used = used || s == c;
        for (const Cell& g : goals) used = used || g == c;
        if (!used) box_pool.push_back(c);
    }
    std::vector<Cell> boxes = bench_detail::sample_cells(box_pool, n_boxes, rng);

    Instance inst;
    inst.map = std::move(map);
    for (int i = 0; i < n_agents; ++i) inst.agents.push_back(AgentTask{starts[i], goals[i]});
    inst.boxes = std::move(boxes);
    inst.validate();
    return inst;
}

// Map spec tokens: `empty-WxH` (no statics) or `random-WxH-P` (P% statics).
struct MapSpec {
    std::string name;
    int width = 0;
    int height = 0;
    int static_pct = 0;
};

inline MapSpec parse_map_spec(const std::string& token) {
    MapSpec spec;
    spec.name = token;
    std::string body;
    if (token.rfind("empty-", 0) == 0) {
        body = token.substr(6);
    } else if (token.rfind("random-", 0) == 0) {
        body = token.substr(7);
        std::size_t dash = body.find('-');
        if (dash == std::string::npos)
            throw ParseError("map spec '" + token + "': expected random-WxH-P");
        spec.static_pct = int(io_detail::parse_int(body.substr(dash + 1), "static density", 0));
        body = body.substr(0, dash);
    } else {
        throw ParseError("map spec '" + token + "': expected empty-WxH or random-WxH-P");
    }
    std::size_t x = body.find('x');
    if (x == std::string::npos) throw ParseError("map spec '" + token + "': expected WxH");
    spec.width = int(io_detail::parse_int(body.substr(0, x), "width", 0));
    spec.height = int(io_detail::parse_int(body.substr(x + 1), "height", 0));
    return spec;
}

struct BenchConfig {
    std::vector<MapSpec> maps;
    std::vector<int> box_densities;  // percent
    std::vector<int> agent_counts;
    std::vector<std::string> algos;  // cbs-moh | cbs-mol | pp-pamo
    int instances_per_cell = 10;
    int time_limit_s = 60;
    int horizon_factor = 2;
    std::uint64_t seed = 1;
};

// Structured text: `key: value...` lines, '#' comments. Lists are
// space-separated.
inline BenchConfig parse_bench_config(std::istream& in) {
    using io_detail::fail;
    BenchConfig cfg;
    std::string line;
    int lineno = 0;
    bool have_maps = false, have_algos = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) fail("expected 'key: values'", lineno);
        std::string key = line.substr(0, colon);
        std::istringstream vals(line.substr(colon + 1));
        std::string tok;
        if (key == "maps") {
            while (vals >> tok) cfg.maps.push_back(parse_map_spec(tok));
            have_maps = true;
        } else if (key == "box_densities") {
            while (vals >> tok)
                cfg.box_densities.push_back(int(io_detail::parse_int(tok, key, lineno)));
        } else if (key == "agents") {
            while (vals >> tok)
                cfg.agent_counts.push_back(int(io_detail::parse_int(tok, key, lineno)));
        } else if (key == "algos") {
            while (vals >> tok) {
                if (tok != "cbs-moh" && tok != "cbs-mol" && tok != "pp-pamo")
                    fail("unknown algorithm '" + tok + "'", lineno);
                cfg.algos.push_back(tok);
            }
            have_algos = true;
        } else if (key == "instances_per_cell") {
            vals >> tok;
            cfg.instances_per_cell = int(io_detail::parse_int(tok, key, lineno));
        } else if (key == "time_limit_s") {
            vals >> tok;
            cfg.time_limit_s = int(io_detail::parse_int(tok, key, lineno));
        } else if (key == "horizon_factor") {
            vals >> tok;
            cfg.horizon_factor = int(io_detail::parse_int(tok, key, lineno));
        } else if (key == "seed") {
            vals >> tok;
            cfg.seed = std::uint64_t(io_detail::parse_int(tok, key, lineno));
        } else {
            fail("unknown config key '" + key + "'", lineno);
        }
    }
    if (!have_maps || !have_algos || cfg.box_densities.empty() || cfg.agent_counts.empty())
        throw ParseError("bench config needs maps, box_densities, agents and algos");
    return cfg;
}

struct BenchRow {
    std::string map;
    int static_pct = 0;
    int box_pct = 0;
    int agents = 0;
    std::string algo;
    std::uint64_t instance_seed = 0;
    bool solved = false;
    int soc = -1;
    std::uint64_t runtime_ms = 0;
    std::uint64_t hl_generated = 0;
};

struct BenchCellSummary {
    std::string map;
    int box_pct = 0;
    int agents = 0;
    std::string algo;
    int solved = 0;
    int total = 0;
    // means over the instances commonly solved by every configured
    // algorithm; common == 0 leaves the means unset
    int common = 0;
    double mean_runtime_ms = 0;
    double mean_soc = 0;
    double mean_hl_generated = 0;
};

struct BenchResults {
    std::vector<BenchRow> rows;
    std::vector<BenchCellSummary> summary;
};

inline std::string density_string(int pct) {
    if (pct == 0) return "0";
    if (pct == 100) return "1";
    if (pct % 10 == 0) return "0." + std::to_string(pct / 10);
    std::string s = std::to_string(pct);
    if (pct < 10) return "0.0" + s;
    return "0." + s;
}

// Every (map x density x agents x instance x algorithm) combination; each
// instance seed is derived from config.seed and the cell coordinates, so
// any row is reproducible in isolation.
template <typename ProgressFn>
inline BenchResults run_benchmark(const BenchConfig& cfg, ProgressFn&& progress) {
    BenchResults results;
    SolverConfig scfg;
    scfg.time_limit_ms = std::uint64_t(cfg.time_limit_s) * 1000;
    scfg.horizon_factor = cfg.horizon_factor;

    for (std::size_t mi = 0; mi < cfg.maps.size(); ++mi) {
        const MapSpec& spec = cfg.maps[mi];
        for (int density : cfg.box_densities) {
            for (int agents : cfg.agent_counts) {
                std::vector<std::vector<bool>> solved_matrix(
                    cfg.algos.size(), std::vector<bool>(cfg.instances_per_cell, false));
                std::size_t first_row = results.rows.size();
                for (int k = 0; k < cfg.instances_per_cell; ++k) {
                    std::uint64_t instance_seed =
                        cfg.seed * 1000000 + mi * 100000 + std::uint64_t(density) * 1000 +
                        std::uint64_t(agents) * 100 + std::uint64_t(k);
                    Instance inst = generate_instance(spec.width, spec.height, spec.static_pct,
                                                      density, agents, instance_seed);
                    for (std::size_t ai = 0; ai < cfg.algos.size(); ++ai) {
                        SolveOutput out;
                        if (cfg.algos[ai] == "cbs-moh")
                            out = solve_cbs(inst, LowLevel::moh, scfg);
                        else if (cfg.algos[ai] == "cbs-mol")
                            out = solve_cbs(inst, LowLevel::mol, scfg);
                        else
                            out = solve_pp(inst, scfg);
                        BenchRow row;
                        row.map = spec.name;
                        row.static_pct = spec.static_pct;
                        row.box_pct = density;
                        row.agents = agents;
                        row.algo = cfg.algos[ai];
                        row.instance_seed = instance_seed;
                        row.solved = out.solution.has_value();
                        row.soc = row.solved ? sum_of_costs(*out.solution) : -1;
                        row.runtime_ms = out.stats.runtime_ms;
                        row.hl_generated = out.stats.hl_generated;
                        solved_matrix[ai][k] = row.solved;
                        progress(row, out);
                        results.rows.push_back(std::move(row));
                    }
                }
                // common = solved by every configured algorithm
                std::vector<bool> common(cfg.instances_per_cell, true);
                for (const auto& alg : solved_matrix)
                    for (int k = 0; k < cfg.instances_per_cell; ++k)
                        common[k] = common[k] && alg[k];
                for (std::size_t ai = 0; ai < cfg.algos.size(); ++ai) {
                    BenchCellSummary cell;
                    cell.map = spec.name;
                    cell.box_pct = density;
                    cell.agents = agents;
                    cell.algo = cfg.algos[ai];
                    cell.total = cfg.instances_per_cell;
                    double rt = 0, soc = 0, gen = 0;
                    for (int k = 0; k < cfg.instances_per_cell; ++k) {
                        const BenchRow& row =
                            results.rows[first_row + std::size_t(k) * cfg.algos.size() + ai];
                        if (row.solved) ++cell.solved;
                        if (common[k]) {
                            ++cell.common;
                            rt += double(row.runtime_ms);
                            soc += double(row.soc);
                            gen += double(row.hl_generated);
                        }
                    }
                    if (cell.common > 0) {
                        cell.mean_runtime_ms = rt / cell.common;
                        cell.mean_soc = soc / cell.common;
                        cell.mean_hl_generated = gen / cell.common;
                    }
                    results.summary.push_back(std::move(cell));
                }
            }
        }
    }
    return results;
}

inline BenchResults run_benchmark(const BenchConfig& cfg) {
    return run_benchmark(cfg, [](const BenchRow&, const SolveOutput&) {});
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "map,static_density,box_density,agents,algo,instance_seed,solved,soc,runtime_ms,"
           "hl_generated\n";
    for (const BenchRow& r : rows) {
        out << r.map << "," << density_string(r.static_pct) << "," << density_string(r.box_pct)
            << "," << r.agents << "," << r.algo << "," << r.instance_seed << ","
            << (r.solved ? 1 : 0) << "," << r.soc << "," << r.runtime_ms << ","
            << r.hl_generated << "\n";
    }
}

// Cells with zero commonly-solved instances print '-' for the means rather
// than a number.
inline void write_bench_summary(std::ostream& out, const std::vector<BenchCellSummary>& cells) {
    out << "map,box_density,agents,algo,success_rate,common,mean_runtime_ms,mean_soc,"
           "mean_hl_generated\n";
    for (const BenchCellSummary& c : cells) {
        std::ostringstream row;
        row << c.map << "," << density_string(c.box_pct) << "," << c.agents << "," << c.algo
            << "," << std::fixed << std::setprecision(2) << double(c.solved) / c.total << ","
            << c.common << ",";
        if (c.common > 0) {
            row << std::setprecision(1) << c.mean_runtime_ms << "," << c.mean_soc << ","
                << c.mean_hl_generated;
        } else {
            row << "-,-,-";
        }
        out << row.str() << "\n";
    }
}

}  // namespace mpamo
