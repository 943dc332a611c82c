// Command-line surface: solve, validate, generate, bench, oracle, render.
// Exit codes: 0 success/solved, 2 unsolved or failed validation, 1 usage or
// parse errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpamo/bench.hpp"
#include "mpamo/cbs.hpp"
#include "mpamo/io.hpp"
#include "mpamo/oracle.hpp"
#include "mpamo/pp.hpp"
#include "mpamo/sim.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUnsolved = 2;
constexpr int kExitError = 1;

struct SolveArgs {
    std::string map_path;
    std::string agents_path;
    std::string algo = "cbs-mol";
    int time_limit_s = 60;
    int horizon_factor = 2;
    std::uint64_t seed = 0;
    std::string out_path;
    bool include_hp_box_occupancy = false;
    std::string priority_order;
};

std::vector<int> parse_priority_order(const std::string& s, int n_agents) {
    std::vector<int> order;
    if (s.empty()) return order;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok));
    std::vector<bool> seen(n_agents, false);
    if (int(order.size()) != n_agents) throw std::runtime_error("priority order length mismatch");
    for (int a : order) {
        if (a < 0 || a >= n_agents || seen[a])
            throw std::runtime_error("priority order is not a permutation of agents");
        seen[a] = true;
    }
    return order;
}

std::string echo_config(const SolveArgs& a) {
    std::ostringstream os;
    os << "algo=" << a.algo << " time-limit-s=" << a.time_limit_s
       << " horizon-factor=" << a.horizon_factor << " seed=" << a.seed;
    if (a.include_hp_box_occupancy) os << " include-hp-box-occupancy=1";
    if (!a.priority_order.empty()) os << " priority-order=" << a.priority_order;
    return os.str();
}

int run_solve(const SolveArgs& args) {
    mpamo::Instance inst = mpamo::load_instance(args.map_path, args.agents_path);
    mpamo::SolverConfig cfg;
    cfg.time_limit_ms = std::uint64_t(args.time_limit_s) * 1000;
    cfg.horizon_factor = args.horizon_factor;
    cfg.include_hp_box_occupancy = args.include_hp_box_occupancy;
    cfg.priority_order = parse_priority_order(args.priority_order, inst.num_agents());

    mpamo::SolveOutput out;
    if (args.algo == "cbs-moh")
        out = mpamo::solve_cbs(inst, mpamo::LowLevel::moh, cfg);
    else if (args.algo == "cbs-mol")
        out = mpamo::solve_cbs(inst, mpamo::LowLevel::mol, cfg);
    else if (args.algo == "pp-pamo")
        out = mpamo::solve_pp(inst, cfg);
    else
        throw std::runtime_error("unknown algorithm '" + args.algo + "'");

    mpamo::SolutionRecord rec;
    rec.algorithm = args.algo;
    rec.solved = out.solution.has_value();
    rec.soc = rec.solved ? mpamo::sum_of_costs(*out.solution) : -1;
    rec.makespan = rec.solved ? mpamo::makespan(*out.solution) : -1;
    rec.runtime_ms = out.stats.runtime_ms;
    rec.hl_generated = out.stats.hl_generated;
    rec.hl_expanded = out.stats.hl_expanded;
    rec.ll_expansions = out.stats.ll_expansions;
    if (out.solution) rec.paths = *out.solution;
    rec.config_echo = echo_config(args);

    if (!args.out_path.empty()) {
        std::ofstream f(args.out_path);
        if (!f) throw std::runtime_error("cannot write '" + args.out_path + "'");
        mpamo::write_solution(f, rec);
    } else {
        mpamo::write_solution(std::cout, rec);
    }

    std::cerr << "outcome=" << mpamo::to_string(out.stats.outcome);
    if (!out.stats.detail.empty()) std::cerr << " (" << out.stats.detail << ")";
    if (rec.solved) std::cerr << " soc=" << rec.soc << " makespan=" << rec.makespan;
    std::cerr << " runtime_ms=" << out.stats.runtime_ms << "\n";
    return rec.solved ? kExitSolved : kExitUnsolved;
}

int run_validate(const std::string& map_path, const std::string& agents_path,
                 const std::string& solution_path) {
    mpamo::Instance inst = mpamo::load_instance(map_path, agents_path);
    mpamo::SolutionRecord rec = mpamo::load_solution(solution_path);
    mpamo::ValidationReport rep = mpamo::validate_solution(inst, rec.paths);
    std::cout << rep.text();
    return rep.ok ? kExitSolved : kExitUnsolved;
}

int run_render(const std::string& map_path, const std::string& agents_path,
               const std::string& solution_path, const std::string& out_path) {
    mpamo::Instance inst = mpamo::load_instance(map_path, agents_path);
    mpamo::SolutionRecord rec = mpamo::load_solution(solution_path);
    std::vector<std::string> frames = mpamo::render_frames(inst, rec.paths);
    std::ostringstream os;
    for (std::size_t t = 0; t < frames.size(); ++t)
        os << "t=" << t << "\n" << frames[t] << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
        f << os.str();
    } else {
        std::cout << os.str();
    }
    return kExitSolved;
}

int run_generate(int width, int height, int static_pct, int box_pct, int agents,
                 std::uint64_t seed, const std::string& map_out, const std::string& agents_out) {
    mpamo::Instance inst =
        mpamo::generate_instance(width, height, static_pct, box_pct, agents, seed);
    std::ofstream mf(map_out);
    if (!mf) throw std::runtime_error("cannot write '" + map_out + "'");
    mpamo::write_map(mf, inst.map, inst.boxes);
    std::ofstream af(agents_out);
    if (!af) throw std::runtime_error("cannot write '" + agents_out + "'");
    af << "# generated: " << width << "x" << height << " statics=" << static_pct
       << "% boxes=" << box_pct << "% seed=" << seed << "\n";
    mpamo::write_agents(af, inst.agents);
    std::cerr << "wrote " << map_out << " (" << inst.num_boxes() << " boxes, "
              << inst.map.num_static() << " statics) and " << agents_out << " ("
              << inst.num_agents() << " agents)\n";
    return kExitSolved;
}

int run_bench(const std::string& config_path, const std::string& out_path,
              const std::string& summary_path, bool quiet) {
    std::ifstream cf(config_path);
    if (!cf) throw std::runtime_error("cannot open '" + config_path + "'");
    mpamo::BenchConfig cfg = mpamo::parse_bench_config(cf);
    mpamo::BenchResults results =
        mpamo::run_benchmark(cfg, [&](const mpamo::BenchRow& row, const mpamo::SolveOutput&) {
            if (!quiet)
                std::cerr << row.map << " boxes=" << row.box_pct << "% agents=" << row.agents
                          << " " << row.algo << " seed=" << row.instance_seed
                          << (row.solved ? " solved soc=" + std::to_string(row.soc)
                                         : " unsolved")
                          << " runtime_ms=" << row.runtime_ms << "\n";
        });
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
    mpamo::write_bench_csv(f, results.rows);
    if (!summary_path.empty()) {
        std::ofstream sf(summary_path);
        if (!sf) throw std::runtime_error("cannot write '" + summary_path + "'");
        mpamo::write_bench_summary(sf, results.summary);
    } else {
        mpamo::write_bench_summary(std::cout, results.summary);
    }
    return kExitSolved;
}

int run_oracle(const std::string& map_path, const std::string& agents_path, int horizon,
               int soc_cap, std::uint64_t state_cap, const std::string& out_path) {
    mpamo::Instance inst = mpamo::load_instance(map_path, agents_path);
    mpamo::OracleLimits limits;
    limits.horizon = horizon;
    limits.soc_cap = soc_cap;
    if (state_cap) limits.state_cap = state_cap;
    mpamo::OracleResult res = mpamo::solve_exact(inst, limits);
    if (res.status == mpamo::OracleResult::Status::state_bound_exceeded) {
        std::cerr << "oracle: refusing instance, joint state bound exceeds "
                  << limits.state_cap << " states\n";
        return kExitUnsolved;
    }
    if (!res.solved()) {
        std::cerr << "oracle: infeasible within horizon (" << res.expansions
                  << " expansions)\n";
        return kExitUnsolved;
    }
    std::cerr << "oracle: optimal soc=" << res.soc << " makespan=" << mpamo::makespan(res.witness)
              << " expansions=" << res.expansions << "\n";
    mpamo::SolutionRecord rec;
    rec.algorithm = "oracle";
    rec.solved = true;
    rec.soc = res.soc;
    rec.makespan = mpamo::makespan(res.witness);
    rec.paths = res.witness;
    std::ostringstream echo;
    echo << "algo=oracle horizon=" << horizon << " soc-cap=" << soc_cap;
    rec.config_echo = echo.str();
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
        mpamo::write_solution(f, rec);
    } else {
        mpamo::write_solution(std::cout, rec);
    }
    return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"M-PAMO solver toolkit: multi-agent path finding among movable obstacles"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "solve an instance");
    solve->add_option("--map", sa.map_path, "map file")->required();
    solve->add_option("--agents", sa.agents_path, "agents file")->required();
    solve->add_option("--algo", sa.algo, "cbs-moh | cbs-mol | pp-pamo")
        ->check(CLI::IsMember({"cbs-moh", "cbs-mol", "pp-pamo"}));
    solve->add_option("--time-limit-s", sa.time_limit_s, "per-solve limit (default 60)");
    solve->add_option("--horizon-factor", sa.horizon_factor, "low-level horizon factor");
    solve->add_option("--seed", sa.seed, "echoed into the solution record");
    solve->add_option("--out", sa.out_path, "solution file (stdout if omitted)");
    solve->add_flag("--include-hp-box-occupancy", sa.include_hp_box_occupancy,
                    "pp-pamo: treat higher-priority box motion as dynamic obstacles");
    solve->add_option("--priority-order", sa.priority_order,
                      "pp-pamo: comma-separated agent ids, highest first");

    std::string v_map, v_agents, v_solution;
    auto* validate = app.add_subcommand("validate", "validate a solution file");
    validate->add_option("--map", v_map)->required();
    validate->add_option("--agents", v_agents)->required();
    validate->add_option("--solution", v_solution)->required();

    std::string r_map, r_agents, r_solution, r_out;
    auto* render = app.add_subcommand("render", "render per-timestep text frames");
    render->add_option("--map", r_map)->required();
    render->add_option("--agents", r_agents)->required();
    render->add_option("--solution", r_solution)->required();
    render->add_option("--out", r_out, "output file (stdout if omitted)");

    int g_w = 8, g_h = 8, g_static = 0, g_box = 10, g_agents = 2;
    std::uint64_t g_seed = 1;
    std::string g_map_out = "out.map", g_agents_out = "out.agents";
    auto* generate = app.add_subcommand("generate", "generate a seeded random instance");
    generate->add_option("--width", g_w);
    generate->add_option("--height", g_h);
    generate->add_option("--static-density", g_static, "percent of cells");
    generate->add_option("--box-density", g_box, "percent of cells");
    generate->add_option("--agents", g_agents);
    generate->add_option("--seed", g_seed);
    generate->add_option("--map-out", g_map_out);
    generate->add_option("--agents-out", g_agents_out);

    std::string b_config, b_out = "results.csv", b_summary;
    bool b_quiet = false;
    auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
    bench->add_option("--config", b_config, "bench config file")->required();
    bench->add_option("--out", b_out, "results CSV path");
    bench->add_option("--summary-out", b_summary, "summary CSV path (stdout if omitted)");
    bench->add_flag("--quiet", b_quiet, "suppress per-run progress");

    std::string o_map, o_agents, o_out;
    int o_horizon = 0, o_soc_cap = -1;
    std::uint64_t o_state_cap = 0;
    auto* oracle = app.add_subcommand("oracle", "exact brute-force optimum (micro instances)");
    oracle->add_option("--map", o_map)->required();
    oracle->add_option("--agents", o_agents)->required();
    oracle->add_option("--horizon", o_horizon, "max timestep (0: auto)");
    oracle->add_option("--soc-cap", o_soc_cap, "prune joint plans above this cost");
    oracle->add_option("--state-cap", o_state_cap, "refuse instances above this state bound");
    oracle->add_option("--out", o_out, "solution file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(sa);
        if (validate->parsed()) return run_validate(v_map, v_agents, v_solution);
        if (render->parsed()) return run_render(r_map, r_agents, r_solution, r_out);
        if (generate->parsed())
            return run_generate(g_w, g_h, g_static, g_box, g_agents, g_seed, g_map_out,
                                g_agents_out);
        if (bench->parsed()) return run_bench(b_config, b_out, b_summary, b_quiet);
        if (oracle->parsed())
            return run_oracle(o_map, o_agents, o_horizon, o_soc_cap, o_state_cap, o_out);
    } catch (const mpamo::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
