#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "mpamo/bench.hpp"

using namespace mpamo;

TEST_CASE("generate_instance: floor-rule counts and placement invariants") {
    Instance inst = generate_instance(8, 8, 0, 30, 6, 1);
    REQUIRE(inst.num_boxes() == 19);  // floor(0.30 * 64)
    REQUIRE(inst.num_agents() == 6);
    REQUIRE(inst.map.num_static() == 0);
    inst.validate();

    Instance random16 = generate_instance(16, 16, 10, 10, 6, 2);
    REQUIRE(random16.map.num_static() == 25);  // floor(0.10 * 256)
    REQUIRE(random16.num_boxes() == 25);
    random16.validate();
}

TEST_CASE("generate_instance: same seed same instance, new seed new instance") {
    Instance a = generate_instance(8, 8, 10, 20, 4, 7);
    Instance b = generate_instance(8, 8, 10, 20, 4, 7);
    Instance c = generate_instance(8, 8, 10, 20, 4, 8);
    REQUIRE(a.boxes == b.boxes);
    REQUIRE(a.agents.size() == b.agents.size());
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        REQUIRE(a.agents[i].start == b.agents[i].start);
        REQUIRE(a.agents[i].goal == b.agents[i].goal);
    }
    REQUIRE(a.num_boxes() == c.num_boxes());
    bool identical = a.boxes == c.boxes;
    for (std::size_t i = 0; i < a.agents.size() && identical; ++i)
        identical = a.agents[i].start == c.agents[i].start;
    REQUIRE_FALSE(identical);
}

TEST_CASE("generate_instance: impossible fills are explicit errors") {
    REQUIRE_THROWS_AS(generate_instance(2, 2, 0, 90, 4, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_instance(2, 2, 50, 0, 3, 1), std::invalid_argument);
}

TEST_CASE("map spec parsing") {
    MapSpec empty = parse_map_spec("empty-8x8");
    REQUIRE(empty.width == 8);
    REQUIRE(empty.height == 8);
    REQUIRE(empty.static_pct == 0);
    MapSpec random = parse_map_spec("random-16x16-10");
    REQUIRE(random.width == 16);
    REQUIRE(random.static_pct == 10);
    REQUIRE_THROWS_AS(parse_map_spec("weird-8x8"), ParseError);
}

TEST_CASE("bench config parsing") {
    std::istringstream in(
        "# tiny sweep\n"
        "maps: empty-4x4 random-6x6-10\n"
        "box_densities: 10 20\n"
        "agents: 2\n"
        "algos: cbs-moh cbs-mol\n"
        "instances_per_cell: 2\n"
        "time_limit_s: 5\n"
        "seed: 3\n");
    BenchConfig cfg = parse_bench_config(in);
    REQUIRE(cfg.maps.size() == 2);
    REQUIRE(cfg.box_densities == std::vector<int>{10, 20});
    REQUIRE(cfg.agent_counts == std::vector<int>{2});
    REQUIRE(cfg.algos.size() == 2);
    REQUIRE(cfg.instances_per_cell == 2);
    REQUIRE(cfg.time_limit_s == 5);
    REQUIRE(cfg.seed == 3);

    std::istringstream bad("maps: empty-4x4\nalgos: dfs\n");
    REQUIRE_THROWS_AS(parse_bench_config(bad), ParseError);
}

TEST_CASE("run_benchmark: deterministic rows, zero-box reduction agrees across variants") {
    BenchConfig cfg;
    cfg.maps = {parse_map_spec("empty-5x5")};
    cfg.box_densities = {0};
    cfg.agent_counts = {3};
    cfg.algos = {"cbs-moh", "cbs-mol"};
    cfg.instances_per_cell = 4;
    cfg.time_limit_s = 10;
    cfg.seed = 5;

    BenchResults r1 = run_benchmark(cfg);
    BenchResults r2 = run_benchmark(cfg);
    std::ostringstream csv1, csv2;
    write_bench_csv(csv1, r1.rows);
    write_bench_csv(csv2, r2.rows);
    REQUIRE(csv1.str() == csv2.str());

    // with no boxes both CBS variants reduce to plain optimal CBS
    REQUIRE(r1.rows.size() == 8);
    for (std::size_t k = 0; k < r1.rows.size(); k += 2) {
        const BenchRow& moh = r1.rows[k];
        const BenchRow& mol = r1.rows[k + 1];
        REQUIRE(moh.instance_seed == mol.instance_seed);
        REQUIRE(moh.solved == mol.solved);
        REQUIRE(moh.soc == mol.soc);
    }

    // summary covers each algo once and counts commonly solved instances
    REQUIRE(r1.summary.size() == 2);
    REQUIRE(r1.summary[0].total == 4);
    REQUIRE(r1.summary[0].common == r1.summary[1].common);
}

TEST_CASE("csv header is frozen") {
    std::ostringstream out;
    write_bench_csv(out, {});
    REQUIRE(out.str() ==
            "map,static_density,box_density,agents,algo,instance_seed,solved,soc,runtime_ms,"
            "hl_generated\n");
}

TEST_CASE("density formatting") {
    REQUIRE(density_string(0) == "0");
    REQUIRE(density_string(10) == "0.1");
    REQUIRE(density_string(25) == "0.25");
    REQUIRE(density_string(5) == "0.05");
}
