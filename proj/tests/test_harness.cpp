// Experiment-driver tests: plan construction, seed derivation, matrix
// execution lifecycle (resume, isolated regeneration, parallel/serial
// equivalence), export determinism, analysis shapes, and configuration
// layering diagnostics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qde/benchmarks.hpp"
#include "qde/errors.hpp"
#include "qde/experiment.hpp"

using namespace qde;
namespace fs = std::filesystem;

namespace {

// Unique scratch directory removed at scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() /
               ("qde_harness_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << content;
}

// Small fast plan: subset of algorithms/functions, tiny budgets.
ExperimentPlan tiny_plan(const std::string& out_dir,
                         std::vector<std::string> algorithm_ids,
                         std::vector<int> function_ids, int replicates,
                         int np = 6, int generations = 4) {
    ExperimentPlan plan = default_plan(3);
    std::vector<AlgorithmSpec> algs;
    for (const auto& want : algorithm_ids)
        for (const auto& a : plan.algorithms)
            if (a.id == want) algs.push_back(a);
    REQUIRE(algs.size() == algorithm_ids.size());
    plan.algorithms = std::move(algs);
    plan.functions.clear();
    for (int id : function_ids) plan.functions.push_back({id, 3});
    plan.replicates = replicates;
    plan.engine.population_size = np;
    plan.engine.max_generations = generations;
    plan.output_dir = out_dir;
    return plan;
}

std::vector<RunRecord> in_memory_records(const ExperimentPlan& plan) {
    std::vector<RunRecord> records;
    for (const auto& a : plan.algorithms)
        for (const auto& f : plan.functions)
            for (int rep = 0; rep < plan.replicates; ++rep)
                records.push_back(execute_run(plan, a, f, rep));
    return records;
}

}  // namespace

TEST_CASE("default plan: canonical 13 rows, 24 columns, 20 replicates") {
    const ExperimentPlan plan = default_plan();
    const std::vector<std::string> expected_ids = {
        "E4-ESD",   "E4-EGSD",   "E4-PM1",   "E4-PM3",   "E4-PM13",
        "E4-RQ",    "Polar-ESD", "Polar-EGSD", "Polar-PM1", "Polar-PM3",
        "Polar-PM13", "Polar-RQ", "Real-DE"};
    REQUIRE(plan.algorithms.size() == 13);
    for (std::size_t i = 0; i < expected_ids.size(); ++i)
        CHECK(plan.algorithms[i].id == expected_ids[i]);

    // Per-family scale defaults: simple-difference strategies and the
    // baseline at 0.5, the polar-rotor family magnitude-neutral at 1.
    for (const auto& a : plan.algorithms) {
        const bool rotor_family =
            !a.real_valued && (a.mutation.strategy == Strategy::PM1 ||
                               a.mutation.strategy == Strategy::PM3 ||
                               a.mutation.strategy == Strategy::PM13);
        CHECK(a.mutation.alpha == (rotor_family ? 1.0 : 0.5));
        CHECK(a.mutation.beta == 0.5);
    }
    CHECK(plan.algorithms.back().real_valued);

    REQUIRE(plan.functions.size() == 24);
    for (int i = 0; i < 24; ++i) {
        CHECK(plan.functions[i].id == i + 1);
        CHECK(plan.functions[i].dimension == 3);
    }
    CHECK(plan.replicates == 20);
    CHECK(plan.master_seed == 1);
    CHECK(plan.algorithms.size() * plan.functions.size() * plan.replicates ==
          6240);

    const auto smoke = functions_for_tier("smoke", 3);
    REQUIRE(smoke.size() == 5);
    CHECK(plan.algorithms.size() * smoke.size() * plan.replicates == 1300);
    CHECK(smoke[0].id == 1);
    CHECK(smoke[1].id == 8);
    CHECK(smoke[2].id == 12);
    CHECK(smoke[3].id == 15);
    CHECK(smoke[4].id == 20);
    CHECK(functions_for_tier("full", 8).size() == 24);
    CHECK(functions_for_tier("full", 8)[0].dimension == 8);
    CHECK_THROWS_AS(functions_for_tier("weekly", 3), ConfigError);
}

TEST_CASE("seed derivation: frozen oracle values, instance sharing") {
    // Frozen against an independent implementation of the mixing chain.
    CHECK(derive_engine_seed(1, "Polar-PM1", 1, 0) ==
          6595165994850773410ULL);
    CHECK(derive_instance_seed(1, 1, 0) == 17924532978693573481ULL);
    CHECK(derive_engine_seed(1, "Real-DE", 24, 19) ==
          15889957295858296352ULL);
    CHECK(derive_instance_seed(1, 24, 19) == 7289089807452907082ULL);

    // The instance seed ignores the algorithm: every row faces the same
    // function instance in a given replicate.
    const auto plan = default_plan();
    std::set<std::uint64_t> engine_seeds;
    for (const auto& a : plan.algorithms) {
        engine_seeds.insert(derive_engine_seed(1, a.id, 7, 3));
        CHECK(derive_instance_seed(1, 7, 3) == derive_instance_seed(1, 7, 3));
    }
    CHECK(engine_seeds.size() == plan.algorithms.size());
    CHECK(derive_engine_seed(1, "E4-ESD", 7, 3) !=
          derive_engine_seed(2, "E4-ESD", 7, 3));
    CHECK(derive_engine_seed(1, "E4-ESD", 7, 3) !=
          derive_engine_seed(1, "E4-ESD", 7, 4));
    CHECK(derive_engine_seed(1, "E4-ESD", 7, 3) !=
          derive_engine_seed(1, "E4-ESD", 8, 3));
}

TEST_CASE("execute_run: deterministic, correct bookkeeping, baseline path") {
    TempDir tmp;
    const auto plan =
        tiny_plan(tmp.str(), {"Polar-PM3", "Real-DE"}, {1}, 1, 8, 6);

    std::vector<double> trace1, trace2;
    const RunRecord r1 =
        execute_run(plan, plan.algorithms[0], plan.functions[0], 0, &trace1);
    const RunRecord r2 =
        execute_run(plan, plan.algorithms[0], plan.functions[0], 0, &trace2);
    CHECK(trace1 == trace2);
    CHECK(r1.final_regret == r2.final_regret);
    CHECK(r1.algorithm_id == "Polar-PM3");
    CHECK(r1.function_id == 1);
    CHECK(r1.dimension == 3);
    CHECK(r1.replicate == 0);
    CHECK(r1.engine_seed == derive_engine_seed(1, "Polar-PM3", 1, 0));
    CHECK(trace1.size() == 7);  // initial best + one entry per generation
    CHECK(r1.evaluations == 8 * 7);
    CHECK(r1.final_regret == trace1.back());
    CHECK(r1.convergence_generation >= 0);
    CHECK(r1.convergence_generation <= 6);

    // The real-valued baseline runs through the same record pipeline.
    const RunRecord rde =
        execute_run(plan, plan.algorithms[1], plan.functions[0], 0);
    CHECK(rde.algorithm_id == "Real-DE");
    CHECK(rde.evaluations == 8 * 7);
    CHECK(rde.final_regret >= 0.0);
    CHECK(rde.final_regret != r1.final_regret);  // different stream
}

TEST_CASE("run_matrix: execute, resume, isolated bit-identical regeneration") {
    TempDir tmp;
    const auto plan =
        tiny_plan(tmp.str(), {"E4-ESD", "Polar-PM1"}, {1, 12}, 2);

    const MatrixReport first = run_matrix(plan);
    CHECK(first.executed == 8);
    CHECK(first.skipped == 0);
    CHECK(first.failed == 0);
    CHECK(fs::exists(fs::path(tmp.str()) / "provenance.json"));

    // Idempotent rerun: everything skipped.
    const MatrixReport second = run_matrix(plan);
    CHECK(second.executed == 0);
    CHECK(second.skipped == 8);

    // Loaded records agree exactly with fresh in-memory execution.
    const auto loaded = load_records(plan);
    REQUIRE(loaded.size() == 8);
    const auto fresh = in_memory_records(plan);
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].algorithm_id == fresh[i].algorithm_id);
        CHECK(loaded[i].function_id == fresh[i].function_id);
        CHECK(loaded[i].replicate == fresh[i].replicate);
        CHECK(loaded[i].final_regret == fresh[i].final_regret);
        CHECK(loaded[i].convergence_generation ==
              fresh[i].convergence_generation);
        CHECK(loaded[i].evaluations == fresh[i].evaluations);
        CHECK(loaded[i].engine_seed == fresh[i].engine_seed);
    }

    // Deleting one cell and re-running regenerates exactly that cell,
    // byte-identical.
    const fs::path victim = trace_path(plan, "Polar-PM1", 12, 3, 1);
    REQUIRE(fs::exists(victim));
    const std::string original = read_file(victim);
    fs::remove(victim);
    const MatrixReport third = run_matrix(plan);
    CHECK(third.executed == 1);
    CHECK(third.skipped == 7);
    CHECK(read_file(victim) == original);
}

TEST_CASE("trace files: format and naming") {
    TempDir tmp;
    const auto plan = tiny_plan(tmp.str(), {"E4-EGSD"}, {3}, 1, 6, 4);
    run_matrix(plan);

    const fs::path p = trace_path(plan, "E4-EGSD", 3, 3, 0);
    CHECK(p.filename().string() == "f03_d3_r000.csv");
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "generation,best_fitness");
    std::vector<double> parsed;
    int g = 0;
    while (std::getline(in, line)) {
        CHECK(line.rfind(std::to_string(g) + ",", 0) == 0);
        parsed.push_back(std::strtod(line.c_str() + line.find(',') + 1,
                                     nullptr));
        ++g;
    }
    CHECK(g == 5);  // generations + 1 rows

    // 17-significant-digit formatting round-trips the exact doubles.
    std::vector<double> trace;
    execute_run(plan, plan.algorithms[0], plan.functions[0], 0, &trace);
    CHECK(parsed == trace);
}

TEST_CASE("export: stable bytes, provenance header, format validation") {
    TempDir tmp;
    const auto plan =
        tiny_plan(tmp.str(), {"E4-ESD", "Real-DE"}, {1, 2}, 2);
    run_matrix(plan);
    const auto records = load_records(plan);

    const auto written1 = export_results(plan, records, "csv");
    REQUIRE(written1.size() == 2);
    const std::string summary1 = read_file(written1[0]);
    const std::string records1 = read_file(written1[1]);
    const auto written2 = export_results(plan, records, "csv");
    CHECK(read_file(written2[0]) == summary1);  // byte-identical re-export
    CHECK(read_file(written2[1]) == records1);

    // Provenance header: config, defaults, code version, registry index.
    CHECK(summary1.find("# code_version: " + code_version()) !=
          std::string::npos);
    CHECK(summary1.find("# master_seed: 1") != std::string::npos);
    CHECK(summary1.find("# population_size: 6") != std::string::npos);
    CHECK(summary1.find("# registry: f24 ") != std::string::npos);
    CHECK(summary1.find("# algorithm: Real-DE (real-valued rand/1/bin, "
                        "F=0.5)") != std::string::npos);

    // One summary row per (algorithm, function) cell plus one header line.
    std::size_t data_lines = 0;
    std::stringstream ss(summary1);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') ++data_lines;
    CHECK(data_lines == 1 + 2 * 2);

    // Long-form file: one row per run.
    std::size_t record_lines = 0;
    std::stringstream sr(records1);
    while (std::getline(sr, line))
        if (!line.empty() && line[0] != '#') ++record_lines;
    CHECK(record_lines == 1 + records.size());

    // JSON flavor parses and carries the same cardinalities.
    const auto written_json = export_results(plan, records, "json");
    const auto js = nlohmann::json::parse(read_file(written_json[0]));
    CHECK(js["summary"].size() == 4);
    CHECK(js["provenance"]["master_seed"] == 1);
    const auto jr = nlohmann::json::parse(read_file(written_json[1]));
    CHECK(jr["records"].size() == records.size());

    CHECK_THROWS_AS(export_results(plan, records, "xml"), UnknownFormat);
    CHECK_THROWS_AS(export_results(plan, {}, "csv"), EmptyCell);
}

TEST_CASE("parallel and serial execution produce identical results") {
    TempDir serial_dir, parallel_dir;
    auto serial = tiny_plan(serial_dir.str(), {"E4-PM13", "Polar-RQ"},
                            {15, 20}, 3);
    auto parallel = tiny_plan(parallel_dir.str(), {"E4-PM13", "Polar-RQ"},
                              {15, 20}, 3);
    serial.jobs = 1;
    parallel.jobs = 4;
    run_matrix(serial);
    run_matrix(parallel);
    export_results(serial, load_records(serial), "csv");
    export_results(parallel, load_records(parallel), "csv");
    CHECK(read_file(fs::path(serial_dir.str()) / "summary.csv") ==
          read_file(fs::path(parallel_dir.str()) / "summary.csv"));
    CHECK(read_file(fs::path(serial_dir.str()) / "records.csv") ==
          read_file(fs::path(parallel_dir.str()) / "records.csv"));
    CHECK(read_file(fs::path(serial_dir.str()) / "provenance.json") ==
          read_file(fs::path(parallel_dir.str()) / "provenance.json"));
}

TEST_CASE("analyze: hypothesis shapes over an in-memory matrix") {
    TempDir tmp;
    ExperimentPlan plan = default_plan(3);
    plan.output_dir = tmp.str();
    plan.functions = {{1, 3}, {2, 3}};  // two Separable functions
    plan.replicates = 2;
    plan.engine.population_size = 6;
    plan.engine.max_generations = 4;
    const auto records = in_memory_records(plan);
    REQUIRE(records.size() == 13 * 2 * 2);

    const auto all = analyze(plan, records, "all");
    REQUIRE(all.size() == 1);
    CHECK(all[0].friedman.k == 13);
    CHECK(all[0].friedman.n == 2);
    CHECK(all[0].treatments.size() == 13);
    CHECK(all[0].cd.order.size() == 13);

    const auto groups = analyze(plan, records, "per-group");
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].scope == "Separable");
    CHECK(groups[0].friedman.n == 2);

    const auto by_mut = analyze(plan, records, "by-mutation");
    REQUIRE(by_mut.size() == 1);
    CHECK(by_mut[0].friedman.k == 6);
    CHECK(by_mut[0].friedman.n == 4);  // functions x initializations
    CHECK(by_mut[0].treatments ==
          std::vector<std::string>{"ESD", "EGSD", "PM1", "PM3", "PM13", "RQ"});

    const auto by_init = analyze(plan, records, "by-initialization");
    REQUIRE(by_init.size() == 1);
    CHECK(by_init[0].friedman.k == 2);
    CHECK(by_init[0].friedman.n == 12);  // functions x mutations
    CHECK(by_init[0].treatments ==
          std::vector<std::string>{"E4", "Polar"});

    const auto conv = analyze(plan, records, "convergence");
    REQUIRE(conv.size() == 1);
    CHECK(conv[0].friedman.k == 13);

    // The rendered document names the hypothesis and the cliques.
    const std::string doc = render_analysis(all);
    CHECK(doc.find("hypothesis all [all]") != std::string::npos);
    CHECK(doc.find("clique") != std::string::npos);

    // Persisted analysis is deterministic.
    const auto paths1 = write_analysis(plan, all, "csv");
    REQUIRE(paths1.size() == 1);
    const std::string bytes = read_file(paths1[0]);
    CHECK(bytes.find("position,treatment,mean_rank") != std::string::npos);
    const auto paths2 = write_analysis(plan, all, "csv");
    CHECK(read_file(paths2[0]) == bytes);

    CHECK_THROWS_AS(analyze(plan, records, "by-magic"), ConfigError);
}

TEST_CASE("analyze: incomplete matrices are rejected with a cell list") {
    TempDir tmp;
    ExperimentPlan plan = default_plan(3);
    plan.output_dir = tmp.str();
    plan.functions = {{1, 3}};
    plan.replicates = 1;
    plan.engine.population_size = 6;
    plan.engine.max_generations = 2;
    auto records = in_memory_records(plan);
    records.pop_back();  // drop Real-DE f1 r0
    try {
        analyze(plan, records, "all");
        FAIL("expected IncompleteMatrix");
    } catch (const IncompleteMatrix& e) {
        const std::string msg = e.what();
        CHECK(msg.find("Real-DE f1 d3 r0") != std::string::npos);
        CHECK(msg.find("missing 1 run(s)") != std::string::npos);
    }

    // A plan without the full quaternion grid cannot test the
    // initialization hypothesis.
    ExperimentPlan partial = plan;
    partial.algorithms.resize(6);  // E4 rows only
    const auto partial_records = in_memory_records(partial);
    try {
        analyze(partial, partial_records, "by-initialization");
        FAIL("expected IncompleteMatrix");
    } catch (const IncompleteMatrix& e) {
        CHECK(std::string(e.what()).find("Polar-ESD") != std::string::npos);
    }
}

TEST_CASE("load_records: rejects traces from a different configuration") {
    TempDir tmp;
    const auto plan = tiny_plan(tmp.str(), {"E4-ESD"}, {1}, 1, 6, 4);
    run_matrix(plan);
    auto longer = plan;
    longer.engine.max_generations = 9;
    CHECK_THROWS_WITH_AS(
        (void)load_records(longer),
        doctest::Contains("trace length mismatch"), ConfigError);
}

TEST_CASE("parse_config: built-in defaults") {
    const ExperimentPlan plan = parse_config({});
    const ExperimentPlan reference = default_plan();
    CHECK(plan.algorithms.size() == 13);
    CHECK(plan.functions.size() == 24);
    CHECK(plan.replicates == 20);
    CHECK(plan.master_seed == 1);
    CHECK(plan.engine.population_size ==
          reference.engine.population_size);
    CHECK(plan.engine.crossover_rate == reference.engine.crossover_rate);
    CHECK(plan.engine.max_generations == reference.engine.max_generations);
    CHECK(plan.engine.bound_policy == BoundPolicy::Clamp);
    CHECK(plan.engine.mutant_first == false);
    CHECK(plan.format == "csv");
    CHECK(plan.output_dir == "qde-results");
}

TEST_CASE("parse_config: file <- flag layering with provenance echo") {
    TempDir tmp;
    const fs::path cfg = fs::path(tmp.str()) / "plan.json";
    write_file(cfg, "{\n"
                    "  \"np\": 10,\n"
                    "  \"cr\": 0.8,\n"
                    "  \"tier\": \"smoke\",\n"
                    "  \"seeds\": 2,\n"
                    "  \"mutant_first\": true\n"
                    "}\n");
    PlanOverrides o;
    o.config_path = cfg.string();
    o.np = 8;
    o.master_seed = 7;
    const ExperimentPlan plan = parse_config(o);
    CHECK(plan.engine.population_size == 8);  // flag beats file
    CHECK(plan.engine.crossover_rate == 0.8);  // file beats default
    CHECK(plan.engine.mutant_first == true);
    CHECK(plan.functions.size() == 5);
    CHECK(plan.replicates == 2);
    CHECK(plan.master_seed == 7);

    // Both the overridden and the overriding value are echoed.
    bool saw_file_np = false, saw_flag_np = false;
    for (const auto& line : plan.provenance) {
        if (line.find("np = 10 (config") != std::string::npos)
            saw_file_np = true;
        if (line == "np = 8 (flag)") saw_flag_np = true;
    }
    CHECK(saw_file_np);
    CHECK(saw_flag_np);
}

TEST_CASE("parse_config: function and algorithm selectors") {
    PlanOverrides ids;
    ids.functions = std::string("1,8,12");
    ExperimentPlan plan = parse_config(ids);
    REQUIRE(plan.functions.size() == 3);
    CHECK(plan.functions[1].id == 8);

    PlanOverrides group;
    group.functions = std::string("UHigh");
    group.dim = 4;
    plan = parse_config(group);
    REQUIRE(plan.functions.size() == 5);
    for (const auto& f : plan.functions) {
        CHECK(function_registry()[f.id - 1].group == FunctionGroup::UHigh);
        CHECK(f.dimension == 4);
    }

    PlanOverrides all;
    all.functions = std::string("all");
    CHECK(parse_config(all).functions.size() == 24);

    PlanOverrides tier;
    tier.tier = std::string("smoke");
    CHECK(parse_config(tier).functions.size() == 5);

    // A later functions selector overrides an earlier tier and vice versa:
    // the flag layer applies tier before functions.
    PlanOverrides both;
    both.tier = std::string("smoke");
    both.functions = std::string("2,3");
    CHECK(parse_config(both).functions.size() == 2);

    PlanOverrides algs;
    algs.algorithms = std::string("Real-DE,Polar-PM3");
    plan = parse_config(algs);
    REQUIRE(plan.algorithms.size() == 2);
    CHECK(plan.algorithms[0].id == "Real-DE");  // request order kept
    CHECK(plan.algorithms[1].id == "Polar-PM3");

    // A uniform alpha/beta override reaches every selected algorithm.
    PlanOverrides scales;
    scales.alpha = 0.75;
    scales.beta = 2.0;
    plan = parse_config(scales);
    for (const auto& a : plan.algorithms) {
        CHECK(a.mutation.alpha == 0.75);
        CHECK(a.mutation.beta == 2.0);
    }
}

TEST_CASE("parse_config: diagnostics carry key path, line, and valid sets") {
    TempDir tmp;
    const auto expect_config_error = [](const PlanOverrides& o,
                                        const std::string& needle) {
        try {
            parse_config(o);
            FAIL_CHECK("expected ConfigError containing: " << needle);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    const fs::path bad_type = fs::path(tmp.str()) / "bad_type.json";
    write_file(bad_type, "{\n  \"np\": \"ten\"\n}\n");
    PlanOverrides o1;
    o1.config_path = bad_type.string();
    expect_config_error(o1, "$.np");
    expect_config_error(o1, "line 2");

    const fs::path unknown_key = fs::path(tmp.str()) / "unknown.json";
    write_file(unknown_key, "{\n  \"np\": 10,\n  \"frobnicate\": 1\n}\n");
    PlanOverrides o2;
    o2.config_path = unknown_key.string();
    expect_config_error(o2, "$.frobnicate");
    expect_config_error(o2, "line 3");
    expect_config_error(o2, "valid keys");

    const fs::path syntax = fs::path(tmp.str()) / "syntax.json";
    write_file(syntax, "{\n  \"np\": 10,,\n}\n");
    PlanOverrides o3;
    o3.config_path = syntax.string();
    expect_config_error(o3, "parse error at line 2");

    PlanOverrides missing;
    missing.config_path = (fs::path(tmp.str()) / "absent.json").string();
    expect_config_error(missing, "config file not found");

    // Unknown strategy inside an algorithm id names the valid set.
    PlanOverrides bad_alg;
    bad_alg.algorithms = std::string("E4-PM2");
    expect_config_error(bad_alg, "E4-PM2");
    expect_config_error(bad_alg, "Polar-PM13");

    PlanOverrides bad_group;
    bad_group.functions = std::string("Separabull");
    expect_config_error(bad_group, "Separabull");

    PlanOverrides bad_tier;
    bad_tier.tier = std::string("weekly");
    expect_config_error(bad_tier, "valid tiers");

    PlanOverrides small_np;
    small_np.np = 3;
    expect_config_error(small_np, "population");

    PlanOverrides bad_cr;
    bad_cr.cr = 1.5;
    expect_config_error(bad_cr, "[0, 1]");

    PlanOverrides bad_dim;
    bad_dim.dim = 5;
    expect_config_error(bad_dim, "dimension 5");

    PlanOverrides no_seeds;
    no_seeds.seeds = 0;
    expect_config_error(no_seeds, "replicates");

    PlanOverrides bad_format;
    bad_format.format = std::string("xml");
    expect_config_error(bad_format, "valid formats");

    PlanOverrides dup;
    dup.algorithms = std::string("Real-DE,Real-DE");
    expect_config_error(dup, "duplicate");
}
