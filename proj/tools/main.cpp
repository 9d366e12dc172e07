// Command-line driver for the quaternion-valued differential-evolution
// benchmark harness: runs experiment matrices, analyzes results, and
// inspects individual runs.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qde/benchmarks.hpp"
#include "qde/errors.hpp"
#include "qde/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartialFailure = 1;
constexpr int kExitConfigError = 2;

void add_plan_flags(CLI::App* cmd, qde::PlanOverrides& o) {
    cmd->add_option("--config", o.config_path,
                    "JSON configuration file (layered under the flags)");
    cmd->add_option("--master-seed", o.master_seed,
                    "Master seed; per-run seeds derive from it");
    cmd->add_option("--np", o.np, "Population size (>= 4)");
    cmd->add_option("--cr", o.cr, "Crossover rate in [0, 1]");
    cmd->add_option("--alpha", o.alpha,
                    "Mutation scale applied to every algorithm "
                    "(per-family defaults when unset)");
    cmd->add_option("--beta", o.beta,
                    "Rotor angle scale applied to every algorithm");
    cmd->add_option("--generations", o.generations, "Generations per run");
    cmd->add_option("--dim", o.dim,
                    "Problem dimension: 3 or a positive multiple of 4");
    cmd->add_option("--functions", o.functions,
                    "Comma-separated function ids, a group name, or \"all\"");
    cmd->add_option("--algorithms", o.algorithms,
                    "Comma-separated algorithm ids (see `list`)");
    cmd->add_option("--seeds", o.seeds, "Replicates per cell");
    cmd->add_option("--tier", o.tier,
                    "Function tier: \"smoke\" (5 functions) or \"full\" (24)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--jobs", o.jobs,
                    "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--format", o.format, "Export format: csv or json");
}

int cmd_run(const qde::PlanOverrides& overrides) {
    const qde::ExperimentPlan plan = qde::parse_config(overrides);
    const qde::MatrixReport report = qde::run_matrix(plan);
    std::printf("runs: %d executed, %d skipped (already present), %d failed\n",
                report.executed, report.skipped, report.failed);
    const auto records = qde::load_records(plan);
    if (!records.empty()) {
        const auto written =
            qde::export_results(plan, records, plan.format);
        for (const auto& p : written)
            std::printf("wrote %s\n", p.string().c_str());
    }
    if (report.failed > 0) {
        std::printf("failure manifest: %s\n",
                    (std::filesystem::path(plan.output_dir) / "failures.txt")
                        .string()
                        .c_str());
        return kExitPartialFailure;
    }
    return kExitOk;
}

int cmd_analyze(const qde::PlanOverrides& overrides,
                const std::string& hypothesis) {
    const qde::ExperimentPlan plan = qde::parse_config(overrides);
    const auto records = qde::load_records(plan);
    const auto results = qde::analyze(plan, records, hypothesis);
    std::fputs(qde::render_analysis(results).c_str(), stdout);
    const auto written = qde::write_analysis(plan, results, plan.format);
    for (const auto& p : written)
        std::printf("wrote %s\n", p.string().c_str());
    return kExitOk;
}

int cmd_list(const std::string& what) {
    if (what != "functions" && what != "algorithms" && what != "all")
        throw qde::ConfigError("list: expected functions, algorithms, or all");
    if (what == "functions" || what == "all") {
        std::printf("functions:\n");
        for (const auto& info : qde::function_registry())
            std::printf("  f%02d  %-32s [%s]\n", info.id, info.name,
                        qde::to_string(info.group).c_str());
    }
    if (what == "algorithms" || what == "all") {
        std::printf("algorithms:\n");
        for (const auto& a : qde::default_algorithms()) {
            if (a.real_valued) {
                std::printf("  %-11s real-valued rand/1/bin, F=%g\n",
                            a.id.c_str(), a.mutation.alpha);
            } else {
                std::printf("  %-11s init=%s strategy=%s alpha=%g beta=%g\n",
                            a.id.c_str(), qde::to_string(a.init).c_str(),
                            qde::to_string(a.mutation.strategy).c_str(),
                            a.mutation.alpha, a.mutation.beta);
            }
        }
    }
    return kExitOk;
}

int cmd_show(const qde::PlanOverrides& overrides, const std::string& algorithm,
             int function_id, int replicate) {
    const qde::ExperimentPlan plan = qde::parse_config(overrides);
    const int dim = plan.engine.dimension;
    const auto path =
        qde::trace_path(plan, algorithm, function_id, dim, replicate);
    std::ifstream in(path);
    if (!in)
        throw qde::ConfigError("no trace at " + path.string() +
                               "; run the matrix first");
    std::printf("# algorithm: %s\n# function: f%d (dim %d)\n# replicate: %d\n",
                algorithm.c_str(), function_id, dim, replicate);
    std::printf("# engine_seed: %llu\n# instance_seed: %llu\n",
                static_cast<unsigned long long>(qde::derive_engine_seed(
                    plan.master_seed, algorithm, function_id, replicate)),
                static_cast<unsigned long long>(qde::derive_instance_seed(
                    plan.master_seed, function_id, replicate)));
    std::string line;
    while (std::getline(in, line)) std::printf("%s\n", line.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Quaternion-valued differential evolution: benchmark matrix runner "
        "and rank-test analyzer"};
    app.require_subcommand(1);

    qde::PlanOverrides run_overrides;
    CLI::App* run_cmd =
        app.add_subcommand("run", "Execute the experiment matrix (resumable)");
    add_plan_flags(run_cmd, run_overrides);

    qde::PlanOverrides analyze_overrides;
    std::string hypothesis = "all";
    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Friedman + Nemenyi + critical-difference data");
    analyze_cmd
        ->add_option("hypothesis", hypothesis,
                     "all | per-group | by-mutation | by-initialization | "
                     "convergence")
        ->capture_default_str();
    add_plan_flags(analyze_cmd, analyze_overrides);

    std::string list_what = "all";
    CLI::App* list_cmd =
        app.add_subcommand("list", "List benchmark functions and algorithms");
    list_cmd->add_option("what", list_what, "functions | algorithms | all")
        ->capture_default_str();

    qde::PlanOverrides show_overrides;
    std::string show_algorithm;
    int show_function = 1;
    int show_replicate = 0;
    CLI::App* show_cmd =
        app.add_subcommand("show", "Print one run's persisted trace");
    show_cmd->add_option("algorithm", show_algorithm, "Algorithm id")
        ->required();
    show_cmd->add_option("function", show_function, "Function id (1..24)")
        ->required();
    show_cmd->add_option("replicate", show_replicate, "Replicate index")
        ->required();
    add_plan_flags(show_cmd, show_overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitConfigError;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_overrides);
        if (analyze_cmd->parsed())
            return cmd_analyze(analyze_overrides, hypothesis);
        if (list_cmd->parsed()) return cmd_list(list_what);
        if (show_cmd->parsed())
            return cmd_show(show_overrides, show_algorithm, show_function,
                            show_replicate);
    } catch (const qde::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
    return kExitOk;
}
