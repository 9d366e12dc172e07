#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qde/benchmarks.hpp"
#include "qde/engine.hpp"
#include "qde/stats.hpp"

namespace qde {

// One row of the experiment matrix: a named algorithm configuration. The 12
// quaternion schemes combine an initialization with a mutation strategy; the
// real-valued baseline ignores both tags and uses mutation.alpha as its
// differential weight F.
struct AlgorithmSpec {
    std::string id;  // result-table row label, e.g. "E4-PM1", "Real-DE"
    bool real_valued = false;
    InitScheme init = InitScheme::E4;
    MutationSpec mutation{};
};

// One benchmark column: function id plus the dimension it runs at.
struct FunctionSelection {
    int id = 1;
    int dimension = 3;
};

// Fully resolved experiment configuration. `engine` is a template: per run
// the driver fills in mutation, init scheme, dimension, and the derived
// seed. `provenance` holds the layered-resolution trail (default <- config
// file <- flags) echoed into every output header.
struct ExperimentPlan {
    std::vector<AlgorithmSpec> algorithms;
    std::vector<FunctionSelection> functions;
    int replicates = 20;
    std::uint64_t master_seed = 1;
    EngineConfig engine{};
    std::string output_dir = "qde-results";
    std::string format = "csv";  // "csv" | "json"
    int jobs = 1;                // 0 = hardware concurrency
    std::vector<std::string> provenance;
};

// Outcome of one completed run; the long-form export row.
struct RunRecord {
    std::string algorithm_id;
    int function_id = 0;
    int dimension = 0;
    int replicate = 0;
    std::uint64_t engine_seed = 0;
    double final_regret = 0.0;
    int convergence_generation = 0;
    long evaluations = 0;
};

struct MatrixReport {
    int executed = 0;
    int skipped = 0;  // trace already present (resume)
    int failed = 0;
    std::vector<std::string> failures;  // manifest lines, sorted
};

// One Friedman + Nemenyi + critical-difference dataset. `scope` is "all" or
// a group name for the per-group hypothesis.
struct AnalysisResult {
    std::string hypothesis;
    std::string scope;
    std::vector<std::string> treatments;
    FriedmanResult friedman;
    NemenyiResult nemenyi;
    CdDiagramData cd;
};

// Per-run seed derivation: a stable 64-bit mix over (master, ids) so any
// cell is re-runnable in isolation without storing per-run seeds. The
// instance seed deliberately omits the algorithm id: in replicate r every
// algorithm faces the identical function instance, making rows comparable.
std::uint64_t derive_engine_seed(std::uint64_t master_seed,
                                 const std::string& algorithm_id,
                                 int function_id, int replicate);
std::uint64_t derive_instance_seed(std::uint64_t master_seed, int function_id,
                                   int replicate);

// The 13 canonical algorithms (2 initializations x 6 mutations, then the
// real-valued baseline). Scale defaults are per family: the simple-difference
// strategies and the baseline use weight 0.5; the polar-rotor family uses
// the magnitude-neutral alpha = 1 with beta = 0.5.
std::vector<AlgorithmSpec> default_algorithms();

// Full matrix at dimension `dim`: 13 algorithms x 24 functions x 20
// replicates, master seed 1, csv output into "qde-results".
ExperimentPlan default_plan(int dim = 3);

// Function selections for a named tier: "smoke" (one function per group) or
// "full" (all 24). Throws ConfigError on anything else.
std::vector<FunctionSelection> functions_for_tier(const std::string& tier,
                                                  int dim);

// Library version string recorded in every provenance header.
std::string code_version();

// Executes one cell in memory (no I/O): builds the seeded instance, runs the
// configured engine, and summarizes. When `trace_out` is non-null the
// per-generation best-fitness trace is copied into it.
RunRecord execute_run(const ExperimentPlan& plan, const AlgorithmSpec& alg,
                      const FunctionSelection& fn, int replicate,
                      std::vector<double>* trace_out = nullptr);

// Location of one run's persisted trace inside the plan's output directory.
std::filesystem::path trace_path(const ExperimentPlan& plan,
                                 const std::string& algorithm_id,
                                 int function_id, int dimension,
                                 int replicate);

// Executes every missing run of the plan (existing trace files are skipped),
// writing one trace file per run plus provenance.json. Cells run on a worker
// pool of `plan.jobs` threads; results are independent of scheduling. I/O or
// evaluation failures abort only the affected cell and are recorded in a
// failure manifest (failures.txt) and in the returned report.
MatrixReport run_matrix(const ExperimentPlan& plan);

// Reads back every persisted run of the plan, in canonical order (plan
// algorithm order, then function order, then replicate). Runs without a
// trace file are omitted; malformed trace files throw ConfigError naming the
// path.
std::vector<RunRecord> load_records(const ExperimentPlan& plan);

// Writes the per-cell summary table (mean, median, sigma, median convergence
// generation) and the long-form per-run file, each with a provenance header,
// into the plan's output directory. format is "csv" or "json"; anything else
// throws UnknownFormat. Returns the written paths. Byte-identical on
// re-export over unchanged records.
std::vector<std::filesystem::path> export_results(
    const ExperimentPlan& plan, const std::vector<RunRecord>& records,
    const std::string& format);

// Friedman + Nemenyi + critical-difference data at the requested
// granularity: "all" (13 algorithms over function blocks, final regret),
// "per-group" (one result per function group), "by-mutation" (6 strategies
// over function x initialization blocks), "by-initialization" (2 schemes
// over function x mutation blocks), "convergence" (13 algorithms over
// median convergence generations). Block values are cell medians. Throws
// IncompleteMatrix listing missing cells, ConfigError on an unknown
// hypothesis.
std::vector<AnalysisResult> analyze(const ExperimentPlan& plan,
                                    const std::vector<RunRecord>& records,
                                    const std::string& hypothesis);

// Human-readable rendering of analysis results (mean ranks, critical
// difference, cliques).
std::string render_analysis(const std::vector<AnalysisResult>& results);

// Persists analysis results (one file per result) into the output
// directory; same format/determinism rules as export_results.
std::vector<std::filesystem::path> write_analysis(
    const ExperimentPlan& plan, const std::vector<AnalysisResult>& results,
    const std::string& format);

// Command-line overrides, each applied only when set; the layering is
// built-in defaults <- config file <- these flags, and every resolved value
// is echoed into plan.provenance.
struct PlanOverrides {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> master_seed;
    std::optional<int> np;
    std::optional<double> cr;
    std::optional<double> alpha;  // applied to every algorithm when set
    std::optional<double> beta;   // likewise
    std::optional<int> generations;
    std::optional<int> dim;
    std::optional<std::string> functions;   // "1,8,12" | group name | "all"
    std::optional<std::string> algorithms;  // comma list of canonical ids
    std::optional<int> seeds;               // replicate count
    std::optional<std::string> tier;        // "smoke" | "full"
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::optional<std::string> format;  // "csv" | "json"
};

// Layered plan resolution. The config file is JSON with the same keys as
// the flags (master_seed, np, cr, alpha, beta, generations, dim, functions,
// algorithms, seeds, tier, out, jobs, format, bound_policy, mutant_first).
// Malformed input throws ConfigError with the offending key path and line.
ExperimentPlan parse_config(const PlanOverrides& overrides);

}  // namespace qde
