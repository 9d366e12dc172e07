// Experiment driver implementation; see qde/experiment.hpp.
#include "qde/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "qde/errors.hpp"
#include "qde/random.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace qde {

namespace {

// Shortest exact decimal form: 17 significant digits round-trip any double.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_u64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
    return buf;
}

const std::vector<std::string>& hypothesis_names() {
    static const std::vector<std::string> names = {
        "all", "per-group", "by-mutation", "by-initialization", "convergence"};
    return names;
}

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void validate_plan(const ExperimentPlan& plan) {
    if (plan.algorithms.empty())
        throw ConfigError("plan: algorithm list is empty");
    if (plan.functions.empty())
        throw ConfigError("plan: function list is empty");
    if (plan.replicates < 1)
        throw ConfigError("plan: replicates must be >= 1");
    std::set<std::string> ids;
    for (const auto& a : plan.algorithms) {
        if (!ids.insert(a.id).second)
            throw ConfigError("plan: duplicate algorithm id \"" + a.id + "\"");
        a.mutation.validate();
    }
    if (plan.engine.population_size < 4)
        throw ConfigError(
            "plan: population size must be >= 4 (donor selection needs three "
            "distinct partners)");
    if (!(plan.engine.crossover_rate >= 0.0 &&
          plan.engine.crossover_rate <= 1.0))
        throw ConfigError("plan: crossover rate must lie in [0, 1]");
    if (plan.engine.max_generations < 0)
        throw ConfigError("plan: generations must be >= 0");
    for (const auto& f : plan.functions) {
        if (f.id < 1 || f.id > 24)
            throw ConfigError("plan: function id " + std::to_string(f.id) +
                              " outside 1..24");
        if (f.dimension != 3 &&
            (f.dimension < 4 || f.dimension % 4 != 0))
            throw ConfigError(
                "plan: dimension " + std::to_string(f.dimension) +
                " unsupported (3 or a positive multiple of 4)");
    }
}

// ---------------------------------------------------------------------------
// Provenance
// ---------------------------------------------------------------------------

std::string algorithm_line(const AlgorithmSpec& a) {
    std::string s = a.id + " (";
    if (a.real_valued) {
        s += "real-valued rand/1/bin, F=" + fmt17(a.mutation.alpha);
    } else {
        s += "init=" + to_string(a.init) +
             ", strategy=" + to_string(a.mutation.strategy) +
             ", alpha=" + fmt17(a.mutation.alpha) +
             ", beta=" + fmt17(a.mutation.beta);
    }
    return s + ")";
}

// Key/value lines shared by every output header: resolved configuration,
// defaults, code version, and the function-registry index.
std::vector<std::string> provenance_lines(const ExperimentPlan& plan) {
    std::vector<std::string> out;
    out.push_back("code_version: " + code_version());
    out.push_back("master_seed: " + fmt_u64(plan.master_seed));
    out.push_back("replicates: " + std::to_string(plan.replicates));
    out.push_back("population_size: " +
                  std::to_string(plan.engine.population_size));
    out.push_back("crossover_rate: " + fmt17(plan.engine.crossover_rate));
    out.push_back("generations: " +
                  std::to_string(plan.engine.max_generations));
    out.push_back("bounds: [" + fmt17(plan.engine.bounds.lo) + ", " +
                  fmt17(plan.engine.bounds.hi) + "]");
    out.push_back("bound_policy: " + to_string(plan.engine.bound_policy));
    out.push_back(std::string("mutation_order: ") +
                  (plan.engine.mutant_first ? "mutant-first" : "lazy"));
    out.push_back("seed_derivation: engine = mix(mix(mix(master, "
                  "fnv1a64(algorithm)), function), replicate); instance = "
                  "mix(mix(master, function), replicate), shared across "
                  "algorithms");
    for (const auto& a : plan.algorithms)
        out.push_back("algorithm: " + algorithm_line(a));
    for (const auto& f : plan.functions) {
        const auto& info = function_registry()[f.id - 1];
        out.push_back("function: f" + std::to_string(f.id) + " " + info.name +
                      " [" + to_string(info.group) +
                      "] dim=" + std::to_string(f.dimension));
    }
    for (const auto& info : function_registry())
        out.push_back("registry: f" + std::to_string(info.id) + " " +
                      info.name + " [" + to_string(info.group) + "]");
    for (const auto& line : plan.provenance) out.push_back("resolved: " + line);
    return out;
}

json provenance_json(const ExperimentPlan& plan) {
    json j;
    j["code_version"] = code_version();
    j["master_seed"] = plan.master_seed;
    j["replicates"] = plan.replicates;
    j["engine"] = {
        {"population_size", plan.engine.population_size},
        {"crossover_rate", plan.engine.crossover_rate},
        {"generations", plan.engine.max_generations},
        {"bounds", {plan.engine.bounds.lo, plan.engine.bounds.hi}},
        {"bound_policy", to_string(plan.engine.bound_policy)},
        {"mutation_order",
         plan.engine.mutant_first ? "mutant-first" : "lazy"},
    };
    j["algorithms"] = json::array();
    for (const auto& a : plan.algorithms) {
        json ja;
        ja["id"] = a.id;
        ja["real_valued"] = a.real_valued;
        if (!a.real_valued) {
            ja["init"] = to_string(a.init);
            ja["strategy"] = to_string(a.mutation.strategy);
        }
        ja["alpha"] = a.mutation.alpha;
        ja["beta"] = a.mutation.beta;
        j["algorithms"].push_back(ja);
    }
    j["functions"] = json::array();
    for (const auto& f : plan.functions) {
        const auto& info = function_registry()[f.id - 1];
        j["functions"].push_back({{"id", f.id},
                                  {"name", info.name},
                                  {"group", to_string(info.group)},
                                  {"dimension", f.dimension}});
    }
    j["function_registry"] = json::array();
    for (const auto& info : function_registry())
        j["function_registry"].push_back({{"id", info.id},
                                          {"name", info.name},
                                          {"group", to_string(info.group)}});
    j["resolved"] = plan.provenance;
    return j;
}

// Crash-safe write: a half-written file must never be mistaken for a
// completed one on resume.
void write_text_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush())
            throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string trace_to_text(const std::vector<double>& trace) {
    std::string s = "generation,best_fitness\n";
    for (std::size_t g = 0; g < trace.size(); ++g)
        s += std::to_string(g) + "," + fmt17(trace[g]) + "\n";
    return s;
}

std::vector<double> parse_trace_file(const fs::path& path,
                                     int expected_rows) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read trace file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "generation,best_fitness")
        throw ConfigError("malformed trace header in " + path.string());
    std::vector<double> trace;
    int g = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("malformed trace row in " + path.string());
        char* end = nullptr;
        const long row_g = std::strtol(line.c_str(), &end, 10);
        if (row_g != g)
            throw ConfigError("non-consecutive generation index in " +
                              path.string());
        const double v = std::strtod(line.c_str() + comma + 1, &end);
        trace.push_back(v);
        ++g;
    }
    if (static_cast<int>(trace.size()) != expected_rows)
        throw ConfigError(
            "trace length mismatch in " + path.string() + ": found " +
            std::to_string(trace.size()) + " rows, plan expects " +
            std::to_string(expected_rows) +
            " (the output directory was produced by a different "
            "configuration)");
    return trace;
}

RunRecord record_from_trace(const ExperimentPlan& plan,
                            const AlgorithmSpec& alg,
                            const FunctionSelection& fn, int replicate,
                            const std::vector<double>& trace) {
    RunRecord rec;
    rec.algorithm_id = alg.id;
    rec.function_id = fn.id;
    rec.dimension = fn.dimension;
    rec.replicate = replicate;
    rec.engine_seed =
        derive_engine_seed(plan.master_seed, alg.id, fn.id, replicate);
    rec.final_regret = trace.back();
    rec.convergence_generation = convergence_generation(trace);
    rec.evaluations =
        static_cast<long>(plan.engine.population_size) *
        static_cast<long>(trace.size());
    return rec;
}

// ---------------------------------------------------------------------------
// Analysis helpers
// ---------------------------------------------------------------------------

struct CellKey {
    std::string algorithm_id;
    int function_id;
    int dimension;
    bool operator<(const CellKey& o) const {
        return std::tie(algorithm_id, function_id, dimension) <
               std::tie(o.algorithm_id, o.function_id, o.dimension);
    }
};

struct CellMedians {
    double final_regret = 0.0;
    double convergence = 0.0;
};

std::map<CellKey, CellMedians> cell_medians(
    const std::vector<RunRecord>& records) {
    std::map<CellKey, std::pair<std::vector<double>, std::vector<double>>>
        buckets;
    for (const auto& r : records) {
        auto& b = buckets[{r.algorithm_id, r.function_id, r.dimension}];
        b.first.push_back(r.final_regret);
        b.second.push_back(static_cast<double>(r.convergence_generation));
    }
    std::map<CellKey, CellMedians> out;
    for (auto& [key, b] : buckets)
        out[key] = {aggregate_cell(b.first).median,
                    aggregate_cell(b.second).median};
    return out;
}

void require_complete(const ExperimentPlan& plan,
                      const std::vector<RunRecord>& records) {
    std::set<std::tuple<std::string, int, int, int>> have;
    for (const auto& r : records)
        have.insert({r.algorithm_id, r.function_id, r.dimension, r.replicate});
    std::vector<std::string> missing;
    for (const auto& a : plan.algorithms)
        for (const auto& f : plan.functions)
            for (int rep = 0; rep < plan.replicates; ++rep)
                if (!have.count({a.id, f.id, f.dimension, rep}))
                    missing.push_back(a.id + " f" + std::to_string(f.id) +
                                      " d" + std::to_string(f.dimension) +
                                      " r" + std::to_string(rep));
    if (missing.empty()) return;
    std::string msg = "analysis requires a complete matrix; missing " +
                      std::to_string(missing.size()) + " run(s): ";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) msg += ", ";
        msg += missing[i];
    }
    if (missing.size() > shown)
        msg += ", ... and " + std::to_string(missing.size() - shown) + " more";
    throw IncompleteMatrix(msg);
}

AnalysisResult run_rank_tests(std::string hypothesis, std::string scope,
                              std::vector<std::string> treatments,
                              const std::vector<std::vector<double>>& matrix) {
    AnalysisResult res;
    res.hypothesis = std::move(hypothesis);
    res.scope = std::move(scope);
    res.treatments = std::move(treatments);
    res.friedman = friedman(matrix, /*lower_is_better=*/true);
    res.nemenyi = nemenyi(res.friedman, 0.05);
    res.cd = cd_diagram_data(res.friedman, res.nemenyi);
    return res;
}

// The 12 quaternion schemes of the plan arranged [init][strategy]; throws
// IncompleteMatrix naming any absent combination.
std::array<std::array<const AlgorithmSpec*, 6>, 2> qde_grid(
    const ExperimentPlan& plan, const std::string& hypothesis) {
    std::array<std::array<const AlgorithmSpec*, 6>, 2> grid{};
    for (const auto& a : plan.algorithms) {
        if (a.real_valued) continue;
        const int i = a.init == InitScheme::E4 ? 0 : 1;
        grid[i][static_cast<int>(a.mutation.strategy)] = &a;
    }
    std::vector<std::string> missing;
    for (int i = 0; i < 2; ++i)
        for (int s = 0; s < 6; ++s)
            if (!grid[i][s])
                missing.push_back(
                    to_string(i == 0 ? InitScheme::E4 : InitScheme::Polar) +
                    "-" + to_string(static_cast<Strategy>(s)));
    if (!missing.empty())
        throw IncompleteMatrix("hypothesis \"" + hypothesis +
                               "\" requires all 12 quaternion schemes; plan "
                               "is missing: " +
                               join(missing, ", "));
    return grid;
}

}  // namespace

// ---------------------------------------------------------------------------
// Seeds, defaults, version
// ---------------------------------------------------------------------------

std::uint64_t derive_engine_seed(std::uint64_t master_seed,
                                 const std::string& algorithm_id,
                                 int function_id, int replicate) {
    return mix_seed(
        mix_seed(mix_seed(master_seed, fnv1a64(algorithm_id)),
                 static_cast<std::uint64_t>(function_id)),
        static_cast<std::uint64_t>(replicate));
}

std::uint64_t derive_instance_seed(std::uint64_t master_seed, int function_id,
                                   int replicate) {
    return mix_seed(mix_seed(master_seed, static_cast<std::uint64_t>(function_id)),
                    static_cast<std::uint64_t>(replicate));
}

std::vector<AlgorithmSpec> default_algorithms() {
    std::vector<AlgorithmSpec> algs;
    constexpr Strategy kStrategies[] = {Strategy::ESD,  Strategy::EGSD,
                                        Strategy::PM1,  Strategy::PM3,
                                        Strategy::PM13, Strategy::RQ};
    for (InitScheme init : {InitScheme::E4, InitScheme::Polar}) {
        for (Strategy s : kStrategies) {
            AlgorithmSpec a;
            a.init = init;
            a.mutation.strategy = s;
            const bool polar_rotor_family = s == Strategy::PM1 ||
                                            s == Strategy::PM3 ||
                                            s == Strategy::PM13;
            a.mutation.alpha = polar_rotor_family ? 1.0 : 0.5;
            a.mutation.beta = 0.5;
            a.id = to_string(init) + "-" + to_string(s);
            algs.push_back(a);
        }
    }
    AlgorithmSpec rde;
    rde.id = "Real-DE";
    rde.real_valued = true;
    rde.mutation.alpha = 0.5;  // differential weight F
    rde.mutation.beta = 0.5;
    algs.push_back(rde);
    return algs;
}

ExperimentPlan default_plan(int dim) {
    ExperimentPlan plan;
    plan.algorithms = default_algorithms();
    plan.functions = functions_for_tier("full", dim);
    plan.replicates = 20;
    plan.master_seed = 1;
    plan.engine = EngineConfig{};
    plan.engine.dimension = dim;
    plan.output_dir = "qde-results";
    plan.format = "csv";
    plan.jobs = 1;
    return plan;
}

std::vector<FunctionSelection> functions_for_tier(const std::string& tier,
                                                  int dim) {
    std::vector<FunctionSelection> fns;
    if (tier == "full") {
        for (const auto& info : function_registry())
            fns.push_back({info.id, dim});
    } else if (tier == "smoke") {
        for (int id : smoke_tier()) fns.push_back({id, dim});
    } else {
        throw ConfigError("unknown tier \"" + tier +
                          "\"; valid tiers: smoke, full");
    }
    return fns;
}

std::string code_version() {
#ifdef QDE_VERSION
    return QDE_VERSION;
#else
    return "unversioned";
#endif
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

RunRecord execute_run(const ExperimentPlan& plan, const AlgorithmSpec& alg,
                      const FunctionSelection& fn, int replicate,
                      std::vector<double>* trace_out) {
    const BenchmarkInstance inst = make_instance(
        fn.id, fn.dimension,
        derive_instance_seed(plan.master_seed, fn.id, replicate));
    EngineConfig cfg = plan.engine;
    cfg.mutation = alg.mutation;
    cfg.init = alg.init;
    cfg.dimension = fn.dimension;
    cfg.seed = derive_engine_seed(plan.master_seed, alg.id, fn.id, replicate);
    const Objective obj = [&inst](const std::vector<double>& x) {
        return inst.evaluate(x);
    };
    const RunTrace trace =
        alg.real_valued ? run_real_de(cfg, obj) : run(cfg, obj);
    if (trace_out) *trace_out = trace.best_fitness_per_generation;

    RunRecord rec =
        record_from_trace(plan, alg, fn, replicate,
                          trace.best_fitness_per_generation);
    rec.evaluations = trace.evaluations;
    return rec;
}

std::filesystem::path trace_path(const ExperimentPlan& plan,
                                 const std::string& algorithm_id,
                                 int function_id, int dimension,
                                 int replicate) {
    char name[64];
    std::snprintf(name, sizeof(name), "f%02d_d%d_r%03d.csv", function_id,
                  dimension, replicate);
    return fs::path(plan.output_dir) / "traces" / algorithm_id / name;
}

MatrixReport run_matrix(const ExperimentPlan& plan) {
    validate_plan(plan);
    const fs::path out_dir(plan.output_dir);
    fs::create_directories(out_dir / "traces");
    for (const auto& a : plan.algorithms)
        fs::create_directories(out_dir / "traces" / a.id);
    write_text_atomic(out_dir / "provenance.json",
                      provenance_json(plan).dump(2) + "\n");

    struct Task {
        const AlgorithmSpec* alg;
        const FunctionSelection* fn;
        int replicate;
        fs::path path;
    };
    std::vector<Task> tasks;
    int skipped = 0;
    for (const auto& a : plan.algorithms)
        for (const auto& f : plan.functions)
            for (int rep = 0; rep < plan.replicates; ++rep) {
                fs::path p = trace_path(plan, a.id, f.id, f.dimension, rep);
                if (fs::exists(p))
                    ++skipped;
                else
                    tasks.push_back({&a, &f, rep, std::move(p)});
            }

    std::atomic<std::size_t> next{0};
    std::atomic<int> executed{0};
    std::mutex failure_mutex;
    std::vector<std::string> failures;
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            try {
                std::vector<double> trace;
                execute_run(plan, *t.alg, *t.fn, t.replicate, &trace);
                write_text_atomic(t.path, trace_to_text(trace));
                executed.fetch_add(1);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failures.push_back(t.alg->id + " f" +
                                   std::to_string(t.fn->id) + " d" +
                                   std::to_string(t.fn->dimension) + " r" +
                                   std::to_string(t.replicate) + ": " +
                                   e.what());
            }
        }
    };

    int jobs = plan.jobs;
    if (jobs <= 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(failures.begin(), failures.end());
    const fs::path manifest = out_dir / "failures.txt";
    if (!failures.empty()) {
        write_text_atomic(manifest, join(failures, "\n") + "\n");
    } else if (fs::exists(manifest)) {
        fs::remove(manifest);  // a clean rerun clears a stale manifest
    }

    MatrixReport report;
    report.executed = executed.load();
    report.skipped = skipped;
    report.failed = static_cast<int>(failures.size());
    report.failures = std::move(failures);
    return report;
}

std::vector<RunRecord> load_records(const ExperimentPlan& plan) {
    validate_plan(plan);
    std::vector<RunRecord> records;
    const int expected_rows = plan.engine.max_generations + 1;
    for (const auto& a : plan.algorithms)
        for (const auto& f : plan.functions)
            for (int rep = 0; rep < plan.replicates; ++rep) {
                const fs::path p =
                    trace_path(plan, a.id, f.id, f.dimension, rep);
                if (!fs::exists(p)) continue;
                const std::vector<double> trace =
                    parse_trace_file(p, expected_rows);
                records.push_back(
                    record_from_trace(plan, a, f, rep, trace));
            }
    return records;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

std::vector<std::filesystem::path> export_results(
    const ExperimentPlan& plan, const std::vector<RunRecord>& records,
    const std::string& format) {
    if (format != "csv" && format != "json")
        throw UnknownFormat("unknown export format \"" + format +
                            "\"; valid formats: csv, json");
    if (records.empty()) throw EmptyCell("export: no records to export");

    // Per-cell aggregates in canonical (plan algorithm, plan function) order.
    struct SummaryRow {
        const AlgorithmSpec* alg;
        const FunctionSelection* fn;
        CellStats final_stats;
        double median_convergence;
    };
    std::vector<SummaryRow> summary;
    for (const auto& a : plan.algorithms)
        for (const auto& f : plan.functions) {
            std::vector<double> finals, convs;
            for (const auto& r : records) {
                if (r.algorithm_id != a.id || r.function_id != f.id ||
                    r.dimension != f.dimension)
                    continue;
                finals.push_back(r.final_regret);
                convs.push_back(static_cast<double>(r.convergence_generation));
            }
            if (finals.empty()) continue;
            summary.push_back({&a, &f, aggregate_cell(finals),
                               aggregate_cell(convs).median});
        }

    const fs::path out_dir(plan.output_dir);
    fs::create_directories(out_dir);
    const std::vector<std::string> header = provenance_lines(plan);
    std::vector<fs::path> written;

    if (format == "csv") {
        std::string s;
        for (const auto& line : header) s += "# " + line + "\n";
        s += "algorithm,function_id,function_name,group,dimension,count,mean,"
             "median,sigma,median_convergence_generation\n";
        for (const auto& row : summary) {
            const auto& info = function_registry()[row.fn->id - 1];
            s += row.alg->id + "," + std::to_string(row.fn->id) + "," +
                 info.name + "," + to_string(info.group) + "," +
                 std::to_string(row.fn->dimension) + "," +
                 std::to_string(row.final_stats.count) + "," +
                 fmt17(row.final_stats.mean) + "," +
                 fmt17(row.final_stats.median) + "," +
                 fmt17(row.final_stats.sigma) + "," +
                 fmt17(row.median_convergence) + "\n";
        }
        const fs::path summary_path = out_dir / "summary.csv";
        write_text_atomic(summary_path, s);
        written.push_back(summary_path);

        std::string r;
        for (const auto& line : header) r += "# " + line + "\n";
        r += "algorithm,function_id,dimension,replicate,engine_seed,"
             "final_regret,convergence_generation,evaluations\n";
        for (const auto& rec : records)
            r += rec.algorithm_id + "," + std::to_string(rec.function_id) +
                 "," + std::to_string(rec.dimension) + "," +
                 std::to_string(rec.replicate) + "," +
                 fmt_u64(rec.engine_seed) + "," + fmt17(rec.final_regret) +
                 "," + std::to_string(rec.convergence_generation) + "," +
                 std::to_string(rec.evaluations) + "\n";
        const fs::path records_path = out_dir / "records.csv";
        write_text_atomic(records_path, r);
        written.push_back(records_path);
    } else {
        json js;
        js["provenance"] = provenance_json(plan);
        js["summary"] = json::array();
        for (const auto& row : summary) {
            const auto& info = function_registry()[row.fn->id - 1];
            js["summary"].push_back(
                {{"algorithm", row.alg->id},
                 {"function_id", row.fn->id},
                 {"function_name", info.name},
                 {"group", to_string(info.group)},
                 {"dimension", row.fn->dimension},
                 {"count", row.final_stats.count},
                 {"mean", row.final_stats.mean},
                 {"median", row.final_stats.median},
                 {"sigma", row.final_stats.sigma},
                 {"median_convergence_generation", row.median_convergence}});
        }
        const fs::path summary_path = out_dir / "summary.json";
        write_text_atomic(summary_path, js.dump(2) + "\n");
        written.push_back(summary_path);

        json jr;
        jr["provenance"] = provenance_json(plan);
        jr["records"] = json::array();
        for (const auto& rec : records)
            jr["records"].push_back(
                {{"algorithm", rec.algorithm_id},
                 {"function_id", rec.function_id},
                 {"dimension", rec.dimension},
                 {"replicate", rec.replicate},
                 {"engine_seed", rec.engine_seed},
                 {"final_regret", rec.final_regret},
                 {"convergence_generation", rec.convergence_generation},
                 {"evaluations", rec.evaluations}});
        const fs::path records_path = out_dir / "records.json";
        write_text_atomic(records_path, jr.dump(2) + "\n");
        written.push_back(records_path);
    }
    return written;
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

std::vector<AnalysisResult> analyze(const ExperimentPlan& plan,
                                    const std::vector<RunRecord>& records,
                                    const std::string& hypothesis) {
    const auto& names = hypothesis_names();
    if (std::find(names.begin(), names.end(), hypothesis) == names.end())
        throw ConfigError("unknown hypothesis \"" + hypothesis +
                          "\"; valid: " + join(names, ", "));
    validate_plan(plan);
    require_complete(plan, records);
    const auto cells = cell_medians(records);
    const auto cell = [&](const std::string& alg_id,
                          const FunctionSelection& f) {
        return cells.at({alg_id, f.id, f.dimension});
    };

    std::vector<std::string> alg_ids;
    for (const auto& a : plan.algorithms) alg_ids.push_back(a.id);

    std::vector<AnalysisResult> results;
    if (hypothesis == "all" || hypothesis == "convergence") {
        std::vector<std::vector<double>> m;
        for (const auto& f : plan.functions) {
            std::vector<double> row;
            for (const auto& a : plan.algorithms) {
                const auto& c = cell(a.id, f);
                row.push_back(hypothesis == "all" ? c.final_regret
                                                  : c.convergence);
            }
            m.push_back(std::move(row));
        }
        results.push_back(run_rank_tests(hypothesis, "all", alg_ids, m));
    } else if (hypothesis == "per-group") {
        for (FunctionGroup g :
             {FunctionGroup::Separable, FunctionGroup::ULow,
              FunctionGroup::UHigh, FunctionGroup::MAdequate,
              FunctionGroup::MWeak}) {
            std::vector<std::vector<double>> m;
            for (const auto& f : plan.functions) {
                if (function_registry()[f.id - 1].group != g) continue;
                std::vector<double> row;
                for (const auto& a : plan.algorithms)
                    row.push_back(cell(a.id, f).final_regret);
                m.push_back(std::move(row));
            }
            if (m.empty()) continue;  // group absent from the plan
            results.push_back(
                run_rank_tests(hypothesis, to_string(g), alg_ids, m));
        }
        if (results.empty())
            throw IncompleteMatrix(
                "per-group analysis: the plan covers no complete group");
    } else if (hypothesis == "by-mutation") {
        const auto grid = qde_grid(plan, hypothesis);
        std::vector<std::string> treatments;
        for (int s = 0; s < 6; ++s)
            treatments.push_back(to_string(static_cast<Strategy>(s)));
        // Blocks: function x initialization.
        std::vector<std::vector<double>> m;
        for (const auto& f : plan.functions)
            for (int i = 0; i < 2; ++i) {
                std::vector<double> row;
                for (int s = 0; s < 6; ++s)
                    row.push_back(cell(grid[i][s]->id, f).final_regret);
                m.push_back(std::move(row));
            }
        results.push_back(run_rank_tests(hypothesis, "all", treatments, m));
    } else {  // by-initialization
        const auto grid = qde_grid(plan, hypothesis);
        std::vector<std::string> treatments = {to_string(InitScheme::E4),
                                               to_string(InitScheme::Polar)};
        // Blocks: function x mutation strategy.
        std::vector<std::vector<double>> m;
        for (const auto& f : plan.functions)
            for (int s = 0; s < 6; ++s)
                m.push_back({cell(grid[0][s]->id, f).final_regret,
                             cell(grid[1][s]->id, f).final_regret});
        results.push_back(run_rank_tests(hypothesis, "all", treatments, m));
    }
    return results;
}

std::string render_analysis(const std::vector<AnalysisResult>& results) {
    std::string out;
    for (const auto& res : results) {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "hypothesis %s [%s]: k=%d, n=%d, chi2=%.6g, p=%.6g, "
                      "CD(alpha=0.05)=%.6g\n",
                      res.hypothesis.c_str(), res.scope.c_str(),
                      res.friedman.k, res.friedman.n, res.friedman.statistic,
                      res.friedman.p_value, res.nemenyi.critical_difference);
        out += line;
        for (std::size_t pos = 0; pos < res.cd.order.size(); ++pos) {
            const int t = res.cd.order[pos];
            std::snprintf(line, sizeof(line), "  %2zu. %-12s mean rank %.4f\n",
                          pos + 1, res.treatments[t].c_str(),
                          res.cd.sorted_ranks[pos]);
            out += line;
        }
        for (const auto& [first, last] : res.cd.cliques) {
            out += "  clique (no significant difference):";
            for (int pos = first; pos <= last; ++pos)
                out += " " + res.treatments[res.cd.order[pos]];
            out += "\n";
        }
    }
    return out;
}

std::vector<std::filesystem::path> write_analysis(
    const ExperimentPlan& plan, const std::vector<AnalysisResult>& results,
    const std::string& format) {
    if (format != "csv" && format != "json")
        throw UnknownFormat("unknown export format \"" + format +
                            "\"; valid formats: csv, json");
    const fs::path out_dir(plan.output_dir);
    fs::create_directories(out_dir);
    const std::vector<std::string> header = provenance_lines(plan);
    std::vector<fs::path> written;
    for (const auto& res : results) {
        std::string stem = "analysis_" + res.hypothesis;
        if (res.scope != "all") stem += "_" + res.scope;
        if (format == "csv") {
            std::string s;
            for (const auto& line : header) s += "# " + line + "\n";
            s += "# hypothesis: " + res.hypothesis + "\n";
            s += "# scope: " + res.scope + "\n";
            s += "# k: " + std::to_string(res.friedman.k) + "\n";
            s += "# n: " + std::to_string(res.friedman.n) + "\n";
            s += "# chi2: " + fmt17(res.friedman.statistic) + "\n";
            s += "# p_value: " + fmt17(res.friedman.p_value) + "\n";
            s += "# critical_difference: " +
                 fmt17(res.nemenyi.critical_difference) + "\n";
            for (const auto& [first, last] : res.cd.cliques) {
                s += "# clique:";
                for (int pos = first; pos <= last; ++pos)
                    s += " " + res.treatments[res.cd.order[pos]];
                s += "\n";
            }
            s += "position,treatment,mean_rank\n";
            for (std::size_t pos = 0; pos < res.cd.order.size(); ++pos)
                s += std::to_string(pos + 1) + "," +
                     res.treatments[res.cd.order[pos]] + "," +
                     fmt17(res.cd.sorted_ranks[pos]) + "\n";
            const fs::path p = out_dir / (stem + ".csv");
            write_text_atomic(p, s);
            written.push_back(p);
        } else {
            json j;
            j["provenance"] = provenance_json(plan);
            j["hypothesis"] = res.hypothesis;
            j["scope"] = res.scope;
            j["k"] = res.friedman.k;
            j["n"] = res.friedman.n;
            j["chi2"] = res.friedman.statistic;
            j["p_value"] = res.friedman.p_value;
            j["critical_difference"] = res.nemenyi.critical_difference;
            j["mean_ranks"] = json::array();
            for (std::size_t pos = 0; pos < res.cd.order.size(); ++pos)
                j["mean_ranks"].push_back(
                    {{"position", pos + 1},
                     {"treatment", res.treatments[res.cd.order[pos]]},
                     {"mean_rank", res.cd.sorted_ranks[pos]}});
            j["cliques"] = json::array();
            for (const auto& [first, last] : res.cd.cliques) {
                json clique = json::array();
                for (int pos = first; pos <= last; ++pos)
                    clique.push_back(res.treatments[res.cd.order[pos]]);
                j["cliques"].push_back(clique);
            }
            const fs::path p = out_dir / (stem + ".json");
            write_text_atomic(p, j.dump(2) + "\n");
            written.push_back(p);
        }
    }
    return written;
}

// ---------------------------------------------------------------------------
// Configuration layering
// ---------------------------------------------------------------------------

namespace {

// Pre-materialization settings; everything optional so each layer only
// touches the keys it names.
struct Settings {
    std::uint64_t master_seed = 1;
    int np = 30;
    double cr = 0.9;
    std::optional<double> alpha;  // uniform override when present
    std::optional<double> beta;
    int generations = 100;
    int dim = 3;
    // Function selection: either explicit ids, or a group tag, or a tier.
    std::string tier = "full";
    std::optional<std::vector<int>> function_ids;
    std::optional<std::string> function_group;
    std::optional<std::vector<std::string>> algorithm_ids;
    int seeds = 20;
    std::string out = "qde-results";
    int jobs = 1;
    std::string format = "csv";
    std::string bound_policy = "clamp";
    bool mutant_first = false;
    std::vector<std::string> trail;  // provenance lines, in resolution order

    void note(const std::string& key, const std::string& value,
              const std::string& source) {
        trail.push_back(key + " = " + value + " (" + source + ")");
    }
};

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

int line_of_key(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return 0;
    return line_of_byte(text, pos);
}

[[noreturn]] void config_fail(const std::string& path, const std::string& key,
                              int line, const std::string& what) {
    std::string msg = "config " + path + ": key \"$." + key + "\"";
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    msg += ": " + what;
    throw ConfigError(msg);
}

// Parses "1,8,12" into ids, or falls back to a group tag / "all".
void apply_function_selector(Settings& s, const std::string& value,
                             const std::string& source) {
    if (value == "all") {
        s.function_ids.reset();
        s.function_group.reset();
        s.tier = "full";
        s.note("functions", "all", source);
        return;
    }
    const bool numeric =
        !value.empty() &&
        value.find_first_not_of("0123456789, ") == std::string::npos;
    if (numeric) {
        std::vector<int> ids;
        std::stringstream ss(value);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token.find_first_not_of(' ') == std::string::npos) continue;
            ids.push_back(std::atoi(token.c_str()));
        }
        if (ids.empty())
            throw ConfigError("functions: empty id list \"" + value + "\"");
        s.function_ids = ids;
        s.function_group.reset();
        s.note("functions", value, source);
        return;
    }
    // Not numeric: must be a group tag (group_from_string throws ConfigError
    // naming the valid tags on anything unknown).
    (void)group_from_string(value);
    s.function_group = value;
    s.function_ids.reset();
    s.note("functions", value, source);
}

void apply_algorithm_selector(Settings& s, std::vector<std::string> ids,
                              const std::string& source) {
    if (ids.empty())
        throw ConfigError("algorithms: selection must not be empty");
    s.note("algorithms", join(ids, ","), source);
    s.algorithm_ids = std::move(ids);
}

void apply_config_file(Settings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path + ": parse error at line " +
                          std::to_string(line_of_byte(text, e.byte)) + ": " +
                          e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config " + path + ": top level must be an object");

    const std::string source = "config " + path;
    for (const auto& [key, value] : doc.items()) {
        const int line = line_of_key(text, key);
        const auto need = [&](bool ok, const std::string& what) {
            if (!ok) config_fail(path, key, line, what);
        };
        if (key == "master_seed") {
            need(value.is_number_unsigned(),
                 "expected an unsigned integer");
            s.master_seed = value.get<std::uint64_t>();
            s.note(key, fmt_u64(s.master_seed), source);
        } else if (key == "np") {
            need(value.is_number_integer(), "expected an integer");
            s.np = value.get<int>();
            s.note(key, std::to_string(s.np), source);
        } else if (key == "cr") {
            need(value.is_number(), "expected a number");
            s.cr = value.get<double>();
            s.note(key, fmt17(s.cr), source);
        } else if (key == "alpha") {
            need(value.is_number(), "expected a number");
            s.alpha = value.get<double>();
            s.note(key, fmt17(*s.alpha), source);
        } else if (key == "beta") {
            need(value.is_number(), "expected a number");
            s.beta = value.get<double>();
            s.note(key, fmt17(*s.beta), source);
        } else if (key == "generations") {
            need(value.is_number_integer(), "expected an integer");
            s.generations = value.get<int>();
            s.note(key, std::to_string(s.generations), source);
        } else if (key == "dim") {
            need(value.is_number_integer(), "expected an integer");
            s.dim = value.get<int>();
            s.note(key, std::to_string(s.dim), source);
        } else if (key == "functions") {
            if (value.is_array()) {
                std::vector<int> ids;
                for (const auto& v : value) {
                    need(v.is_number_integer(),
                         "expected an array of integers or a group name");
                    ids.push_back(v.get<int>());
                }
                need(!ids.empty(), "function id list must not be empty");
                s.function_ids = ids;
                s.function_group.reset();
                std::vector<std::string> parts;
                for (int id : ids) parts.push_back(std::to_string(id));
                s.note(key, join(parts, ","), source);
            } else if (value.is_string()) {
                try {
                    apply_function_selector(s, value.get<std::string>(),
                                            source);
                } catch (const ConfigError& e) {
                    config_fail(path, key, line, e.what());
                }
            } else {
                config_fail(path, key, line,
                            "expected an array of integers or a string");
            }
        } else if (key == "algorithms") {
            need(value.is_array(), "expected an array of algorithm ids");
            std::vector<std::string> ids;
            for (const auto& v : value) {
                need(v.is_string(), "expected an array of strings");
                ids.push_back(v.get<std::string>());
            }
            try {
                apply_algorithm_selector(s, std::move(ids), source);
            } catch (const ConfigError& e) {
                config_fail(path, key, line, e.what());
            }
        } else if (key == "seeds") {
            need(value.is_number_integer(), "expected an integer");
            s.seeds = value.get<int>();
            s.note(key, std::to_string(s.seeds), source);
        } else if (key == "tier") {
            need(value.is_string(), "expected \"smoke\" or \"full\"");
            s.tier = value.get<std::string>();
            s.function_ids.reset();
            s.function_group.reset();
            s.note(key, s.tier, source);
        } else if (key == "out") {
            need(value.is_string(), "expected a string path");
            s.out = value.get<std::string>();
        } else if (key == "jobs") {
            need(value.is_number_integer(), "expected an integer");
            s.jobs = value.get<int>();
        } else if (key == "format") {
            need(value.is_string(), "expected \"csv\" or \"json\"");
            s.format = value.get<std::string>();
            s.note(key, s.format, source);
        } else if (key == "bound_policy") {
            need(value.is_string(), "expected \"clamp\" or \"reflect\"");
            s.bound_policy = value.get<std::string>();
            s.note(key, s.bound_policy, source);
        } else if (key == "mutant_first") {
            need(value.is_boolean(), "expected a boolean");
            s.mutant_first = value.get<bool>();
            s.note(key, s.mutant_first ? "true" : "false", source);
        } else {
            config_fail(
                path, key, line,
                "unknown key; valid keys: master_seed, np, cr, alpha, beta, "
                "generations, dim, functions, algorithms, seeds, tier, out, "
                "jobs, format, bound_policy, mutant_first");
        }
    }
}

void apply_flags(Settings& s, const PlanOverrides& o) {
    const std::string source = "flag";
    if (o.master_seed) {
        s.master_seed = *o.master_seed;
        s.note("master_seed", fmt_u64(*o.master_seed), source);
    }
    if (o.np) {
        s.np = *o.np;
        s.note("np", std::to_string(*o.np), source);
    }
    if (o.cr) {
        s.cr = *o.cr;
        s.note("cr", fmt17(*o.cr), source);
    }
    if (o.alpha) {
        s.alpha = *o.alpha;
        s.note("alpha", fmt17(*o.alpha), source);
    }
    if (o.beta) {
        s.beta = *o.beta;
        s.note("beta", fmt17(*o.beta), source);
    }
    if (o.generations) {
        s.generations = *o.generations;
        s.note("generations", std::to_string(*o.generations), source);
    }
    if (o.dim) {
        s.dim = *o.dim;
        s.note("dim", std::to_string(*o.dim), source);
    }
    if (o.tier) {
        s.tier = *o.tier;
        s.function_ids.reset();
        s.function_group.reset();
        s.note("tier", *o.tier, source);
    }
    if (o.functions) apply_function_selector(s, *o.functions, source);
    if (o.algorithms) {
        std::vector<std::string> ids;
        std::stringstream ss(*o.algorithms);
        std::string token;
        while (std::getline(ss, token, ','))
            if (!token.empty()) ids.push_back(token);
        apply_algorithm_selector(s, std::move(ids), source);
    }
    if (o.seeds) {
        s.seeds = *o.seeds;
        s.note("seeds", std::to_string(*o.seeds), source);
    }
    if (o.out) s.out = *o.out;
    if (o.jobs) s.jobs = *o.jobs;
    if (o.format) {
        s.format = *o.format;
        s.note("format", *o.format, source);
    }
}

ExperimentPlan materialize(const Settings& s) {
    ExperimentPlan plan;
    plan.master_seed = s.master_seed;
    plan.replicates = s.seeds;
    plan.output_dir = s.out;
    plan.jobs = s.jobs;
    plan.format = s.format;
    plan.provenance = s.trail;

    plan.engine = EngineConfig{};
    plan.engine.population_size = s.np;
    plan.engine.crossover_rate = s.cr;
    plan.engine.max_generations = s.generations;
    plan.engine.dimension = s.dim;
    plan.engine.bound_policy = bound_policy_from_string(s.bound_policy);
    plan.engine.mutant_first = s.mutant_first;

    // Algorithm selection against the canonical 13.
    const std::vector<AlgorithmSpec> canon = default_algorithms();
    if (s.algorithm_ids) {
        for (const auto& id : *s.algorithm_ids) {
            const auto it =
                std::find_if(canon.begin(), canon.end(),
                             [&](const AlgorithmSpec& a) { return a.id == id; });
            if (it == canon.end()) {
                std::vector<std::string> valid;
                for (const auto& a : canon) valid.push_back(a.id);
                throw ConfigError("unknown algorithm id \"" + id +
                                  "\"; valid ids: " + join(valid, ", "));
            }
            plan.algorithms.push_back(*it);
        }
    } else {
        plan.algorithms = canon;
    }
    if (s.alpha)
        for (auto& a : plan.algorithms) a.mutation.alpha = *s.alpha;
    if (s.beta)
        for (auto& a : plan.algorithms) a.mutation.beta = *s.beta;

    // Function selection: explicit ids > group tag > tier.
    if (s.function_ids) {
        for (int id : *s.function_ids) plan.functions.push_back({id, s.dim});
    } else if (s.function_group) {
        for (const auto& info :
             list_functions(group_from_string(*s.function_group)))
            plan.functions.push_back({info.id, s.dim});
    } else {
        plan.functions = functions_for_tier(s.tier, s.dim);
    }

    if (plan.format != "csv" && plan.format != "json")
        throw ConfigError("unknown format \"" + plan.format +
                          "\"; valid formats: csv, json");
    if (plan.jobs < 0)
        throw ConfigError("jobs must be >= 0 (0 = hardware concurrency)");
    validate_plan(plan);
    return plan;
}

}  // namespace

ExperimentPlan parse_config(const PlanOverrides& overrides) {
    Settings s;
    if (overrides.config_path) apply_config_file(s, *overrides.config_path);
    apply_flags(s, overrides);
    return materialize(s);
}

}  // namespace qde
