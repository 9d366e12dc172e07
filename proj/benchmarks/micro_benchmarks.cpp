// Microbenchmarks for the hot paths: quaternion algebra, the mutation
// strategies, benchmark-function evaluation, one evolution generation, and
// the rank aggregation. Build target: qde_benchmarks.
#include <benchmark/benchmark.h>

#include <vector>

#include "qde/benchmarks.hpp"
#include "qde/engine.hpp"
#include "qde/mutation.hpp"
#include "qde/quaternion.hpp"
#include "qde/stats.hpp"

namespace {

using namespace qde;

Quaternion draw(Rng& rng) {
    return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
            rng.uniform(-2, 2)};
}

void BM_HamiltonProduct(benchmark::State& state) {
    Rng rng(1);
    const Quaternion p = draw(rng), q = draw(rng);
    for (auto _ : state) benchmark::DoNotOptimize(hamilton_product(p, q));
}
BENCHMARK(BM_HamiltonProduct);

void BM_Sandwich(benchmark::State& state) {
    Rng rng(2);
    const Quaternion r = random_unit_quaternion(rng), q = draw(rng);
    for (auto _ : state) benchmark::DoNotOptimize(sandwich(r, q));
}
BENCHMARK(BM_Sandwich);

void BM_ToPolar(benchmark::State& state) {
    Rng rng(3);
    const Quaternion q = draw(rng);
    for (auto _ : state) benchmark::DoNotOptimize(to_polar(q));
}
BENCHMARK(BM_ToPolar);

void BM_PolarRotor(benchmark::State& state) {
    Rng rng(4);
    const Quaternion a = draw(rng), b = draw(rng);
    for (auto _ : state) benchmark::DoNotOptimize(polar_rotor(a, b, 1.1, 0.5));
}
BENCHMARK(BM_PolarRotor);

void BM_Mutation(benchmark::State& state) {
    Rng rng(5);
    const Quaternion a = draw(rng), b = draw(rng), c = draw(rng);
    MutationSpec spec;
    spec.strategy = static_cast<Strategy>(state.range(0));
    spec.alpha = 1.1;
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_mutation(spec, a, b, c, rng));
}
BENCHMARK(BM_Mutation)->DenseRange(0, 5)->ArgNames({"strategy"});

void BM_FunctionEval(benchmark::State& state) {
    const int fid = static_cast<int>(state.range(0));
    const auto inst = make_instance(fid, 3, 42);
    Rng rng(6);
    const std::vector<double> x{rng.uniform(-5, 5), rng.uniform(-5, 5),
                                rng.uniform(-5, 5)};
    for (auto _ : state) benchmark::DoNotOptimize(inst.evaluate(x));
}
BENCHMARK(BM_FunctionEval)->DenseRange(1, 24)->ArgNames({"f"});

void BM_EvolveGeneration(benchmark::State& state) {
    EngineConfig cfg;
    cfg.population_size = 30;
    cfg.dimension = 3;
    cfg.mutation.strategy = static_cast<Strategy>(state.range(0));
    cfg.mutation.alpha = 1.1;
    const auto inst = make_instance(8, 3, 42);
    const Objective obj = [&inst](const std::vector<double>& x) {
        return inst.evaluate(x);
    };
    Rng rng(7);
    auto pop = init_population(cfg, rng);
    for (Genome& g : pop) g.fitness = obj(decode(g.blocks, cfg.dimension));
    for (auto _ : state) {
        pop = evolve_generation(pop, cfg, obj, rng);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_EvolveGeneration)->DenseRange(0, 5)->ArgNames({"strategy"});

void BM_FullRun(benchmark::State& state) {
    EngineConfig cfg;
    cfg.population_size = 30;
    cfg.max_generations = 100;
    cfg.dimension = 3;
    const auto inst = make_instance(1, 3, 42);
    const Objective obj = [&inst](const std::vector<double>& x) {
        return inst.evaluate(x);
    };
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(run(cfg, obj));
    }
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond);

void BM_Friedman(benchmark::State& state) {
    const int k = 13, n = 24;
    Rng rng(8);
    std::vector<std::vector<double>> m(n, std::vector<double>(k));
    for (auto& row : m)
        for (double& v : row) v = rng.u01();
    for (auto _ : state) benchmark::DoNotOptimize(friedman(m));
}
BENCHMARK(BM_Friedman);

}  // namespace

BENCHMARK_MAIN();
