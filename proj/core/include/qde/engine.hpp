#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qde/bounds.hpp"
#include "qde/mutation.hpp"
#include "qde/quaternion.hpp"

namespace qde {

enum class InitScheme { E4, Polar };
enum class BoundPolicy { Clamp, Reflect };

std::string to_string(InitScheme s);
InitScheme init_scheme_from_string(const std::string& name);  // ConfigError
std::string to_string(BoundPolicy p);
BoundPolicy bound_policy_from_string(const std::string& name);  // ConfigError

// One candidate solution: D/4 quaternion blocks (a single block holding the
// coordinates in its imaginary part when D = 3) plus cached fitness.
struct Genome {
    std::vector<Quaternion> blocks;
    std::optional<double> fitness;
};

struct EngineConfig {
    int population_size = 30;
    double crossover_rate = 0.9;
    MutationSpec mutation{};
    InitScheme init = InitScheme::E4;
    int max_generations = 100;
    std::uint64_t seed = 0;
    int dimension = 3;
    Bounds bounds{};
    BoundPolicy bound_policy = BoundPolicy::Clamp;
    // When set, a full mutant genome is built first and crossover then picks
    // blocks between mutant and target; when unset (default), mutation is
    // invoked lazily inside the crossover test, block by block. The two
    // orderings consume randomness differently and are both deterministic.
    bool mutant_first = false;
};

struct RunTrace {
    // Entry 0 is the initial population's best; one entry per generation
    // follows (length max_generations + 1). Non-increasing.
    std::vector<double> best_fitness_per_generation;
    Genome best_genome;
    long evaluations = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

// Coordinate embedding. D = 3 packs into one quaternion with zero real part;
// D a positive multiple of 4 packs consecutive 4-tuples as (w, x, y, z).
// Throws UnsupportedDimension for anything else.
std::vector<Quaternion> encode(const std::vector<double>& x);
// Inverse embedding; for dimension 3 only the imaginary parts are read, so
// blocks whose real part drifted away from zero decode unchanged.
std::vector<double> decode(const std::vector<Quaternion>& blocks,
                           int dimension);

// Componentwise repair into [lo, hi]: clamp saturates, reflect folds the
// overshoot back inside.
std::vector<double> repair_bounds(std::vector<double> x,
                                  const EngineConfig& cfg);

// Np genomes, fitness unset. E4 draws every quaternion component uniformly
// over the coordinate bounds; Polar builds unit quaternions from a uniform
// angle in [-2pi, 2pi] and a uniform random axis. Decoded coordinates are
// repaired into bounds in both cases.
std::vector<Genome> init_population(const EngineConfig& cfg, Rng& rng);

// Distinct donor indices r0, r1, r2, all different from target. Exposed for
// the test suite; requires np >= 4.
std::array<int, 3> draw_donors(Rng& rng, int np, int target);

// One synchronous generation: donors come from `pop`, trials fill the
// returned population. Exactly Np objective evaluations. All genomes in
// `pop` must carry fitness.
std::vector<Genome> evolve_generation(const std::vector<Genome>& pop,
                                      const EngineConfig& cfg,
                                      const Objective& objective, Rng& rng);

// Full quaternion-encoded run: init, evaluate, then max_generations steps.
// Throws InvalidRange / UnsupportedDimension on a bad config.
RunTrace run(const EngineConfig& cfg, const Objective& objective);

// Classical real-valued rand/1/bin baseline sharing the config (alpha is the
// differential weight F); works for any dimension >= 1 and ignores the
// quaternion-specific fields (init scheme, mutant_first, strategy).
RunTrace run_real_de(const EngineConfig& cfg, const Objective& objective);

}  // namespace qde
