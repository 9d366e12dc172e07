#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "qde/errors.hpp"

namespace qde {

// splitmix64 step; used for seed derivation, never for sampling.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a over bytes; stable across platforms, used to hash algorithm ids.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Order-sensitive combination of two 64-bit values into a well-mixed seed.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + b + (a << 6) + (a >> 2)));
}

// Deterministic random stream.
//
// std::mt19937_64's raw output sequence is fixed by the language standard,
// but the standard *distributions* are not; every mapping from raw bits to
// doubles/ints is therefore done by hand here so that identical seeds give
// bit-identical streams on every platform. Owned by exactly one caller at a
// time (never shared across threads).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform double in [0, 1): top 53 bits of the raw draw.
    double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        if (!(lo < hi)) throw InvalidRange("uniform: requires lo < hi");
        return lo + (hi - lo) * u01();
    }

    // Uniform integer in {lo, ..., hi}; consumes exactly one raw draw.
    // Bias is O(range / 2^53), negligible for the population-scale ranges
    // used here.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw InvalidRange("uniform_int: requires lo <= hi");
        const double n = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
        int v = lo + static_cast<int>(u01() * n);
        return v > hi ? hi : v;  // guards the u01()*n == n edge after rounding
    }

    // Standard normal via the Marsaglia polar method; caches the spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qde
