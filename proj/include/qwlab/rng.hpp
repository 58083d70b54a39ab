// rng.hpp — seeded random streams with deterministic, platform-independent sampling.
//
// std::mt19937_64 output is fully specified by the standard, but the
// <random> distributions are not; every sampling routine here is written
// out explicitly so that a (master seed, trial index) pair produces the
// same byte stream everywhere.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qwl {

// SplitMix64 step; used both as a mixer and to derive per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Per-trial stream seed: hash of (master seed, trial index). Trials may run
// in any order or in parallel and still see identical streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= trial_index * 0xd1b54a32d192ed03ull;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x165667b19e3779f9ull + (a << 6) + (a >> 2));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t u64() { return engine_(); }

    // Uniform in [0,1) with 53 random bits.
    double real() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1} by rejection, n >= 1.
    std::uint64_t index(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return real() < p; }

    // Sample from a cumulative weight table (strictly increasing, last entry
    // is the total). Returns the first index whose cumulative weight exceeds
    // the draw.
    std::size_t sample_cdf(std::span<const double> cdf) {
        const double x = real() * cdf.back();
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] <= x)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qwl
