#pragma once

#include <cstdint>

namespace trialign {

// Small splitmix64-based generator. The standard <random> distributions are
// not guaranteed to produce the same stream across library implementations,
// and the benchmark generator promises bitwise-reproducible output for a
// given seed, so we keep the whole path under our control.
class rng {
  public:
    explicit rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection sampling to avoid modulo bias.
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bool(double p) { return next_double() < p; }

    // Derive an independent stream, e.g. for growing the two benchmark
    // copies separately from one top-level seed.
    rng split(std::uint64_t stream) {
        return rng(next_u64() ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    }

  private:
    std::uint64_t state_;
};

}  // namespace trialign
