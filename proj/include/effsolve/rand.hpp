#pragma once

#include <cstdint>
#include <random>

namespace effsolve {

// mt19937_64 with hand-rolled value mappings: the engine is standardized,
// std::uniform_real_distribution is not, and traces must be byte-identical
// for a given seed everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    double uniform01() { // in [0,1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // in [lo, hi] inclusive
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + gen_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace effsolve
