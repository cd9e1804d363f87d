#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace mobnet {

// SplitMix64 finalizer; used only to derive engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// One independent substream per purpose. Enabling the epidemic draws only
// from its own stream, so trajectories and traffic are unchanged.
enum class Substream : std::uint64_t {
    placement = 1,
    mobility = 2,
    generation = 3,
    routing = 4,
    epidemic = 5,
};

// Thin wrapper over mt19937_64. The engine output is fully specified by the
// standard; the distributions below are written out so that results do not
// depend on the standard library vendor.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    Rng(std::uint64_t master_seed, Substream stream)
        : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL))) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer on [0, n); n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t draw = engine_();
        while (draw >= limit) {
            draw = engine_();
        }
        return draw % n;
    }

    bool bernoulli(double p) {
        if (p >= 1.0) {
            return true;
        }
        if (p <= 0.0) {
            return false;
        }
        return uniform01() < p;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mobnet
