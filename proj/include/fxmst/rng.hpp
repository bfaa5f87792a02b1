#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fxmst {

/// Seed for every stochastic procedure in the library. The same seed always
/// reproduces the same output, independent of scheduling or row order.
struct RandomSeed {
    std::uint64_t value = 0;
};

/// Deterministic random stream.
///
/// Generator choice, recorded here so outputs can be reproduced elsewhere:
///   - core engine: std::mt19937_64 (its integer output sequence is pinned
///     by the C++ standard, so the raw stream is identical on every
///     conforming implementation);
///   - stream splitting: substream k of seed s seeds the engine with
///     splitmix64(splitmix64(s) + k + 1), giving every series its own
///     statistically independent stream regardless of processing order;
///   - uniform doubles: top 53 bits of the engine output, in [0, 1);
///   - bounded integers: rejection sampling (no modulo bias);
///   - gaussians: Box-Muller with a cached spare.
/// Floating-point draws additionally go through std::log/cos/sin/sqrt and
/// therefore match bit-for-bit wherever the math library does.
class Rng {
public:
    explicit Rng(RandomSeed seed) : engine_(splitmix64(seed.value)) {}

    /// Independent stream `index` derived from `seed`.
    static Rng substream(RandomSeed seed, std::uint64_t index) {
        Rng r{RandomSeed{0}};
        r.engine_.seed(splitmix64(splitmix64(seed.value) + index + 1));
        return r;
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t raw;
        do {
            raw = next();
        } while (raw >= limit);
        return raw % bound;
    }

    /// Standard normal draw.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log() finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// In-place Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    // splitmix64 finalizer; used only to spread seeds.
    static std::uint64_t splitmix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fxmst
