#pragma once

#include <cstdint>
#include <random>

namespace expmod {

/// SplitMix64 finaliser; used to derive independent substream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of substream `index` under `root`.
constexpr std::uint64_t substream_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return mix_seed(mix_seed(root) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

/// Counter-style SplitMix64 stream: cheap to construct, one per substream.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// mt19937_64 with distribution code of our own, so a seed produces the
/// same stream with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

    /// Number of failures before the first success, success probability 1 - q.
    std::uint64_t geometric_failures(double q);

private:
    std::mt19937_64 engine_;
};

}  // namespace expmod
