#include "expmod/random.hpp"

namespace expmod {

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection sampling on the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t Rng::geometric_failures(double q) {
    std::uint64_t count = 0;
    while (uniform() < q) ++count;
    return count;
}

}  // namespace expmod
