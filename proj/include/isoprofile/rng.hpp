#pragma once

#include <cmath>
#include <cstdint>

/// \file
/// Counter-based random numbers: draw i is a pure function of (seed, i), so
/// streams can be sharded or replayed without carrying mutable state.

namespace isoprofile {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(detail::mix64(seed ^ detail::mix64(stream * 0xda942042e4dd58b5ull))) {}

    std::uint64_t bits(std::uint64_t i) const { return detail::mix64(base_ + i); }

    /// Uniform double in [0, 1).
    double uniform(std::uint64_t i) const {
        return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t base_;
};

}  // namespace isoprofile
