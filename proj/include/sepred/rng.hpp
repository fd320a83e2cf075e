#pragma once

#include <cstdint>

namespace sepred {

/// Counter-mode generator: output i is splitmix64(seed + (i+1)*golden).
/// The stream is fully specified here so seeded runs are reproducible on any
/// platform; std:: distributions are deliberately not used.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return mix(seed_ + (++counter_) * kGolden); }

    /// Uniform integer in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace sepred
