#pragma once

#include <cstddef>
#include <cstdint>

namespace shc {

/// SplitMix64. The k-th output (k = 1, 2, ...) for seed s is mix(s + k * 0x9E3779B97F4A7C15) with
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// uniform() = (next() >> 11) * 2^-53, in [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Integer in [0, n) by multiply-shift on the top 32 bits; n must be positive.
    std::size_t below(std::size_t n) noexcept {
        return static_cast<std::size_t>(((next() >> 32) * static_cast<std::uint64_t>(n)) >> 32);
    }
    bool coin() noexcept { return (next() >> 63) != 0; }

    /// Independent stream for sub-task `k`.
    Rng split(std::uint64_t k) const noexcept {
        Rng r(state_ ^ (0xD1B54A32D192ED03ULL * (k + 1)));
        r.next();
        return r;
    }

private:
    std::uint64_t state_;
};

}  // namespace shc
