#pragma once

#include <cstdint>

namespace unimetric {

/// SplitMix64. Fixed algorithm so sampled test cases and verification
/// witnesses replay identically across standard libraries and platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish value in [0, bound); bound > 0. Modulo bias is irrelevant
    /// at the sample sizes used here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Derive an independent stream; keeps sampling schedules stable when one
    /// consumer's draw count changes.
    SplitMix64 split() { return SplitMix64(next() ^ 0x51A9D2C7B4E3F806ull); }

private:
    std::uint64_t state_;
};

} // namespace unimetric
