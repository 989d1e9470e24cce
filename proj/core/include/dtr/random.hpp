#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dtr {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Seed for a named consumer of randomness: splitmix64(seed ^ fnv1a64(purpose)).
/// Components take derived seeds so each can be reproduced in isolation.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) noexcept;

/// Seeded random source. Uniform draws are built from the top 53 bits of
/// mt19937_64 output so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        ++draws_;
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

} // namespace dtr
