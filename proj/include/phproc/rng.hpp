#pragma once

#include <cstdint>
#include <random>

namespace phproc {

/// Stateless 64-bit mixer (splitmix64 finaliser).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the k-th replicate of a multi-path run.
///
/// derive_seed(master, k) = mix64(mix64(master) ^ mix64(k + 1)). The value only
/// depends on (master, k), so replicates can be generated in any order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) noexcept {
    return mix64(mix64(master) ^ mix64(k + 1));
}

/// Reproducible stream of uniforms strictly inside (0, 1).
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard,
/// so a seed yields the same uniforms on every conforming platform. Each draw
/// uses the top 53 bits and maps bucket j to (j + 0.5) / 2^53.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    double next() noexcept {
        ++counter_;
        constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
        return (static_cast<double>(engine_() >> 11) + 0.5) * scale;
    }

    double operator()() noexcept { return next(); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace phproc
