#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sparsesel {

/// splitmix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for stream `stream` of master seed `seed`. Streams keyed this way let
/// parallel loops draw the same numbers regardless of how work is split.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Thin wrapper over mt19937_64 with the handful of draws the library needs.
/// Uniforms and Rademacher signs are built from raw bits so they do not depend
/// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// +1 or -1 with equal probability.
    double rademacher() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller.
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare_ = rad * std::sin(2.0 * 3.14159265358979323846 * u2);
        has_spare_ = true;
        return rad * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Exponential(1).
    double exponential()
    {
        double u = 0.0;
        while (u <= 0.0) u = uniform();
        return -std::log(u);
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        // Rejection keeps the draw unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % bound;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace sparsesel
