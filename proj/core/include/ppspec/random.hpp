#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ppspec {

/// splitmix64 finaliser; used to derive independent substream seeds.
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with platform-independent uniform and exponential draws
/// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1].
    double uniform_open0() noexcept {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) noexcept { return -std::log(uniform_open0()) / rate; }

    double normal() noexcept {
        // Box-Muller, one draw per call.
        const double u1 = uniform_open0();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ppspec
