#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace gramfield {

// Counter-based SplitMix64 stream.
//
// Stream splitting rule: the key of a stream is mix(seed ^ mix(tag + 1)),
// where tag identifies the matrix kind (see FieldKind). Draw i of a stream is
// mix(key + (i + 1) * golden_gamma). Draws are therefore a pure function of
// (seed, tag, i) and identical on every platform.
class SplitMixStream {
public:
    static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t x) noexcept {
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    constexpr SplitMixStream(std::uint64_t seed, std::uint64_t tag) noexcept
        : key_(mix(seed ^ mix(tag + 1))) {}

    constexpr std::uint64_t next_u64() noexcept {
        ++counter_;
        return mix(key_ + counter_ * golden_gamma);
    }

    // Uniform on (0, 1): 53 random bits, offset by half an ulp so log() is safe.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Box-Muller; one standard normal pair per two uniforms.
    std::complex<double> next_normal_pair() noexcept {
        const double r = std::sqrt(-2.0 * std::log(next_uniform()));
        const double theta = 2.0 * std::numbers::pi * next_uniform();
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace gramfield
