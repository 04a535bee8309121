#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace collapse {

/// SplitMix64 finalizer. Used to derive per-stream seeds and to expand a
/// single 64-bit seed into generator state.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Stream derivation: seed_i = mix64(master + (i + 1) * golden ratio).
/// Independent of worker scheduling; trajectory i always sees the same stream.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ull);
}

/// xoshiro256++ with explicit, platform-independent samplers. All
/// distributions below consume a fixed number of raw draws per call, so a
/// given seed reproduces a trajectory bit for bit.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) {
            word = mix64(sm);
            sm += 0x9e3779b97f4a7c15ull;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Exponential waiting time with the given rate.
    double exponential(double rate) { return -std::log(1.0 - uniform01()) / rate; }

    /// Standard normal (Box-Muller, two uniforms per draw).
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(1.0 - uniform01()));
        return r * std::cos(2.0 * M_PI * uniform01());
    }

    /// Gamma(alpha, 1) variate for half-integer alpha = two_alpha / 2:
    /// sum of floor(alpha) unit exponentials plus, for odd two_alpha, Z^2/2.
    double gamma_half_integer(int two_alpha) {
        double s = 0.0;
        for (int i = 0; i < two_alpha / 2; ++i) s += exponential(1.0);
        if (two_alpha % 2 == 1) {
            const double z = normal();
            s += 0.5 * z * z;
        }
        return s;
    }

    /// Uniform direction on the unit sphere.
    std::array<double, 3> unit_vector() {
        const double mu = 2.0 * uniform01() - 1.0;
        const double phi = 2.0 * M_PI * uniform01();
        const double r = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        return {r * std::cos(phi), r * std::sin(phi), mu};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_;
};

}  // namespace collapse
