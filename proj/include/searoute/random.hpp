#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace searoute {

// Mixes a master seed with a stream index (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seeded pseudo-random source. Each consumer owns its stream; nothing here is
/// shared between threads.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double unit() { return uniform(0.0, 1.0); }

    // Uniform in [0, n). n must be positive.
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return unit() < p;
    }

    std::uint64_t next_seed() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace searoute
