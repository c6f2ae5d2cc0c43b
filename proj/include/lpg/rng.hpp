#pragma once

#include <cmath>
#include <cstdint>

namespace lpg {

/// splitmix64 finalizer. Bijective on 64-bit words, so distinct counters
/// never collide.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stateless hash of a (seed, stream, kind, index) draw counter.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t kind, std::uint64_t index) {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (stream + golden));
    h = mix64(h ^ (kind + golden));
    h = mix64(h ^ (index + golden));
    return h;
}

/// Counter-based random stream. Every draw is a pure function of
/// (seed, substream, kind, index): there is no mutable state, so results
/// are identical no matter how work is split across threads or calls.
///
/// normal() consumes the two counters (kind, 2*index) and (kind, 2*index+1);
/// do not mix uniform() and normal() draws under the same kind.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t substream)
        : seed_(seed), substream_(substream) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t substream() const { return substream_; }

    /// Uniform draw in [0, 1) with 53-bit resolution.
    double uniform(std::uint64_t kind, std::uint64_t index) const {
        return static_cast<double>(bits(kind, index) >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw via Box-Muller.
    double normal(std::uint64_t kind, std::uint64_t index) const {
        // u1 shifted into (0, 1] so the log is finite
        const double u1 =
            static_cast<double>((bits(kind, 2 * index) >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform(kind, 2 * index + 1);
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    std::uint64_t bits(std::uint64_t kind, std::uint64_t index) const {
        return counter_hash(seed_, substream_, kind, index);
    }

    std::uint64_t seed_;
    std::uint64_t substream_;
};

}  // namespace lpg
