#ifndef SCAAS_RNG_HPP
#define SCAAS_RNG_HPP

#include <cstdint>

namespace scaas {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Sequential SplitMix64 stream.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return splitmix64_mix(state_);
    }

    /// Uniform integer in [lo, hi] by 128-bit multiply-shift.
    constexpr std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) noexcept {
        const std::uint64_t span = hi - lo;
        if (span == UINT64_MAX) return next();
        return lo + static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * (span + 1)) >> 64);
    }

private:
    std::uint64_t state_;
};

/**
 * Counter-based draw for one simulator cell. The result depends only on the
 * arguments, never on the order cells are visited:
 *
 *   x = seed
 *   for c in (period, scp_index, qci): x = mix(x + gamma * (c + 1))
 */
constexpr std::uint64_t cell_draw(std::uint64_t seed, std::uint64_t period, std::uint64_t scp_index,
                                  std::uint64_t qci) noexcept {
    std::uint64_t x = seed;
    x = splitmix64_mix(x + kGoldenGamma * (period + 1));
    x = splitmix64_mix(x + kGoldenGamma * (scp_index + 1));
    x = splitmix64_mix(x + kGoldenGamma * (qci + 1));
    return x;
}

} // namespace scaas

#endif // SCAAS_RNG_HPP
