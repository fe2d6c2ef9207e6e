#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ostbc {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based random stream. Each stream is keyed by (seed, stream_id,
/// counter) so trial outcomes are independent of how trials are chunked
/// across workers: trial k of SNR point p always sees the same draws.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter) {
        // mix the three keys through two splitmix rounds each
        std::uint64_t s = seed;
        state_ = detail::splitmix64(s);
        s ^= 0x517cc1b727220a95ULL + stream_id;
        state_ ^= detail::splitmix64(s);
        s ^= 0x2545f4914f6cdd1dULL + counter;
        state_ ^= detail::splitmix64(s);
        state_ += stream_id * 0xd1342543de82ef95ULL + counter;
        next_u64(); // decorrelate nearby keys
    }

    std::uint64_t next_u64() { return detail::splitmix64(state_); }

    /// Uniform in (0, 1]: never returns 0, so log() is safe.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // 64-bit multiply-shift; bias is negligible for the small n used here
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Standard normal pair via Box-Muller (fixed consumption of 2 draws).
    void next_normal_pair(double& z0, double& z1) {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(phi);
        z1 = r * std::sin(phi);
    }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double z0, z1;
        next_normal_pair(z0, z1);
        spare_ = z1;
        have_spare_ = true;
        return z0;
    }

private:
    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ostbc
