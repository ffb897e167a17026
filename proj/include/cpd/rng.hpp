#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cpd {

/// SplitMix64 finalizer. Used both as a seed scrambler and to derive
/// independent per-replicate seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-replicate seed derivation: injective in the replicate index for a
/// fixed master seed, and stable across runs and platforms.
inline std::uint64_t seed_stream(std::uint64_t master_seed, std::uint64_t replicate_index) {
    std::uint64_t s = master_seed;
    const std::uint64_t mixed_master = splitmix64(s);
    std::uint64_t t = mixed_master ^ (replicate_index + 0x9e3779b97f4a7c15ULL);
    return splitmix64(t);
}

/// Deterministic RNG with a platform-stable normal sampler.
///
/// std::mt19937_64 output is bit-exact by the standard; the normal draws
/// use Box-Muller so they only depend on libm's log/sqrt/sin/cos, which
/// agree across platforms to the last ulp or so.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(scramble(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; draws come in cached pairs.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // 1 - u in (0, 1] keeps the log argument away from zero.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    static std::uint64_t scramble(std::uint64_t seed) {
        std::uint64_t s = seed;
        return splitmix64(s);
    }

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cpd
