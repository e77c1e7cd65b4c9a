#pragma once

#include <cmath>
#include <cstdint>

namespace sketchtest {

/// Seed for every sampling routine in the library. Equal seed plus equal
/// parameters always reproduces the sample bit for bit.
struct Seed {
    std::uint64_t value = 0;

    friend bool operator==(Seed a, Seed b) { return a.value == b.value; }
    friend bool operator!=(Seed a, Seed b) { return a.value != b.value; }
};

namespace detail {

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Derives an independent child seed, e.g. one per Monte-Carlo trial or per
/// worker thread. Two mixing rounds decorrelate (seed, index) pairs.
inline Seed derive_seed(Seed base, std::uint64_t index) {
    std::uint64_t h = detail::splitmix64_mix(base.value ^ 0x85ebca77c2b2ae63ULL);
    h = detail::splitmix64_mix(h + detail::splitmix64_mix(index));
    return Seed{h};
}

/// SplitMix64 stream: the library's only random number generator. It is a
/// splittable counter-based generator, so per-trial streams derived via
/// derive_seed() are independent and reproducible in parallel runs.
class SplitMix64 {
public:
    explicit SplitMix64(Seed seed) : state_(seed.value) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1]; never returns 0 so log() is safe.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace sketchtest
