#pragma once

#include <cstdint>
#include <random>

namespace wqte {

/// Deterministic random stream. All randomness in the library flows through
/// this class so that results depend only on (seed, substream indices) and
/// never on the platform's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Independent stream derived from a root seed and up to three indices
    /// (e.g. replicate number, bootstrap index, phase tag). Streams with
    /// distinct indices are statistically independent regardless of the
    /// order in which they are consumed.
    static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
        std::uint64_t h = mix(seed);
        h = mix(h ^ (0x9e3779b97f4a7c15ULL + a));
        h = mix(h ^ (0xbf58476d1ce4e5b9ULL + b));
        h = mix(h ^ (0x94d049bb133111ebULL + c));
        return Rng(h);
    }

    /// Uniform on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

}  // namespace wqte
