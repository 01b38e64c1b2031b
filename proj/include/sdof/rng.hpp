#pragma once

#include <cstdint>
#include <random>

namespace sdof {

/// Counter-based seed derivation (SplitMix64 finalizer). Stream k of a master
/// seed is stable under changes to the number of streams, so adding trials to
/// a run never perturbs earlier trials.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// mt19937_64 with hand-rolled output transforms. The std distributions are
/// implementation-defined; these transforms keep streams byte-reproducible
/// across compilers and platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer on {lo, ..., hi} inclusive.
    long long uniform_int(long long lo, long long hi) {
        const auto span = static_cast<unsigned long long>(hi - lo + 1);
        auto v = static_cast<unsigned long long>(uniform01() * static_cast<double>(span));
        if (v >= span) v = span - 1;
        return lo + static_cast<long long>(v);
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// -1 or +1 with equal probability.
    double sign() { return (eng_() & 1u) ? 1.0 : -1.0; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace sdof
