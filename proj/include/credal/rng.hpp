#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace credal {

/// splitmix64 finalizer; used to derive independent seeds from (seed, tag) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);
std::uint64_t tag_hash(std::string_view tag);

/// Seeded random source with self-contained distribution code so that a
/// given seed reproduces the same stream on every platform and toolchain.
/// Substreams derive from the construction seed, never from engine state,
/// so they are independent of how many draws were already consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    Rng substream(std::uint64_t tag) const { return Rng(mix_seed(seed_, tag)); }
    Rng substream(std::string_view tag) const { return substream(tag_hash(tag)); }

    /// Consumes one engine draw to derive a fresh independent source, so
    /// repeated forks off one parent never coincide.
    Rng fork() { return Rng(mix_seed(seed_, engine_())); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Unbiased uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    double rademacher() { return uniform01() < 0.5 ? -1.0 : 1.0; }

    double normal();

    /// Gamma(shape, 1) via Marsaglia-Tsang.
    double gamma(double shape);

    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

    /// Uniform draw from the probability simplex (Dirichlet(1,...,1)).
    std::vector<double> simplex_uniform(std::size_t m);

    /// Index draw proportional to the (nonnegative, not necessarily
    /// normalised) weights; their total must be positive.
    std::size_t categorical(std::span<const double> weights);

    /// Fisher-Yates; puts a uniform k-subset in positions [0, k).
    void partial_shuffle(std::span<std::size_t> items, std::size_t k);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace credal
