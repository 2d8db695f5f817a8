#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace shapecorr {

/// A reproducible stream identifier. Identical (seed, stream) pairs
/// produce identical draw sequences; Monte Carlo loops give replicate r
/// the stream id r so runs can be split or parallelized without
/// changing results.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSeed with_stream(std::uint64_t s) const { return {seed, s}; }

    /// Child stream r of this seed. The current stream is folded into
    /// the seed through a bijective mixer, so replicate families derived
    /// from distinct (seed, stream) parents never collide even though
    /// every family is indexed 0, 1, 2, ...
    RngSeed substream(std::uint64_t r) const {
        std::uint64_t z = seed ^ (stream + 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return {z, r};
    }

    bool operator==(const RngSeed&) const = default;
};

/// xoshiro256++ generator. The 256-bit state is expanded from
/// (seed, stream) with SplitMix64, the seeding procedure recommended
/// for this family; distinct streams get statistically independent
/// states. All integer and [0,1) draws are pure integer arithmetic and
/// reproduce bit-for-bit everywhere.
class Rng {
  public:
    explicit Rng(RngSeed s);

    std::uint64_t next_u64();

    /// Uniform on [0,1), 53-bit resolution.
    double next_double();
    /// Uniform on (0,1).
    double next_open();

    /// Unbiased uniform integer in [0, bound) via rejection sampling.
    std::uint64_t next_below(std::uint64_t bound);

    /// Standard normal (Marsaglia polar method; the spare deviate is
    /// cached, so the call sequence matters for reproducibility).
    double next_normal();

    /// Gamma(alpha, 1) for alpha > 0 (Marsaglia-Tsang).
    double next_gamma(double alpha);

    /// Chi-squared with (possibly non-integer) df > 0.
    double next_chisq(double df) { return 2.0 * next_gamma(df / 2.0); }

    /// Fisher-Yates shuffle of a span.
    template <class T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

  private:
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0;
    bool has_spare_ = false;
};

}  // namespace shapecorr
