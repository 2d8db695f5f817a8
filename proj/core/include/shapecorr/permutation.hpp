#pragma once

#include <cstddef>
#include <vector>

#include "shapecorr/rng.hpp"

namespace shapecorr {

/// Permutation of {1,...,n} in one-line notation: images[i-1] = pi(i).
class Permutation {
  public:
    explicit Permutation(std::vector<std::size_t> images);
    static Permutation identity(std::size_t n);

    std::size_t n() const { return images_.size(); }
    /// pi(i) for 1 <= i <= n.
    std::size_t operator()(std::size_t i) const { return images_[i - 1]; }
    const std::vector<std::size_t>& images() const { return images_; }

    bool operator==(const Permutation&) const = default;

  private:
    std::vector<std::size_t> images_;
};

/// Cycles of a permutation. Each cycle lists elements in traversal order
/// (c[0] -> c[1] -> ... -> c[0]); cycles are recorded in order of their
/// smallest element, which also canonicalizes recomposition.
struct CycleDecomposition {
    std::vector<std::vector<std::size_t>> cycles;

    std::size_t n() const;
    std::vector<std::size_t> lengths() const;
    Permutation recompose() const;
};

CycleDecomposition cycle_decomposition(const Permutation& perm);

/// Uniform permutation via Fisher-Yates on the rng stream.
Permutation random_permutation(std::size_t n, RngSeed seed);
Permutation random_permutation(std::size_t n, Rng& rng);

/// Number of cycles of a uniform permutation on [n], sampled through the
/// representation N = sum_{k=1..n} Bernoulli(1/k).
std::size_t sample_cycle_count(std::size_t n, RngSeed seed);
std::size_t sample_cycle_count(std::size_t n, Rng& rng);

}  // namespace shapecorr
