#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapecorr/bigint.hpp"

namespace shapecorr {

/// Values with strictly positive weights, the input to weighted
/// least-squares isotonic regression.
struct WeightedSequence {
    std::vector<double> values;
    std::vector<double> weights;  // empty means unit weights
};

/// Result of pooling: fitted values are nondecreasing and constant on
/// each block; block levels are strictly increasing weighted means of
/// the pooled inputs.
struct IsotonicFit {
    struct Block {
        std::size_t start, end;  // [start, end)
        double level;
        double weight;
    };
    std::vector<double> fitted;
    std::vector<Block> blocks;
    double sse = 0;
};

/// Pool-adjacent-violators. Linear time; block merges compare levels
/// exactly (no epsilon) and merge on ties so levels come out strictly
/// increasing.
IsotonicFit pava(std::span<const double> values, std::span<const double> weights = {});
IsotonicFit pava(const WeightedSequence& seq);

/// Isotonic regression of y (already ordered by X) under the constraint
/// that entries inside each tie group are equal. group_sizes partitions
/// the indices in order; equivalent to collapsing each group to its mean
/// with weight = size, pooling, and expanding.
IsotonicFit isotonic_with_groups(std::span<const double> y, std::span<const std::size_t> group_sizes);

/// Exact pool-adjacent-violators over 64-bit fractions. Inputs must
/// share the denominator `den`; fitted levels are returned unreduced as
/// (block numerator sum, block size * den). Magnitudes are the caller's
/// responsibility (cross-multiplications run in 128-bit).
std::vector<Frac64> pava_exact(std::span<const long long> numerators, long long den = 1);

}  // namespace shapecorr
