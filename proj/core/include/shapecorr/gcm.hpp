#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapecorr/bigint.hpp"

namespace shapecorr {

/// Greatest convex minorant of the piecewise-linear path through
/// (i, S(i)), i = 0..n. Knots are the indices where the minorant touches
/// the path; collinear stretches are merged, so the per-segment slopes
/// are strictly increasing and the knot set is the unique minimal one.
struct ConvexMinorant {
    std::vector<std::size_t> knots;  // starts at 0, ends at n
    std::vector<double> slopes;      // one per segment, strictly increasing
};

/// cumsums must have n+1 entries starting at 0.
ConvexMinorant greatest_convex_minorant(std::span<const double> cumsums);

/// Left-hand slope of the minorant at each integer 1..n. Identical to
/// pava on the increments of the path with unit weights.
std::vector<double> slopes_as_isotonic(const ConvexMinorant& gcm, std::size_t n);

/// Knot indices of the greatest convex minorant computed exactly for
/// integer-valued paths; comparisons are 128-bit cross-products.
std::vector<std::size_t> gcm_knots_exact(std::span<const long long> cumsums);

/// Same computation over arbitrary-precision path values. When
/// `reject_collinear` is set, an exactly repeated slope on the working
/// hull raises an error (used to detect degenerate perturbations).
std::vector<std::size_t> gcm_knots_exact(std::span<const BigInt> cumsums, bool reject_collinear = false);

}  // namespace shapecorr
