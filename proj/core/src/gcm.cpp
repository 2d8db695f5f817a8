#include "shapecorr/gcm.hpp"

#include <stdexcept>

namespace shapecorr {

namespace {

template <class SlopeGE>
std::vector<std::size_t> lower_hull(std::size_t n_points, SlopeGE pop_needed) {
    // pop_needed(a, b, c): slope(a,b) >= slope(b,c), i.e. b is not a
    // strict corner of the minorant.
    std::vector<std::size_t> knots;
    knots.reserve(n_points);
    knots.push_back(0);
    for (std::size_t i = 1; i < n_points; ++i) {
        while (knots.size() >= 2 && pop_needed(knots[knots.size() - 2], knots.back(), i)) knots.pop_back();
        knots.push_back(i);
    }
    return knots;
}

}  // namespace

ConvexMinorant greatest_convex_minorant(std::span<const double> cumsums) {
    if (cumsums.size() < 2) throw std::invalid_argument("greatest_convex_minorant: need at least two points");
    if (cumsums[0] != 0.0) throw std::invalid_argument("greatest_convex_minorant: path must start at 0");
    auto slope = [&](std::size_t a, std::size_t b) {
        return (cumsums[b] - cumsums[a]) / static_cast<double>(b - a);
    };
    ConvexMinorant out;
    out.knots = lower_hull(cumsums.size(), [&](std::size_t a, std::size_t b, std::size_t c) {
        return slope(a, b) >= slope(b, c);
    });
    out.slopes.reserve(out.knots.size() - 1);
    for (std::size_t k = 1; k < out.knots.size(); ++k) out.slopes.push_back(slope(out.knots[k - 1], out.knots[k]));
    return out;
}

std::vector<double> slopes_as_isotonic(const ConvexMinorant& gcm, std::size_t n) {
    if (gcm.knots.empty() || gcm.knots.back() != n)
        throw std::invalid_argument("slopes_as_isotonic: minorant does not span 0..n");
    std::vector<double> out(n);
    for (std::size_t seg = 0; seg + 1 < gcm.knots.size(); ++seg) {
        for (std::size_t i = gcm.knots[seg]; i < gcm.knots[seg + 1]; ++i) out[i] = gcm.slopes[seg];
    }
    return out;
}

std::vector<std::size_t> gcm_knots_exact(std::span<const long long> cumsums) {
    if (cumsums.size() < 2) throw std::invalid_argument("gcm_knots_exact: need at least two points");
    return lower_hull(cumsums.size(), [&](std::size_t a, std::size_t b, std::size_t c) {
        __int128 lhs = static_cast<__int128>(cumsums[b] - cumsums[a]) * static_cast<long long>(c - b);
        __int128 rhs = static_cast<__int128>(cumsums[c] - cumsums[b]) * static_cast<long long>(b - a);
        return lhs >= rhs;
    });
}

std::vector<std::size_t> gcm_knots_exact(std::span<const BigInt> cumsums, bool reject_collinear) {
    if (cumsums.size() < 2) throw std::invalid_argument("gcm_knots_exact: need at least two points");
    return lower_hull(cumsums.size(), [&](std::size_t a, std::size_t b, std::size_t c) {
        BigInt lhs = (cumsums[b] - cumsums[a]).mul_small(static_cast<std::uint64_t>(c - b));
        BigInt rhs = (cumsums[c] - cumsums[b]).mul_small(static_cast<std::uint64_t>(b - a));
        auto cmp = lhs <=> rhs;
        if (reject_collinear && cmp == std::strong_ordering::equal)
            throw std::runtime_error("degenerate perturbation");
        return cmp >= 0;
    });
}

}  // namespace shapecorr
