#include "shapecorr/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shapecorr {

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw std::invalid_argument("empty sample");
    for (double v : sorted_)
        if (!std::isfinite(v)) throw std::invalid_argument("empirical_cdf: non-finite value");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double u) const {
    if (!(u >= 0.0) || !(u <= 1.0)) throw std::invalid_argument("quantile level out of range");
    if (u == 0.0) return sorted_.front();
    // Smallest k with k/n >= u, using the same division as operator() so
    // that quantile(evaluate(y)) = y holds exactly at sample atoms.
    std::size_t n = sorted_.size();
    std::size_t lo = 1, hi = n;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (static_cast<double>(mid) / static_cast<double>(n) >= u)
            hi = mid;
        else
            lo = mid + 1;
    }
    return sorted_[lo - 1];
}

std::vector<long long> rank_counts(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<long long> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto it = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
        out[i] = static_cast<long long>(it - sorted.begin());
    }
    return out;
}

std::vector<double> ranks_of(std::span<const double> values) {
    std::vector<long long> counts = rank_counts(values);
    std::vector<double> out(values.size());
    double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<double>(counts[i]) / n;
    return out;
}

std::vector<double> y_ranks(const Sample& sample) { return ranks_of(sample.y()); }

bool SortedByX::has_x_ties() const {
    return std::any_of(group_sizes.begin(), group_sizes.end(), [](std::size_t g) { return g > 1; });
}

SortedByX sort_pairs_by_x(const Sample& sample, RngSeed seed) {
    const std::size_t n = sample.n();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& x = sample.x();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return a < b;  // deterministic before the tie shuffle
    });

    SortedByX out;
    out.order = std::move(order);
    Rng rng(seed);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && x[out.order[j]] == x[out.order[i]]) ++j;
        out.group_sizes.push_back(j - i);
        if (j - i > 1) rng.shuffle(std::span<std::size_t>(out.order.data() + i, j - i));
        i = j;
    }
    out.y_sorted.reserve(n);
    for (std::size_t k : out.order) out.y_sorted.push_back(sample.y()[k]);
    return out;
}

}  // namespace shapecorr
