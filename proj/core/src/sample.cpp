#include "shapecorr/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shapecorr {

Sample::Sample(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) throw std::invalid_argument("sample: x and y lengths differ");
    if (x_.empty()) throw std::invalid_argument("empty sample");
    for (double v : x_)
        if (!std::isfinite(v)) throw std::invalid_argument("sample: non-finite x value");
    for (double v : y_)
        if (!std::isfinite(v)) throw std::invalid_argument("sample: non-finite y value");
}

Sample Sample::from_pairs(std::span<const std::pair<double, double>> pairs) {
    std::vector<double> x, y;
    x.reserve(pairs.size());
    y.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        x.push_back(a);
        y.push_back(b);
    }
    return Sample(std::move(x), std::move(y));
}

bool has_ties(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace shapecorr
