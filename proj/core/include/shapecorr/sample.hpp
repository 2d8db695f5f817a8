#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace shapecorr {

/// Paired observations (x_i, y_i). Coordinates must be finite; NaN and
/// infinities are rejected at construction rather than propagated.
class Sample {
  public:
    Sample(std::vector<double> x, std::vector<double> y);

    static Sample from_pairs(std::span<const std::pair<double, double>> pairs);

    std::size_t n() const { return x_.size(); }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }

  private:
    std::vector<double> x_, y_;
};

/// True if any value occurs more than once.
bool has_ties(std::span<const double> values);

}  // namespace shapecorr
