#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapecorr/rng.hpp"
#include "shapecorr/sample.hpp"

namespace shapecorr {

/// Empirical cdf of a batch of values: t -> #{v <= t} / n.
class EmpiricalCdf {
  public:
    /// Sorts a copy of the input. Throws on an empty or non-finite batch.
    explicit EmpiricalCdf(std::vector<double> values);

    /// Right-continuous step function with values in {0, 1/n, ..., 1}.
    double operator()(double t) const;

    /// Generalized inverse inf{t : cdf(t) >= u} over the stored values.
    /// u = 0 returns the minimum; u outside [0,1] is an error.
    double quantile(double u) const;

    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted_values() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

inline EmpiricalCdf empirical_cdf(std::vector<double> values) { return EmpiricalCdf(std::move(values)); }

/// Ranks G_n(y_i) = #{j : y_j <= y_i} / n, ties counted with multiplicity.
std::vector<double> y_ranks(const Sample& sample);
std::vector<double> ranks_of(std::span<const double> values);

/// Integer rank counts #{j : v_j <= v_i}; exact arithmetic for the
/// statistics that consume rank differences.
std::vector<long long> rank_counts(std::span<const double> values);

/// Y values reordered by increasing X. Within each group of equal X the
/// order is an rng-driven uniform shuffle; the group boundaries are kept
/// so isotonic fits can instead impose the within-group equality
/// constraint. group_sizes partitions 0..n-1 in sorted-X order.
struct SortedByX {
    std::vector<double> y_sorted;
    std::vector<std::size_t> order;        // original index of each sorted slot
    std::vector<std::size_t> group_sizes;  // sizes of consecutive tied-X groups, sum = n
    bool has_x_ties() const;
};

SortedByX sort_pairs_by_x(const Sample& sample, RngSeed seed);

}  // namespace shapecorr
