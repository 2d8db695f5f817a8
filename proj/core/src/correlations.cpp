#include "shapecorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shapecorr/isotonic.hpp"
#include "shapecorr/ranks.hpp"

namespace shapecorr {

double mean_of(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v) {
    double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

namespace {

void require_correlation_input(const Sample& sample) {
    if (sample.n() < 2) throw std::invalid_argument("correlation requires n >= 2");
}

bool all_equal(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

struct RankPipeline {
    SortedByX sorted;
    std::vector<long long> counts_by_x;  // n * G_n(Y_(i)) in sorted-X order, exact integers
    std::vector<double> ranks_original;  // G_n(Y_i) in original order
    std::vector<double> ranks_by_x;      // G_n(Y_(i)) in sorted-X order
};

RankPipeline rank_pipeline(const Sample& sample, RngSeed seed) {
    RankPipeline p;
    p.sorted = sort_pairs_by_x(sample, seed);
    std::vector<long long> counts = rank_counts(sample.y());
    double n = static_cast<double>(sample.n());
    p.ranks_original.resize(sample.n());
    for (std::size_t i = 0; i < sample.n(); ++i)
        p.ranks_original[i] = static_cast<double>(counts[i]) / n;
    p.counts_by_x.reserve(sample.n());
    p.ranks_by_x.reserve(sample.n());
    for (std::size_t idx : p.sorted.order) {
        p.counts_by_x.push_back(counts[idx]);
        p.ranks_by_x.push_back(p.ranks_original[idx]);
    }
    return p;
}

double chatterjee_from_ranks(std::span<const long long> counts_by_x, std::size_t n) {
    // sum of |r_{i+1} - r_i| with r = n * G_n(Y), an integer under ties too.
    long long sum_abs = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        sum_abs += std::llabs(counts_by_x[i + 1] - counts_by_x[i]);
    double dn = static_cast<double>(n);
    return 1.0 - 3.0 * static_cast<double>(sum_abs) / (dn * dn - 1.0);
}

double cmon_from_ranks(const RankPipeline& p) {
    IsotonicFit fit = isotonic_with_groups(p.ranks_by_x, p.sorted.group_sizes);
    // A single pooled block is a constant fit: zero variance, exactly.
    if (fit.blocks.size() == 1) return 0.0;
    // Same summation order in both variances, so an unpooled fit gives
    // exactly 1.
    double denom = variance_of(p.ranks_by_x);
    double num = variance_of(fit.fitted);
    double ratio = num / denom;
    return std::clamp(ratio, 0.0, 1.0);
}

}  // namespace

double chatterjee_cn(const Sample& sample, RngSeed seed) {
    require_correlation_input(sample);
    if (all_equal(sample.y())) throw std::invalid_argument("degenerate Y");
    RankPipeline p = rank_pipeline(sample, seed);
    return chatterjee_from_ranks(p.counts_by_x, sample.n());
}

double cmon_hat(const Sample& sample, RngSeed seed) {
    require_correlation_input(sample);
    if (all_equal(sample.y())) throw std::invalid_argument("degenerate Y");
    RankPipeline p = rank_pipeline(sample, seed);
    return cmon_from_ranks(p);
}

double spearman_rho(const Sample& sample) {
    require_correlation_input(sample);
    std::vector<double> rx = ranks_of(sample.x());
    std::vector<double> ry = ranks_of(sample.y());
    if (all_equal(rx) || all_equal(ry))
        throw std::invalid_argument("spearman: constant ranks on a margin");
    double mx = mean_of(rx), my = mean_of(ry);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double a = rx[i] - mx, b = ry[i] - my;
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    return sxy / std::sqrt(sxx * syy);
}

double combined_coefficient(double chatterjee, double cmon, double lambda) {
    if (!(lambda >= 0.0) || !(lambda <= 1.0))
        throw std::invalid_argument("combined: lambda must lie in [0,1]");
    if (cmon < 0.0) throw std::invalid_argument("combined: cmon must be nonnegative");
    return lambda * chatterjee + (1.0 - lambda) * std::sqrt(cmon);
}

CorrelationReport correlation_report(const Sample& sample, RngSeed seed,
                                     std::span<const double> lambdas) {
    require_correlation_input(sample);
    if (all_equal(sample.y())) throw std::invalid_argument("degenerate Y");
    // One sort serves both statistics: Chatterjee works off the shuffled
    // order, the isotonic fit off the tie-group constraint.
    RankPipeline p = rank_pipeline(sample, seed);
    CorrelationReport report;
    report.n = sample.n();
    report.seed = seed;
    report.chatterjee = chatterjee_from_ranks(p.counts_by_x, sample.n());
    report.cmon = cmon_from_ranks(p);
    report.cmon_sqrt = std::sqrt(report.cmon);
    report.spearman = spearman_rho(sample);
    if (lambdas.empty()) {
        report.combined[0.5] = combined_coefficient(report.chatterjee, report.cmon, 0.5);
    } else {
        for (double lambda : lambdas)
            report.combined[lambda] = combined_coefficient(report.chatterjee, report.cmon, lambda);
    }
    return report;
}

}  // namespace shapecorr
