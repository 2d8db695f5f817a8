#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "shapecorr/rng.hpp"
#include "shapecorr/sample.hpp"

namespace shapecorr {

/// All coefficients for one sample, plus the seed that fixed the X-tie
/// shuffle so the numbers are reproducible.
struct CorrelationReport {
    double chatterjee = 0;
    double cmon = 0;
    double cmon_sqrt = 0;
    double spearman = 0;
    std::map<double, double> combined;  // lambda -> lambda*cn + (1-lambda)*sqrt(cmon)
    std::size_t n = 0;
    RngSeed seed;
};

/// Chatterjee's rank correlation: sort by X (ties broken at random from
/// the seed), take consecutive differences of the ranks n*G_n(Y), and
/// return 1 - 3*sum|diff| / (n^2 - 1). Y ranks use the empirical cdf, so
/// Y-ties are counted with multiplicity rather than randomized.
double chatterjee_cn(const Sample& sample, RngSeed seed);

/// Isotonic correlation: the variance of the isotonic regression of the
/// Y-ranks on X (with equality forced inside tied-X groups) divided by
/// the variance of the Y-ranks. Always in [0, 1]. O(n log n).
double cmon_hat(const Sample& sample, RngSeed seed);

/// Pearson correlation of the empirical-cdf ranks of X and of Y.
double spearman_rho(const Sample& sample);

/// lambda * cn + (1 - lambda) * sqrt(cmon); lambda defaults to 1/2
/// elsewhere in the library.
double combined_coefficient(double chatterjee, double cmon, double lambda);

CorrelationReport correlation_report(const Sample& sample, RngSeed seed,
                                     std::span<const double> lambdas = {});

/// Population mean and variance (1/n sum conventions).
double mean_of(std::span<const double> v);
double variance_of(std::span<const double> v);

}  // namespace shapecorr
