#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "shapecorr/rng.hpp"
#include "shapecorr/sample.hpp"

namespace shapecorr {

/// A theta-indexed joint model that is an independence model at
/// theta = 0, together with its score function there and the Fisher
/// information tau0^2 = E_0[score^2].
struct ParametricFamily {
    std::string name;
    double tau0_sq = 1;
    /// Draws an i.i.d. sample of size n from the theta-model.
    std::function<Sample(double theta, std::size_t n, Rng&)> sampler;
    /// Score (x, y) -> d/dtheta log h_theta(x, y) at theta = 0.
    std::function<double(double x, double y)> score;
    /// Marginal cdf of Y under theta = 0.
    std::function<double(double)> y_null_cdf;
};

/// Additive noise spec for the trend model.
struct NoiseModel {
    std::function<double(Rng&)> sample;
    /// -g0'(y) / g0(y).
    std::function<double(double)> location_score;
    std::function<double(double)> cdf;
    double fisher_information = 1;
};

NoiseModel gaussian_noise();

/// Trend model Y = theta * a(X) + eps with X ~ Unif(0,1) and eps from
/// the noise model; the score at theta = 0 is a(X) * location_score(Y)
/// and tau0^2 = E[a(X)^2] * I(g0).
ParametricFamily trend_model(std::string name, std::function<double(double)> a,
                             double a_second_moment, NoiseModel noise);

/// Shipped families: "gauss-trend" (a(x) = x), "sign-trend"
/// (a(x) = sign(x - 1/2)), and "x-only" (independent data, score a
/// centered function of X alone).
std::vector<std::string> shipped_family_names();
ParametricFamily family_by_name(const std::string& name);

/// L_n = (1 / (tau0 sqrt(n))) sum score(X_i, Y_i).
double score_statistic(const Sample& sample, const ParametricFamily& family);

enum class PowerStatistic { score, chatterjee, cmon_sqrt, spearman, combined };
std::string power_statistic_name(PowerStatistic stat);

struct EfficiencyEstimate {
    double rho = 0;      // empirical correlation with the score statistic
    double rho_sq = 0;
    double se_rho = 0;   // jackknife standard error of rho
    std::size_t n = 0;
    std::size_t reps = 0;
};

/// Simulates (statistic, L_n) under theta = 0 and reports the squared
/// empirical correlation, the Pitman efficiency of the statistic's test
/// against the family. The score statistic itself gives exactly 1.
EfficiencyEstimate pitman_efficiency_mc(PowerStatistic statistic, const ParametricFamily& family,
                                        std::size_t n, std::size_t reps, RngSeed seed,
                                        double lambda = 0.5);

struct CancellationEstimate {
    double combined = 0;  // cov(sum|V_(i)-V_(i+1)|, sum score) + 2 cov(sum V(1-V), sum score)
    double combined_se = 0;
    double cov_abs_diff = 0;
    double se_abs_diff = 0;
    double cov_v_product = 0;
    double se_v_product = 0;
    std::size_t n = 0;
    std::size_t reps = 0;
};

/// Monte Carlo check of the covariance identity behind the zero local
/// power of the Chatterjee statistic; `combined` is statistically zero
/// for every quadratic-mean-differentiable family, at every n >= 2.
/// V_(i) uses the wrap-around convention (n+1) := (1).
CancellationEstimate cancellation_check(const ParametricFamily& family, std::size_t n,
                                        std::size_t reps, RngSeed seed);

/// Values on the m x m midpoint grid of (0,1)^2, row-major with row =
/// x cell and column = y cell.
struct SquareGrid {
    std::size_t m = 0;
    std::vector<double> values;  // size m*m

    static SquareGrid from_function(std::size_t m, const std::function<double(double, double)>& f);
    double& at(std::size_t i, std::size_t j) { return values[i * m + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * m + j]; }
    double cell_size() const { return 1.0 / static_cast<double>(m); }
    double riemann_mean() const;
    /// Riemann sum of a density grid; 1 within tolerance for a density.
    double riemann_sum() const { return riemann_mean(); }
};

/// Efficient-score projection on the uniform grid: subtract the row and
/// column conditional means (double centering), leaving a grid whose
/// row means and column means all vanish -- the component of the score
/// orthogonal to every function of X alone and of Y alone.
SquareGrid conditional_projection(const SquareGrid& score);

/// e(lambda*Cn + (1-lambda)*sqrt(Cmon)) = e(Cn) / (1 + (15/8)((1-lambda)/lambda)^2);
/// 8/23 of e(Cn) at lambda = 1/2.
double efficiency_combined(double e_cn, double lambda);

}  // namespace shapecorr
