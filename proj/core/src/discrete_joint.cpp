#include "shapecorr/discrete_joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shapecorr/isotonic.hpp"

namespace shapecorr {

DiscreteJoint::DiscreteJoint(std::vector<double> x_support, std::vector<double> y_support,
                             std::vector<std::vector<double>> pmf)
    : x_support_(std::move(x_support)), y_support_(std::move(y_support)), pmf_(std::move(pmf)) {
    if (x_support_.empty() || y_support_.empty())
        throw std::invalid_argument("discrete joint: empty support");
    if (!std::is_sorted(x_support_.begin(), x_support_.end()) ||
        !std::is_sorted(y_support_.begin(), y_support_.end()))
        throw std::invalid_argument("discrete joint: supports must be sorted ascending");
    if (std::adjacent_find(x_support_.begin(), x_support_.end()) != x_support_.end() ||
        std::adjacent_find(y_support_.begin(), y_support_.end()) != y_support_.end())
        throw std::invalid_argument("discrete joint: support points must be distinct");
    if (pmf_.size() != x_support_.size())
        throw std::invalid_argument("discrete joint: pmf row count mismatch");
    double total = 0;
    for (const auto& row : pmf_) {
        if (row.size() != y_support_.size())
            throw std::invalid_argument("discrete joint: pmf column count mismatch");
        for (double p : row) {
            if (!(p >= 0) || !std::isfinite(p))
                throw std::invalid_argument("discrete joint: probabilities must be nonnegative");
            total += p;
        }
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("discrete joint: probabilities must sum to 1");
}

std::vector<double> DiscreteJoint::x_marginal() const {
    std::vector<double> out(nx(), 0.0);
    for (std::size_t i = 0; i < nx(); ++i)
        for (std::size_t j = 0; j < ny(); ++j) out[i] += pmf_[i][j];
    return out;
}

std::vector<double> DiscreteJoint::y_marginal() const {
    std::vector<double> out(ny(), 0.0);
    for (std::size_t i = 0; i < nx(); ++i)
        for (std::size_t j = 0; j < ny(); ++j) out[j] += pmf_[i][j];
    return out;
}

std::vector<double> DiscreteJoint::x_cdf() const {
    std::vector<double> out = x_marginal();
    for (std::size_t i = 1; i < out.size(); ++i) out[i] += out[i - 1];
    return out;
}

std::vector<double> DiscreteJoint::y_cdf() const {
    std::vector<double> out = y_marginal();
    for (std::size_t j = 1; j < out.size(); ++j) out[j] += out[j - 1];
    return out;
}

namespace {

void require_y_nondegenerate(const std::vector<double>& mu) {
    std::size_t support_points = 0;
    for (double p : mu)
        if (p > 0) ++support_points;
    if (support_points < 2) throw std::invalid_argument("degenerate Y");
}

double weighted_variance(const std::vector<double>& values, const std::vector<double>& weights) {
    double mean = 0;
    for (std::size_t i = 0; i < values.size(); ++i) mean += weights[i] * values[i];
    double var = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        var += weights[i] * (values[i] - mean) * (values[i] - mean);
    return var;
}

}  // namespace

double population_c(const DiscreteJoint& joint) {
    std::vector<double> mu = joint.y_marginal();
    require_y_nondegenerate(mu);
    std::vector<double> mx = joint.x_marginal();

    double numerator = 0, denominator = 0;
    for (std::size_t t = 0; t < joint.ny(); ++t) {
        if (mu[t] == 0) continue;
        // Conditional survival E[1(Y >= y_t) | X = x_i].
        double tail_mean = 0;
        std::vector<double> cond(joint.nx(), 0.0);
        for (std::size_t i = 0; i < joint.nx(); ++i) {
            double tail = 0;
            for (std::size_t j = t; j < joint.ny(); ++j) tail += joint.pmf(i, j);
            cond[i] = mx[i] > 0 ? tail / mx[i] : 0.0;
            tail_mean += tail;
        }
        numerator += mu[t] * weighted_variance(cond, mx);
        denominator += mu[t] * tail_mean * (1.0 - tail_mean);
    }
    return numerator / denominator;
}

double population_cmon(const DiscreteJoint& joint) {
    std::vector<double> mu = joint.y_marginal();
    require_y_nondegenerate(mu);
    std::vector<double> gy = joint.y_cdf();
    std::vector<double> mx = joint.x_marginal();

    // m(x) = E[G(Y) | X = x] over the sorted X support.
    std::vector<double> m(joint.nx(), 0.0), weights(joint.nx(), 0.0);
    for (std::size_t i = 0; i < joint.nx(); ++i) {
        double px = mx[i];
        if (px == 0) continue;
        double s = 0;
        for (std::size_t j = 0; j < joint.ny(); ++j) s += joint.pmf(i, j) * gy[j];
        m[i] = s / px;
        weights[i] = px;
    }
    // Drop zero-probability atoms before pooling (pava needs positive weights).
    std::vector<double> mv, wv;
    for (std::size_t i = 0; i < joint.nx(); ++i) {
        if (weights[i] > 0) {
            mv.push_back(m[i]);
            wv.push_back(weights[i]);
        }
    }
    IsotonicFit fit = pava(mv, wv);

    double var_g = 0, mean_g = 0;
    for (std::size_t j = 0; j < joint.ny(); ++j) mean_g += mu[j] * gy[j];
    for (std::size_t j = 0; j < joint.ny(); ++j) var_g += mu[j] * (gy[j] - mean_g) * (gy[j] - mean_g);
    double var_fit = weighted_variance(fit.fitted, wv);
    return var_fit / var_g;
}

double population_spearman(const DiscreteJoint& joint) {
    std::vector<double> mx = joint.x_marginal();
    std::vector<double> mu = joint.y_marginal();
    require_y_nondegenerate(mu);
    require_y_nondegenerate(mx);  // same non-degeneracy requirement on X

    std::vector<double> fx = joint.x_cdf();
    std::vector<double> gy = joint.y_cdf();
    double ef = 0, eg = 0;
    for (std::size_t i = 0; i < joint.nx(); ++i) ef += mx[i] * fx[i];
    for (std::size_t j = 0; j < joint.ny(); ++j) eg += mu[j] * gy[j];
    double vf = 0, vg = 0, cov = 0;
    for (std::size_t i = 0; i < joint.nx(); ++i) vf += mx[i] * (fx[i] - ef) * (fx[i] - ef);
    for (std::size_t j = 0; j < joint.ny(); ++j) vg += mu[j] * (gy[j] - eg) * (gy[j] - eg);
    for (std::size_t i = 0; i < joint.nx(); ++i)
        for (std::size_t j = 0; j < joint.ny(); ++j)
            cov += joint.pmf(i, j) * (fx[i] - ef) * (gy[j] - eg);
    return cov / std::sqrt(vf * vg);
}

}  // namespace shapecorr
