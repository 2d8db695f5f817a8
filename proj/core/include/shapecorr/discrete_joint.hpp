#pragma once

#include <cstddef>
#include <vector>

namespace shapecorr {

/// A finite-support joint distribution. Supports are kept sorted
/// ascending; pmf[i][j] = P(X = x_support[i], Y = y_support[j]).
/// Continuous populations are handled by callers through discretization
/// grids.
class DiscreteJoint {
  public:
    DiscreteJoint(std::vector<double> x_support, std::vector<double> y_support,
                  std::vector<std::vector<double>> pmf);

    std::size_t nx() const { return x_support_.size(); }
    std::size_t ny() const { return y_support_.size(); }
    const std::vector<double>& x_support() const { return x_support_; }
    const std::vector<double>& y_support() const { return y_support_; }
    double pmf(std::size_t i, std::size_t j) const { return pmf_[i][j]; }

    std::vector<double> x_marginal() const;
    std::vector<double> y_marginal() const;
    /// Marginal cdf values F(x_i), G(y_j) at the support points.
    std::vector<double> x_cdf() const;
    std::vector<double> y_cdf() const;

  private:
    std::vector<double> x_support_, y_support_;
    std::vector<std::vector<double>> pmf_;
};

/// Population Chatterjee coefficient:
/// sum_t mu(t) Var(E[1(Y>=t)|X]) / sum_t mu(t) Var(1(Y>=t)), mu the law
/// of Y. Zero iff independent, one iff Y is a function of X.
double population_c(const DiscreteJoint& joint);

/// Population isotonic coefficient: project m(x) = E[G(Y)|X=x] onto
/// nondecreasing functions in L2 of the X marginal (weighted pooling)
/// and return Var(projection) / Var(G(Y)).
double population_cmon(const DiscreteJoint& joint);

/// Population Spearman coefficient corr(F(X), G(Y)).
double population_spearman(const DiscreteJoint& joint);

}  // namespace shapecorr
