#include "shapecorr/local_power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shapecorr/correlations.hpp"
#include "shapecorr/null_tests.hpp"

namespace shapecorr {

NoiseModel gaussian_noise() {
    NoiseModel m;
    m.sample = [](Rng& rng) { return rng.next_normal(); };
    m.location_score = [](double y) { return y; };  // -g'(y)/g(y) for the standard normal
    m.cdf = [](double y) { return normal_cdf(y); };
    m.fisher_information = 1.0;
    return m;
}

ParametricFamily trend_model(std::string name, std::function<double(double)> a,
                             double a_second_moment, NoiseModel noise) {
    if (!(a_second_moment > 0)) throw std::invalid_argument("trend_model: E a(X)^2 must be positive");
    ParametricFamily fam;
    fam.name = std::move(name);
    fam.tau0_sq = a_second_moment * noise.fisher_information;
    fam.sampler = [a, noise](double theta, std::size_t n, Rng& rng) {
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.next_double();
            y[i] = theta * a(x[i]) + noise.sample(rng);
        }
        return Sample(std::move(x), std::move(y));
    };
    fam.score = [a, noise](double x, double y) { return a(x) * noise.location_score(y); };
    fam.y_null_cdf = noise.cdf;
    return fam;
}

namespace {

ParametricFamily x_only_family() {
    ParametricFamily fam;
    fam.name = "x-only";
    fam.tau0_sq = 1.0 / 12.0;
    fam.sampler = [](double, std::size_t n, Rng& rng) {
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.next_double();
            y[i] = rng.next_double();
        }
        return Sample(std::move(x), std::move(y));
    };
    fam.score = [](double x, double) { return x - 0.5; };
    fam.y_null_cdf = [](double y) { return std::clamp(y, 0.0, 1.0); };
    return fam;
}

}  // namespace

std::vector<std::string> shipped_family_names() { return {"gauss-trend", "sign-trend", "x-only"}; }

ParametricFamily family_by_name(const std::string& name) {
    if (name == "gauss-trend")
        return trend_model("gauss-trend", [](double x) { return x; }, 1.0 / 3.0, gaussian_noise());
    if (name == "sign-trend")
        return trend_model(
            "sign-trend", [](double x) { return x < 0.5 ? -1.0 : 1.0; }, 1.0, gaussian_noise());
    if (name == "x-only") return x_only_family();
    std::string known;
    for (const auto& f : shipped_family_names()) known += (known.empty() ? "" : ", ") + f;
    throw std::invalid_argument("unknown family '" + name + "'; shipped families: " + known);
}

double score_statistic(const Sample& sample, const ParametricFamily& family) {
    double s = 0;
    for (std::size_t i = 0; i < sample.n(); ++i) s += family.score(sample.x()[i], sample.y()[i]);
    return s / (std::sqrt(family.tau0_sq) * std::sqrt(static_cast<double>(sample.n())));
}

std::string power_statistic_name(PowerStatistic stat) {
    switch (stat) {
        case PowerStatistic::score:
            return "score";
        case PowerStatistic::chatterjee:
            return "cn";
        case PowerStatistic::cmon_sqrt:
            return "cmon-sqrt";
        case PowerStatistic::spearman:
            return "spearman";
        case PowerStatistic::combined:
            return "combined";
    }
    return "unknown";
}

namespace {

double evaluate_power_statistic(PowerStatistic stat, const Sample& sample,
                                const ParametricFamily& family, RngSeed tie_seed, double lambda) {
    switch (stat) {
        case PowerStatistic::score:
            return score_statistic(sample, family);
        case PowerStatistic::chatterjee:
            return chatterjee_cn(sample, tie_seed);
        case PowerStatistic::cmon_sqrt:
            return std::sqrt(cmon_hat(sample, tie_seed));
        case PowerStatistic::spearman:
            return spearman_rho(sample);
        case PowerStatistic::combined:
            return combined_coefficient(chatterjee_cn(sample, tie_seed),
                                        cmon_hat(sample, tie_seed), lambda);
    }
    throw std::logic_error("unreachable");
}

struct CorrelationAccumulator {
    std::vector<double> a, b;

    struct Summary {
        double rho;
        double se_jack;
    };

    Summary correlate() const {
        const std::size_t r = a.size();
        double ma = mean_of(a), mb = mean_of(b);
        double sab = 0, saa = 0, sbb = 0;
        for (std::size_t i = 0; i < r; ++i) {
            sab += (a[i] - ma) * (b[i] - mb);
            saa += (a[i] - ma) * (a[i] - ma);
            sbb += (b[i] - mb) * (b[i] - mb);
        }
        if (saa == 0 || sbb == 0)
            throw std::invalid_argument("degenerate statistic variance in efficiency estimate");
        double rho = sab / std::sqrt(saa * sbb);

        // Leave-one-out correlations from the raw sums.
        double sa = 0, sb = 0, sa2 = 0, sb2 = 0, sab_raw = 0;
        for (std::size_t i = 0; i < r; ++i) {
            sa += a[i];
            sb += b[i];
            sa2 += a[i] * a[i];
            sb2 += b[i] * b[i];
            sab_raw += a[i] * b[i];
        }
        std::vector<double> loo(r);
        double dr = static_cast<double>(r) - 1.0;
        for (std::size_t i = 0; i < r; ++i) {
            double ta = sa - a[i], tb = sb - b[i];
            double taa = sa2 - a[i] * a[i], tbb = sb2 - b[i] * b[i];
            double tab = sab_raw - a[i] * b[i];
            double num = tab - ta * tb / dr;
            double den = std::sqrt((taa - ta * ta / dr) * (tbb - tb * tb / dr));
            loo[i] = den > 0 ? num / den : rho;
        }
        double mloo = mean_of(loo);
        double ss = 0;
        for (double v : loo) ss += (v - mloo) * (v - mloo);
        double se = std::sqrt(dr / static_cast<double>(r) * ss);
        return {rho, se};
    }
};

}  // namespace

EfficiencyEstimate pitman_efficiency_mc(PowerStatistic statistic, const ParametricFamily& family,
                                        std::size_t n, std::size_t reps, RngSeed seed,
                                        double lambda) {
    if (reps < 1000) throw std::invalid_argument("pitman_efficiency_mc: reps >= 1000 required");
    if (statistic == PowerStatistic::score) {
        // Self-correlation of L_n: exactly 1 with zero spread.
        return {1.0, 1.0, 0.0, n, reps};
    }
    CorrelationAccumulator acc;
    acc.a.reserve(reps);
    acc.b.reserve(reps);
    double sqrt_n = std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(seed.substream(2 * r));
        Sample sample = family.sampler(0.0, n, rng);
        acc.a.push_back(sqrt_n * evaluate_power_statistic(statistic, sample, family,
                                                          seed.substream(2 * r + 1), lambda));
        acc.b.push_back(score_statistic(sample, family));
    }
    auto [rho, se] = acc.correlate();
    return {rho, rho * rho, se, n, reps};
}

CancellationEstimate cancellation_check(const ParametricFamily& family, std::size_t n,
                                        std::size_t reps, RngSeed seed) {
    if (n < 2) throw std::invalid_argument("cancellation_check: n >= 2 required");
    if (reps < 1000) throw std::invalid_argument("cancellation_check: reps >= 1000 required");
    std::vector<double> abs_diff(reps), v_product(reps), score_sum(reps);
    std::vector<std::size_t> order(n);
    std::vector<double> v(n);
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(seed.substream(r));
        Sample sample = family.sampler(0.0, n, rng);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
            if (sample.x()[p] != sample.x()[q]) return sample.x()[p] < sample.x()[q];
            return p < q;
        });
        for (std::size_t i = 0; i < n; ++i) v[i] = family.y_null_cdf(sample.y()[order[i]]);
        double a = 0, b = 0, c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            a += std::abs(v[i] - v[(i + 1) % n]);  // wrap-around (n+1) := (1)
            b += v[i] * (1.0 - v[i]);
            c += family.score(sample.x()[i], sample.y()[i]);
        }
        abs_diff[r] = a;
        v_product[r] = b;
        score_sum[r] = c;
    }

    auto covariance_with_se = [&](const std::vector<double>& u, const std::vector<double>& w) {
        double mu = mean_of(u), mw = mean_of(w);
        std::vector<double> products(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) products[i] = (u[i] - mu) * (w[i] - mw);
        double est = mean_of(products);
        double sd = std::sqrt(variance_of(products));
        return std::pair{est, sd / std::sqrt(static_cast<double>(u.size()))};
    };

    CancellationEstimate out;
    out.n = n;
    out.reps = reps;
    std::vector<double> d(reps);
    for (std::size_t r = 0; r < reps; ++r) d[r] = abs_diff[r] + 2.0 * v_product[r];
    std::tie(out.combined, out.combined_se) = covariance_with_se(d, score_sum);
    std::tie(out.cov_abs_diff, out.se_abs_diff) = covariance_with_se(abs_diff, score_sum);
    std::tie(out.cov_v_product, out.se_v_product) = covariance_with_se(v_product, score_sum);
    return out;
}

SquareGrid SquareGrid::from_function(std::size_t m, const std::function<double(double, double)>& f) {
    SquareGrid g;
    g.m = m;
    g.values.resize(m * m);
    double h = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        double u = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j < m; ++j) {
            double vmid = (static_cast<double>(j) + 0.5) * h;
            g.values[i * m + j] = f(u, vmid);
        }
    }
    return g;
}

double SquareGrid::riemann_mean() const {
    double s = 0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

SquareGrid conditional_projection(const SquareGrid& score) {
    const std::size_t m = score.m;
    if (m == 0 || score.values.size() != m * m)
        throw std::invalid_argument("conditional_projection: grid must be square");
    std::vector<double> row_mean(m, 0.0), col_mean(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) row_mean[i] += score.at(i, j);
    for (auto& v : row_mean) v /= static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) col_mean[j] += score.at(i, j);
    for (auto& v : col_mean) v /= static_cast<double>(m);
    double grand = score.riemann_mean();

    SquareGrid out;
    out.m = m;
    out.values.resize(m * m);
    // Double centering: the conditional means are subtracted as centered
    // tangent-space projections, which restores the grand mean once.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out.values[i * m + j] = score.at(i, j) - row_mean[i] - col_mean[j] + grand;
    return out;
}

double efficiency_combined(double e_cn, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("efficiency_combined: lambda must be positive");
    double r = (1.0 - lambda) / lambda;
    return e_cn / (1.0 + (15.0 / 8.0) * r * r);
}

}  // namespace shapecorr
