#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "shapecorr/correlations.hpp"
#include "shapecorr/rng.hpp"
#include "shapecorr/sample.hpp"

using namespace shapecorr;

namespace {
const RngSeed kSeed{2024, 0};
}

TEST_CASE("chatterjee on forced configurations") {
    // Strictly increasing: every rank difference is 1.
    Sample inc({1, 2, 3, 4, 5}, {10, 20, 30, 40, 50});
    CHECK(chatterjee_cn(inc, kSeed) == doctest::Approx(0.5));

    // Rank sequence (1, 3, 2) along x.
    Sample mid({1, 2, 3}, {10, 30, 20});
    CHECK(chatterjee_cn(mid, kSeed) == doctest::Approx(-1.0 / 8.0));

    Sample two({1, 2}, {4, 9});
    CHECK(chatterjee_cn(two, kSeed) == doctest::Approx(0.0));

    Sample constant({1, 2, 3}, {5, 5, 5});
    CHECK_THROWS_WITH_AS(chatterjee_cn(constant, kSeed), "degenerate Y", std::invalid_argument);
    CHECK_THROWS_AS(chatterjee_cn(Sample({1}, {2}), kSeed), std::invalid_argument);
}

TEST_CASE("cmon_hat on forced configurations") {
    Sample inc({1, 2, 3, 4}, {1, 4, 9, 16});
    CHECK(cmon_hat(inc, kSeed) == 1.0);  // identity fit, exactly

    Sample dec({1, 2, 3, 4}, {16, 9, 4, 1});
    CHECK(cmon_hat(dec, kSeed) == 0.0);  // constant fit, exactly

    // Ranks along x: (1/3, 1, 2/3) -> fit (1/3, 5/6, 5/6) -> 3/4.
    Sample mid({1, 2, 3}, {10, 30, 20});
    CHECK(cmon_hat(mid, kSeed) == doctest::Approx(0.75).epsilon(1e-12));

    Sample constant({1, 2, 3}, {5, 5, 5});
    CHECK_THROWS_WITH_AS(cmon_hat(constant, kSeed), "degenerate Y", std::invalid_argument);
}

TEST_CASE("cmon_hat respects x-tie groups") {
    // Both orders within the tied group give the same grouped fit.
    Sample tied({1, 1, 2}, {0.3, 0.9, 0.6});
    double v1 = cmon_hat(tied, {1, 0});
    double v2 = cmon_hat(tied, {99, 5});
    CHECK(v1 == v2);
}

TEST_CASE("spearman examples and the tie-free closed form") {
    Sample inc({1, 2, 3, 4}, {2, 3, 5, 7});
    CHECK(spearman_rho(inc) == doctest::Approx(1.0));
    Sample dec({1, 2, 3, 4}, {7, 5, 3, 2});
    CHECK(spearman_rho(dec) == doctest::Approx(-1.0));

    // Rank pairs (1,2), (2,1), (3,3).
    Sample mid({10, 20, 30}, {5, 1, 9});
    CHECK(spearman_rho(mid) == doctest::Approx(0.5));

    CHECK_THROWS_AS(spearman_rho(Sample({1, 1}, {2, 3})), std::invalid_argument);

    // Tie-free data: agreement with the rank-regression form
    // sum (i - (n+1)/2) S_i / sum (i - (n+1)/2)^2 with integer ranks.
    Rng rng({61, 0});
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 3 + rng.next_below(40);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.next_double();
            y[i] = rng.next_double();
        }
        Sample s(x, y);
        // Build S_i = rank of Y paired with the i-th smallest X.
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
        std::vector<double> yr(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t rank = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (y[j] <= y[order[i]]) ++rank;
            yr[i] = static_cast<double>(rank - 1);
        }
        double num = 0, den = 0, center = (static_cast<double>(n) + 1) / 2;
        for (std::size_t i = 0; i < n; ++i) {
            double d = static_cast<double>(i + 1) - center;
            num += d * yr[i];
            den += d * d;
        }
        CHECK(spearman_rho(s) == doctest::Approx(num / den).epsilon(1e-12));
    }
}

TEST_CASE("combined coefficient") {
    CHECK(combined_coefficient(1, 1, 0.5) == doctest::Approx(1.0));
    CHECK(combined_coefficient(0, 0.25, 0.5) == doctest::Approx(0.25));
    CHECK(combined_coefficient(0.2, 0.09, 1.0) == doctest::Approx(0.2));
    CHECK_THROWS_AS(combined_coefficient(0.5, 0.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(combined_coefficient(0.5, -0.1, 0.5), std::invalid_argument);
}

TEST_CASE("rank invariance: strictly increasing transforms leave everything unchanged") {
    Rng rng({67, 0});
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 5 + rng.next_below(60);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Quantize to force some ties in both coordinates.
            x[i] = std::floor(rng.next_double() * 12) / 3.0;
            y[i] = std::floor(rng.next_double() * 15) / 5.0;
        }
        Sample raw(x, y);
        std::vector<double> tx(n), ty(n);
        for (std::size_t i = 0; i < n; ++i) {
            tx[i] = std::exp(x[i]);
            ty[i] = y[i] * y[i] * y[i] + 5.0 * y[i];
        }
        Sample transformed(tx, ty);
        RngSeed seed{trial + 1000u, 3};
        CHECK(chatterjee_cn(raw, seed) == chatterjee_cn(transformed, seed));
        CHECK(cmon_hat(raw, seed) == cmon_hat(transformed, seed));
        CHECK(spearman_rho(raw) == spearman_rho(transformed));
    }
}

TEST_CASE("cmon_hat always lies in [0,1]; equals 1 iff rank sequence monotone under constraints") {
    Rng rng({71, 0});
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng.next_below(40);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::floor(rng.next_double() * 8);
            y[i] = std::floor(rng.next_double() * 8);
        }
        bool y_constant = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
        if (y_constant) continue;
        Sample s(x, y);
        double c = cmon_hat(s, {trial + 1u, 0});
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(chatterjee_cn(s, {trial + 1u, 0}) <= 1.0);
        bool x_constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
        if (!x_constant) {
            double rho = spearman_rho(s);
            CHECK(rho >= -1.0 - 1e-15);
            CHECK(rho <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("fitted ranks inside cmon average to the mean rank") {
    // Identity of the pooled fit, visible through the report invariants:
    // recompute cmon from a report and check consistency.
    Rng rng({73, 0});
    std::vector<double> x(50), y(50);
    for (std::size_t i = 0; i < 50; ++i) {
        x[i] = rng.next_double();
        y[i] = rng.next_double();
    }
    Sample s(x, y);
    CorrelationReport rep = correlation_report(s, kSeed);
    CHECK(rep.cmon_sqrt == std::sqrt(rep.cmon));
    CHECK(rep.combined.at(0.5) ==
          doctest::Approx(0.5 * rep.chatterjee + 0.5 * std::sqrt(rep.cmon)).epsilon(1e-15));
    CHECK(rep.n == 50);
}

TEST_CASE("report is reproducible for a fixed seed") {
    Rng rng({79, 0});
    std::vector<double> x(30), y(30);
    for (std::size_t i = 0; i < 30; ++i) {
        x[i] = std::floor(rng.next_double() * 6);
        y[i] = rng.next_double();
    }
    Sample s(x, y);
    CorrelationReport a = correlation_report(s, {5, 5});
    CorrelationReport b = correlation_report(s, {5, 5});
    CHECK(a.chatterjee == b.chatterjee);
    CHECK(a.cmon == b.cmon);
    CHECK(a.spearman == b.spearman);
}
