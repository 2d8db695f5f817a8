#include <doctest.h>

#include <stdexcept>

#include <chrono>
#include <cmath>
#include <vector>

#include "shapecorr/isotonic.hpp"
#include "shapecorr/rng.hpp"

using namespace shapecorr;

TEST_CASE("pava basic examples") {
    auto monotone = pava(std::vector<double>{1, 2, 3});
    CHECK(monotone.fitted == std::vector<double>{1, 2, 3});
    CHECK(monotone.blocks.size() == 3);

    auto pooled = pava(std::vector<double>{3, 1, 2});
    CHECK(pooled.fitted == std::vector<double>{2, 2, 2});
    CHECK(pooled.blocks.size() == 1);
    CHECK(pooled.blocks[0].level == 2.0);

    auto weighted = pava(std::vector<double>{2, 1}, std::vector<double>{1, 3});
    CHECK(weighted.fitted[0] == doctest::Approx(1.25));
    CHECK(weighted.fitted[1] == doctest::Approx(1.25));

    CHECK_THROWS_AS(pava(std::span<const double>{}), std::invalid_argument);
    CHECK_THROWS_AS(pava(std::vector<double>{1.0}, std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("fit structure invariants on random inputs") {
    Rng rng({31, 0});
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next_below(60);
        std::vector<double> v(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = rng.next_double() * 4 - 2;
            w[i] = 0.25 + rng.next_double();
        }
        IsotonicFit fit = pava(v, w);
        for (std::size_t i = 1; i < n; ++i) CHECK(fit.fitted[i] >= fit.fitted[i - 1]);
        for (std::size_t b = 1; b < fit.blocks.size(); ++b)
            CHECK(fit.blocks[b].level > fit.blocks[b - 1].level);
        // Block level is the weighted mean of its inputs.
        for (const auto& block : fit.blocks) {
            double ws = 0, wv = 0;
            for (std::size_t i = block.start; i < block.end; ++i) {
                ws += w[i];
                wv += w[i] * v[i];
            }
            CHECK(block.level == doctest::Approx(wv / ws).epsilon(1e-12));
        }
    }
}

namespace {

// Brute-force projection oracle: every nondecreasing sequence over the
// grid {-1, -0.95, ..., 1} of step 0.05.
double best_monotone_sse(const std::vector<double>& v, const std::vector<double>& w) {
    const int levels = 41;
    const std::size_t n = v.size();
    auto grid = [](int g) { return -1.0 + 0.05 * g; };
    std::vector<std::vector<double>> best(n, std::vector<double>(levels, 0.0));
    for (int g = 0; g < levels; ++g) {
        double d = v[n - 1] - grid(g);
        best[n - 1][g] = w[n - 1] * d * d;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        // best over nondecreasing continuations with z_i = grid(g)
        double running = best[i + 1][levels - 1];
        std::vector<double> suffix_min(levels);
        for (int g = levels - 1; g >= 0; --g) {
            running = std::min(running, best[i + 1][g]);
            suffix_min[g] = running;
        }
        for (int g = 0; g < levels; ++g) {
            double d = v[i] - grid(g);
            best[i][g] = w[i] * d * d + suffix_min[g];
        }
    }
    double out = best[0][0];
    for (int g = 1; g < levels; ++g) out = std::min(out, best[0][g]);
    return out;
}

}  // namespace

TEST_CASE("pava attains the brute-force projection optimum") {
    Rng rng({37, 0});
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng.next_below(6);
        std::vector<double> v(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = 2.0 * rng.next_double() - 1.0;
            w[i] = 0.5 + rng.next_double();
        }
        IsotonicFit fit = pava(v, w);
        double oracle = best_monotone_sse(v, w);
        // The grid oracle is quantized to step 0.05, so it can only be
        // worse; the true minimizer must beat every grid sequence.
        CHECK(fit.sse <= oracle + 1e-9);
    }
}

TEST_CASE("cone projection identities and contraction") {
    Rng rng({41, 0});
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.next_below(100);
        std::vector<double> v(n), v2(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = 2.0 * rng.next_double() - 1.0;
            v2[i] = 2.0 * rng.next_double() - 1.0;
            w[i] = 0.25 + rng.next_double();
        }
        IsotonicFit fit = pava(v, w);
        double cross = 0, sq = 0, mean_v = 0, mean_fit = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cross += w[i] * v[i] * fit.fitted[i];
            sq += w[i] * fit.fitted[i] * fit.fitted[i];
            mean_v += w[i] * v[i];
            mean_fit += w[i] * fit.fitted[i];
        }
        CHECK(cross == doctest::Approx(sq).epsilon(1e-9));
        CHECK(mean_fit == doctest::Approx(mean_v).epsilon(1e-12));

        // 1-Lipschitz in the weighted norm.
        IsotonicFit fit2 = pava(v2, w);
        double dist_fit = 0, dist_in = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dist_fit += w[i] * (fit.fitted[i] - fit2.fitted[i]) * (fit.fitted[i] - fit2.fitted[i]);
            dist_in += w[i] * (v[i] - v2[i]) * (v[i] - v2[i]);
        }
        CHECK(dist_fit <= dist_in + 1e-12);
    }
}

TEST_CASE("isotonic_with_groups collapses and expands") {
    std::vector<double> y{1, 3, 2};
    std::vector<std::size_t> groups{1, 2};
    IsotonicFit fit = isotonic_with_groups(y, groups);
    CHECK(fit.fitted[0] == doctest::Approx(1.0));
    CHECK(fit.fitted[1] == doctest::Approx(2.5));
    CHECK(fit.fitted[2] == doctest::Approx(2.5));

    std::vector<double> inc{1, 2, 3};
    std::vector<std::size_t> singles{1, 1, 1};
    CHECK(isotonic_with_groups(inc, singles).fitted == inc);

    std::vector<double> forced{5, 1};
    std::vector<std::size_t> one{2};
    auto constant = isotonic_with_groups(forced, one);
    CHECK(constant.fitted == std::vector<double>{3, 3});

    CHECK_THROWS_AS(isotonic_with_groups(y, std::vector<std::size_t>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(isotonic_with_groups(y, std::vector<std::size_t>{1, 0, 2}), std::invalid_argument);
}

TEST_CASE("grouped fit equals brute-force constrained least squares") {
    // Constrained oracle: collapse to group means by hand and pool.
    std::vector<double> y{0.9, 0.1, 0.4, 0.4, 0.8};
    std::vector<std::size_t> groups{2, 1, 2};
    IsotonicFit fit = isotonic_with_groups(y, groups);
    // group means: 0.5, 0.4, 0.6 with weights 2, 1, 2 -> pool first two
    // to (2*0.5 + 0.4)/3 = 0.4666..., then 0.6 stands alone.
    CHECK(fit.fitted[0] == doctest::Approx(1.4 / 3));
    CHECK(fit.fitted[1] == doctest::Approx(1.4 / 3));
    CHECK(fit.fitted[2] == doctest::Approx(1.4 / 3));
    CHECK(fit.fitted[3] == doctest::Approx(0.6));
    CHECK(fit.fitted[4] == doctest::Approx(0.6));
}

TEST_CASE("pava_exact pools with exact fractions") {
    std::vector<long long> vals{3, 1, 2};
    auto fit = pava_exact(vals);
    for (const auto& f : fit) CHECK(f == Frac64{2, 1});
    std::vector<long long> inc{1, 2, 3};
    auto idfit = pava_exact(inc);
    CHECK(idfit[0] == Frac64{1, 1});
    CHECK(idfit[1] == Frac64{2, 1});
    CHECK(idfit[2] == Frac64{3, 1});
}

TEST_CASE("pava is linear time: doubling n at most ~2.5x wall time") {
    auto time_pava = [](std::size_t n) {
        Rng rng({77, n});
        std::vector<double> v(n);
        for (auto& x : v) x = rng.next_double();
        double best = 1e300;
        for (int rep = 0; rep < 5; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            IsotonicFit fit = pava(v);
            auto t1 = std::chrono::steady_clock::now();
            volatile double sink = fit.fitted[0];
            (void)sink;
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        return best;
    };
    double t1 = time_pava(100000);
    double t2 = time_pava(200000);
    CHECK(t2 / t1 < 2.5);
}
