#include "shapecorr/perm_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shapecorr/gcm.hpp"
#include "shapecorr/isotonic.hpp"

namespace shapecorr {

StandardizedGrid standardized_grid(std::size_t n) {
    if (n < 2) throw std::invalid_argument("standardized_grid: n >= 2 required");
    StandardizedGrid g;
    g.n = n;
    double dn = static_cast<double>(n);
    g.mu = 0.5 * (1.0 + 1.0 / dn);
    g.sigma2 = (1.0 - 1.0 / (dn * dn)) / 12.0;
    g.sigma = std::sqrt(g.sigma2);
    g.x.resize(n);
    for (std::size_t i = 1; i <= n; ++i)
        g.x[i - 1] = (static_cast<double>(i) / dn - g.mu) / g.sigma;
    return g;
}

PerturbedValues PerturbedValues::for_grid(std::size_t n) {
    if (n < 1) throw std::invalid_argument("perturbed values: n >= 1 required");
    PerturbedValues out;
    out.n = n;
    out.numerators.reserve(n);
    // Common denominator 2^20 * 3^n; numerator_i = v_i * 2^20 * 3^n + 3^{n-i}.
    std::vector<BigInt> pow3(n + 1);
    pow3[0] = BigInt{1};
    for (std::size_t k = 1; k <= n; ++k) pow3[k] = mul_small(pow3[k - 1], 3);
    for (std::size_t i = 1; i <= n; ++i) {
        long long base = 2 * static_cast<long long>(i) - static_cast<long long>(n) - 1;
        BigInt scaled = pow3[n];
        scaled.mul_small(1u << 20);
        BigInt numerator = base >= 0 ? mul_small(scaled, static_cast<std::uint64_t>(base))
                                     : -mul_small(scaled, static_cast<std::uint64_t>(-base));
        numerator += pow3[n - i];
        out.numerators.push_back(std::move(numerator));
    }
    return out;
}

std::vector<double> cumsum_process(const Permutation& perm, std::span<const double> values) {
    if (perm.n() != values.size()) throw std::invalid_argument("cumsum_process: length mismatch");
    std::vector<double> s(values.size() + 1, 0.0);
    for (std::size_t i = 1; i <= values.size(); ++i) s[i] = s[i - 1] + values[perm(i) - 1];
    return s;
}

Permutation bohnenblust_spitzer(const Permutation& perm, const PerturbedValues& values) {
    const std::size_t n = perm.n();
    if (values.n != n) throw std::invalid_argument("bohnenblust_spitzer: value set size mismatch");
    std::vector<BigInt> cumsums(n + 1);
    for (std::size_t i = 1; i <= n; ++i) cumsums[i] = cumsums[i - 1] + values.numerators[perm(i) - 1];
    // An exact slope tie would mean the perturbation failed to separate
    // two subset sums; gcm_knots_exact reports it as degenerate.
    std::vector<std::size_t> knots = gcm_knots_exact(std::span<const BigInt>(cumsums), true);

    std::vector<std::size_t> images(n, 0);
    for (std::size_t k = 1; k < knots.size(); ++k) {
        std::size_t lo = knots[k - 1] + 1, hi = knots[k];
        for (std::size_t i = lo; i < hi; ++i) images[perm(i) - 1] = perm(i + 1);
        images[perm(hi) - 1] = perm(lo);
    }
    return Permutation(std::move(images));
}

double f1(const Permutation& perm) {
    const std::size_t n = perm.n();
    if (n < 2) throw std::invalid_argument("f1: n >= 2 required");
    CycleDecomposition cycles = cycle_decomposition(perm);
    long long total = 0;
    for (const auto& c : cycles.cycles) {
        for (std::size_t t = 0; t < c.size(); ++t) {
            long long a = static_cast<long long>(c[t]);
            long long b = static_cast<long long>(c[(t + 1) % c.size()]);
            total += std::llabs(a - b);
        }
    }
    double dn = static_cast<double>(n);
    return 1.0 - 3.0 * static_cast<double>(total) / (dn * dn - 1.0);
}

double f2(const Permutation& perm, const StandardizedGrid& grid) {
    if (perm.n() != grid.n) throw std::invalid_argument("f2: grid size mismatch");
    CycleDecomposition cycles = cycle_decomposition(perm);
    double total = 0;
    for (const auto& c : cycles.cycles) {
        double s = 0;
        for (std::size_t i : c) s += grid.x[i - 1];
        total += s * s / static_cast<double>(c.size());
    }
    return total;
}

double isotonic_sum_sq(const Permutation& perm, const StandardizedGrid& grid) {
    if (perm.n() != grid.n) throw std::invalid_argument("isotonic_sum_sq: grid size mismatch");
    std::vector<double> arranged(grid.n);
    for (std::size_t i = 1; i <= grid.n; ++i) arranged[i - 1] = grid.x[perm(i) - 1];
    IsotonicFit fit = pava(arranged);
    double total = 0;
    for (double w : fit.fitted) total += w * w;
    return total;
}

double chatterjee_of_permutation(const Permutation& perm) {
    const std::size_t n = perm.n();
    if (n < 2) throw std::invalid_argument("chatterjee_of_permutation: n >= 2 required");
    long long sum_abs = 0;
    for (std::size_t i = 1; i < n; ++i) {
        long long a = static_cast<long long>(perm(i));
        long long b = static_cast<long long>(perm(i + 1));
        sum_abs += std::llabs(a - b);
    }
    double dn = static_cast<double>(n);
    return 1.0 - 3.0 * static_cast<double>(sum_abs) / (dn * dn - 1.0);
}

std::vector<unsigned long long> stirling_first_kind(std::size_t n) {
    // c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k).
    std::vector<unsigned long long> prev{1};  // c(1, 1)
    for (std::size_t m = 2; m <= n; ++m) {
        std::vector<unsigned long long> cur(m, 0);
        for (std::size_t k = 1; k <= m; ++k) {
            unsigned long long v = 0;
            if (k >= 2) v += prev[k - 2];
            if (k <= m - 1) v += (m - 1) * prev[k - 1];
            cur[k - 1] = v;
        }
        prev = std::move(cur);
    }
    return prev;
}

BijectionReport verify_bijection(std::size_t n) {
    if (n < 1 || n > 7) throw std::invalid_argument("verify_bijection: n must lie in 1..7");
    BijectionReport report;
    report.n = n;
    report.stirling_first = stirling_first_kind(n);
    report.cycle_count_histogram.assign(n, 0);

    PerturbedValues values = PerturbedValues::for_grid(n);
    std::size_t factorial = 1;
    for (std::size_t k = 2; k <= n; ++k) factorial *= k;
    std::vector<bool> seen(factorial, false);

    // Lehmer rank of a permutation, enough to index all n! outputs.
    auto lehmer_rank = [n](const std::vector<std::size_t>& img) {
        std::size_t rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t smaller = 0;
            for (std::size_t j = i + 1; j < n; ++j)
                if (img[j] < img[i]) ++smaller;
            std::size_t suffix_fact = 1;
            for (std::size_t k = 2; k <= n - 1 - i; ++k) suffix_fact *= k;
            rank += smaller * suffix_fact;
        }
        return rank;
    };

    std::vector<std::size_t> current(n);
    std::iota(current.begin(), current.end(), std::size_t{1});
    bool injective = true;
    try {
        do {
            Permutation out = bohnenblust_spitzer(Permutation(current), values);
            std::size_t rank = lehmer_rank(out.images());
            if (seen[rank]) injective = false;
            seen[rank] = true;
            std::size_t cycles = cycle_decomposition(out).cycles.size();
            ++report.cycle_count_histogram[cycles - 1];
        } while (std::next_permutation(current.begin(), current.end()));
    } catch (const std::runtime_error&) {
        report.degenerate = true;
        return report;
    }
    report.bijective = injective && std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    report.cycle_counts_match_stirling = true;
    for (std::size_t k = 1; k <= n; ++k) {
        if (report.cycle_count_histogram[k - 1] != report.stirling_first[k - 1])
            report.cycle_counts_match_stirling = false;
    }
    return report;
}

std::vector<Frac64> expected_cycle_counts(std::size_t n) {
    if (n < 1 || n > 8) throw std::invalid_argument("expected_cycle_counts: n must lie in 1..8");
    long long factorial = 1;
    for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<long long>(k);
    std::vector<long long> counts(n, 0);
    std::vector<std::size_t> current(n);
    std::iota(current.begin(), current.end(), std::size_t{1});
    do {
        CycleDecomposition cycles = cycle_decomposition(Permutation(current));
        for (const auto& c : cycles.cycles) ++counts[c.size() - 1];
    } while (std::next_permutation(current.begin(), current.end()));
    std::vector<Frac64> out(n);
    for (std::size_t len = 1; len <= n; ++len)
        out[len - 1] = Frac64{counts[len - 1], factorial}.reduced();
    return out;
}

NullPairDraws null_pair_simulation(std::size_t n, std::size_t reps, RngSeed seed) {
    if (n < 2) throw std::invalid_argument("null_pair_simulation: n >= 2 required");
    if (reps < 100) throw std::invalid_argument("null_pair_simulation: reps >= 100 required");
    StandardizedGrid grid = standardized_grid(n);
    NullPairDraws draws;
    draws.sqrt_n_cn.reserve(reps);
    draws.isotonic_ss.reserve(reps);
    double sqrt_n = std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < reps; ++r) {
        Rng rng(seed.substream(r));
        Permutation perm = random_permutation(n, rng);
        draws.sqrt_n_cn.push_back(sqrt_n * chatterjee_of_permutation(perm));
        draws.isotonic_ss.push_back(isotonic_sum_sq(perm, grid));
    }
    return draws;
}

}  // namespace shapecorr
