#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shapecorr/bigint.hpp"
#include "shapecorr/permutation.hpp"
#include "shapecorr/rng.hpp"

namespace shapecorr {

/// The centered and scaled rank grid x_i = (i/n - mu_n)/sigma_n with
/// mu_n = (1 + 1/n)/2 and sigma_n^2 = (1 - 1/n^2)/12, so that
/// sum x_i = 0 and (1/n) sum x_i^2 = 1.
struct StandardizedGrid {
    std::size_t n = 0;
    double mu = 0;
    double sigma2 = 0;
    double sigma = 0;
    std::vector<double> x;
};

StandardizedGrid standardized_grid(std::size_t n);  // n >= 2

/// Exact representation of a perturbed value set whose subset sums are
/// pairwise distinct, which pins down the convex-minorant knots of every
/// cumulative-sum path.
///
/// The base values are the integers v_i = 2i - (n+1), a positive
/// rescaling of the standardized grid (rescaling does not move minorant
/// knots). Each is perturbed by delta_i = delta0 * 3^{-i} with
/// delta0 = 2^{-20}: base-3 digit uniqueness makes all subset sums of
/// the perturbations distinct, and the perturbations total less than
/// delta0, far below the unit gaps of the integer part. Values are
/// stored as integer numerators over the common denominator 2^20 * 3^n.
struct PerturbedValues {
    std::size_t n = 0;
    std::vector<BigInt> numerators;

    static PerturbedValues for_grid(std::size_t n);
    static constexpr double delta0() { return 0x1.0p-20; }
};

/// S(0) = 0, S(i) = sum_{j<=i} values[perm(j)-1].
std::vector<double> cumsum_process(const Permutation& perm, std::span<const double> values);

/// The knot-to-cycle bijection on permutations: compute the greatest
/// convex minorant of the cumulative-sum path of the perturbed values in
/// exact arithmetic, then read each inter-knot segment
/// (perm(i_{k-1}+1), ..., perm(i_k)) as one cycle of the output.
Permutation bohnenblust_spitzer(const Permutation& perm, const PerturbedValues& values);

/// Cycle form of the Chatterjee statistic:
/// 1 - 3/(n^2-1) * sum over cycles of sum of |i - j| along consecutive
/// cycle positions, wrapping around.
double f1(const Permutation& perm);

/// Sum over cycles of ((1/sqrt|C|) sum_{i in C} x_i)^2.
double f2(const Permutation& perm, const StandardizedGrid& grid);

/// Sum of squares of the isotonic regression of (x_{perm(1)}, ...,
/// x_{perm(n)}). Equals f2 of the bijection image up to the perturbation
/// (exactly, whenever the unperturbed path has no minorant ties).
double isotonic_sum_sq(const Permutation& perm, const StandardizedGrid& grid);

/// Direct consecutive-difference statistic of a permutation, the exact
/// law of the Chatterjee coefficient for continuous independent data.
double chatterjee_of_permutation(const Permutation& perm);

struct BijectionReport {
    std::size_t n = 0;
    bool bijective = false;
    bool degenerate = false;                           // exact slope tie encountered
    std::vector<std::size_t> cycle_count_histogram;    // [k-1] = #outputs with k cycles
    std::vector<unsigned long long> stirling_first;    // c(n, k), k = 1..n
    bool cycle_counts_match_stirling = false;
};

/// Exhaustive exact-arithmetic check over all n! permutations; n <= 7.
BijectionReport verify_bijection(std::size_t n);

/// Unsigned Stirling numbers of the first kind c(n,k), k = 1..n.
std::vector<unsigned long long> stirling_first_kind(std::size_t n);

/// Expected number of cycles of each length 1..n of a uniform random
/// permutation, by exhaustive enumeration in exact arithmetic; n <= 8.
/// Equals (1/1, 1/2, ..., 1/n).
std::vector<Frac64> expected_cycle_counts(std::size_t n);

/// Per-replicate draws of the pair (sqrt(n) * consecutive-difference
/// statistic, isotonic sum of squares) of a uniform permutation, the
/// joint null law of (sqrt(n) Cn, n Cmon) for continuous data.
struct NullPairDraws {
    std::vector<double> sqrt_n_cn;
    std::vector<double> isotonic_ss;
};

NullPairDraws null_pair_simulation(std::size_t n, std::size_t reps, RngSeed seed);

}  // namespace shapecorr
