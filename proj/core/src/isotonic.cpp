#include "shapecorr/isotonic.hpp"

#include <cmath>
#include <stdexcept>

namespace shapecorr {

IsotonicFit pava(std::span<const double> values, std::span<const double> weights) {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("pava: empty sequence");
    if (!weights.empty() && weights.size() != n)
        throw std::invalid_argument("pava: weight length mismatch");
    for (double w : weights)
        if (!(w > 0) || !std::isfinite(w)) throw std::invalid_argument("pava: weights must be positive and finite");

    struct Pool {
        double wsum, wvsum;
        std::size_t start;
    };
    std::vector<Pool> stack;
    stack.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = weights.empty() ? 1.0 : weights[i];
        Pool cur{w, w * values[i], i};
        // Merge while the previous level >= the new level.
        while (!stack.empty() &&
               stack.back().wvsum / stack.back().wsum >= cur.wvsum / cur.wsum) {
            cur.wsum += stack.back().wsum;
            cur.wvsum += stack.back().wvsum;
            cur.start = stack.back().start;
            stack.pop_back();
        }
        stack.push_back(cur);
    }

    IsotonicFit fit;
    fit.fitted.resize(n);
    fit.blocks.reserve(stack.size());
    std::size_t end = n;
    for (std::size_t b = stack.size(); b-- > 0;) {
        double level = stack[b].wvsum / stack[b].wsum;
        fit.blocks.push_back({stack[b].start, end, level, stack[b].wsum});
        for (std::size_t i = stack[b].start; i < end; ++i) fit.fitted[i] = level;
        end = stack[b].start;
    }
    std::reverse(fit.blocks.begin(), fit.blocks.end());
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = weights.empty() ? 1.0 : weights[i];
        double d = values[i] - fit.fitted[i];
        sse += w * d * d;
    }
    fit.sse = sse;
    return fit;
}

IsotonicFit pava(const WeightedSequence& seq) { return pava(seq.values, seq.weights); }

IsotonicFit isotonic_with_groups(std::span<const double> y, std::span<const std::size_t> group_sizes) {
    const std::size_t n = y.size();
    std::size_t total = 0;
    for (std::size_t g : group_sizes) {
        if (g == 0) throw std::invalid_argument("isotonic_with_groups: empty group");
        total += g;
    }
    if (total != n) throw std::invalid_argument("isotonic_with_groups: groups must partition the sequence");

    std::vector<double> means, weights;
    means.reserve(group_sizes.size());
    weights.reserve(group_sizes.size());
    std::size_t pos = 0;
    for (std::size_t g : group_sizes) {
        double s = 0;
        for (std::size_t i = 0; i < g; ++i) s += y[pos + i];
        means.push_back(s / static_cast<double>(g));
        weights.push_back(static_cast<double>(g));
        pos += g;
    }
    IsotonicFit collapsed = pava(means, weights);

    IsotonicFit fit;
    fit.fitted.resize(n);
    pos = 0;
    for (const auto& block : collapsed.blocks) {
        std::size_t expanded_start = pos;
        double block_weight = 0;
        for (std::size_t g = block.start; g < block.end; ++g) {
            for (std::size_t i = 0; i < group_sizes[g]; ++i) fit.fitted[pos++] = block.level;
            block_weight += static_cast<double>(group_sizes[g]);
        }
        fit.blocks.push_back({expanded_start, pos, block.level, block_weight});
    }
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = y[i] - fit.fitted[i];
        sse += d * d;
    }
    fit.sse = sse;
    return fit;
}

std::vector<Frac64> pava_exact(std::span<const long long> numerators, long long den) {
    const std::size_t n = numerators.size();
    if (n == 0) throw std::invalid_argument("pava_exact: empty sequence");
    if (den <= 0) throw std::invalid_argument("pava_exact: denominator must be positive");

    struct Pool {
        long long sum;      // numerator sum over the block
        long long count;    // block size
        std::size_t start;
    };
    std::vector<Pool> stack;
    stack.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Pool cur{numerators[i], 1, i};
        while (!stack.empty() &&
               static_cast<__int128>(stack.back().sum) * cur.count >=
                   static_cast<__int128>(cur.sum) * stack.back().count) {
            cur.sum += stack.back().sum;
            cur.count += stack.back().count;
            cur.start = stack.back().start;
            stack.pop_back();
        }
        stack.push_back(cur);
    }
    std::vector<Frac64> fitted(n);
    std::size_t end = n;
    for (std::size_t b = stack.size(); b-- > 0;) {
        Frac64 level{stack[b].sum, stack[b].count * den};
        for (std::size_t i = stack[b].start; i < end; ++i) fitted[i] = level;
        end = stack[b].start;
    }
    return fitted;
}

}  // namespace shapecorr
