#include "shapecorr/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace shapecorr {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    if (images_.empty()) throw std::invalid_argument("permutation: n must be positive");
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t v : images_) {
        if (v < 1 || v > images_.size() || seen[v - 1])
            throw std::invalid_argument("permutation: images must be a bijection of 1..n");
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), std::size_t{1});
    return Permutation(std::move(img));
}

std::size_t CycleDecomposition::n() const {
    std::size_t total = 0;
    for (const auto& c : cycles) total += c.size();
    return total;
}

std::vector<std::size_t> CycleDecomposition::lengths() const {
    std::vector<std::size_t> out;
    out.reserve(cycles.size());
    for (const auto& c : cycles) out.push_back(c.size());
    return out;
}

Permutation CycleDecomposition::recompose() const {
    std::vector<std::size_t> img(n(), 0);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::size_t from = c[i];
            std::size_t to = c[(i + 1) % c.size()];
            if (from < 1 || from > img.size() || img[from - 1] != 0)
                throw std::invalid_argument("cycles do not partition 1..n");
            img[from - 1] = to;
        }
    }
    return Permutation(std::move(img));
}

CycleDecomposition cycle_decomposition(const Permutation& perm) {
    const std::size_t n = perm.n();
    std::vector<bool> visited(n, false);
    CycleDecomposition out;
    for (std::size_t start = 1; start <= n; ++start) {
        if (visited[start - 1]) continue;
        std::vector<std::size_t> cycle;
        std::size_t cur = start;
        do {
            visited[cur - 1] = true;
            cycle.push_back(cur);
            cur = perm(cur);
        } while (cur != start);
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

Permutation random_permutation(std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("random_permutation: n must be positive");
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), std::size_t{1});
    rng.shuffle(std::span<std::size_t>(img));
    return Permutation(std::move(img));
}

Permutation random_permutation(std::size_t n, RngSeed seed) {
    Rng rng(seed);
    return random_permutation(n, rng);
}

std::size_t sample_cycle_count(std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sample_cycle_count: n must be positive");
    std::size_t count = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (rng.next_double() * static_cast<double>(k) < 1.0) ++count;
    }
    return count;
}

std::size_t sample_cycle_count(std::size_t n, RngSeed seed) {
    Rng rng(seed);
    return sample_cycle_count(n, rng);
}

}  // namespace shapecorr
