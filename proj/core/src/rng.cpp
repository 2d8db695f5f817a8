#include "shapecorr/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace shapecorr {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(RngSeed s) {
    // Mix seed and stream into one 64-bit state for SplitMix64, then
    // expand. Two SplitMix64 steps decorrelate neighbouring streams.
    std::uint64_t sm = s.seed;
    std::uint64_t a = splitmix64(sm);
    sm = a ^ (s.stream + 0x9e3779b97f4a7c15ULL);
    (void)splitmix64(sm);
    for (auto& w : state_) w = splitmix64(sm);
    // The all-zero state is invalid for xoshiro.
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) state_[0] = 1;
}

std::uint64_t Rng::next_u64() {
    std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_open() {
    for (;;) {
        double u = next_double();
        if (u > 0.0) return u;
    }
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    // Rejection sampling on the top of the range keeps the draw unbiased
    // and platform-independent.
    std::uint64_t threshold = (~bound + 1) % bound;  // (2^64 - bound) mod bound
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double Rng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    for (;;) {
        double u = 2.0 * next_double() - 1.0;
        double v = 2.0 * next_double() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            double factor = std::sqrt(-2.0 * std::log(s) / s);
            spare_normal_ = v * factor;
            has_spare_ = true;
            return u * factor;
        }
    }
}

double Rng::next_gamma(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("next_gamma: alpha must be positive");
    if (alpha < 1.0) {
        // Boost to alpha+1 and scale back by U^{1/alpha}.
        double g = next_gamma(alpha + 1.0);
        double u = next_open();
        return g * std::pow(u, 1.0 / alpha);
    }
    double d = alpha - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = next_normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = next_open();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace shapecorr
