#include "shapecorr/bigint.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shapecorr {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    // Avoid UB on LLONG_MIN.
    std::uint64_t mag = v > 0 ? static_cast<std::uint64_t>(v)
                              : ~static_cast<std::uint64_t>(v) + 1u;
    mag_.push_back(mag);
}

BigInt BigInt::pow_u64(std::uint64_t base, unsigned exp) {
    BigInt r{1};
    for (unsigned i = 0; i < exp; ++i) r.mul_small(base);
    return r;
}

int BigInt::cmp_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

void BigInt::add_mag(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned __int128 s = carry + a[i] + (i < b.size() ? b[i] : 0);
        a[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    if (carry != 0) a.push_back(static_cast<std::uint64_t>(carry));
}

namespace {
// Subtraction with borrow; requires |a| >= |b|.
void sub_mag_128(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    unsigned __int128 borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned __int128 bi = (i < b.size() ? b[i] : 0);
        unsigned __int128 ai = a[i];
        unsigned __int128 need = bi + borrow;
        if (ai >= need) {
            a[i] = static_cast<std::uint64_t>(ai - need);
            borrow = 0;
        } else {
            a[i] = static_cast<std::uint64_t>((ai + (static_cast<unsigned __int128>(1) << 64)) - need);
            borrow = 1;
        }
    }
}
}  // namespace

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) {
        *this = rhs;
        return *this;
    }
    if (sign_ == rhs.sign_) {
        add_mag(mag_, rhs.mag_);
        return *this;
    }
    int c = cmp_mag(mag_, rhs.mag_);
    if (c == 0) {
        sign_ = 0;
        mag_.clear();
    } else if (c > 0) {
        sub_mag_128(mag_, rhs.mag_);
        trim();
    } else {
        std::vector<std::uint64_t> tmp = rhs.mag_;
        sub_mag_128(tmp, mag_);
        mag_ = std::move(tmp);
        sign_ = rhs.sign_;
        trim();
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt& BigInt::mul_small(std::uint64_t m) {
    if (sign_ == 0) return *this;
    if (m == 0) {
        sign_ = 0;
        mag_.clear();
        return *this;
    }
    unsigned __int128 carry = 0;
    for (auto& limb : mag_) {
        unsigned __int128 p = static_cast<unsigned __int128>(limb) * m + carry;
        limb = static_cast<std::uint64_t>(p);
        carry = p >> 64;
    }
    if (carry != 0) mag_.push_back(static_cast<std::uint64_t>(carry));
    return *this;
}

std::strong_ordering BigInt::operator<=>(const BigInt& rhs) const {
    if (sign_ != rhs.sign_) return sign_ <=> rhs.sign_;
    int c = cmp_mag(mag_, rhs.mag_);
    if (sign_ < 0) c = -c;
    return c <=> 0;
}

double BigInt::to_double() const {
    double v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * 18446744073709551616.0 + static_cast<double>(mag_[i]);
    return sign_ < 0 ? -v : v;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    // Repeated halving is awkward without division; a hex rendering is
    // enough for diagnostics.
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t limb = mag_[i];
        for (int nib = 0; nib < 16; ++nib) {
            s.push_back(digits[limb & 0xf]);
            limb >>= 4;
        }
    }
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    s += "x0";
    if (sign_ < 0) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

Frac64 Frac64::reduced() const {
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

}  // namespace shapecorr
