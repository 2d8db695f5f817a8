#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace shapecorr {

/// Signed arbitrary-precision integer.
///
/// Supports exactly the operations the exact-arithmetic paths need:
/// addition, subtraction, comparison, and multiplication by a machine
/// word. There is deliberately no division; all exact comparisons in
/// this library are arranged as cross-multiplications.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);  // NOLINT(google-explicit-constructor)

    static BigInt pow_u64(std::uint64_t base, unsigned exp);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    friend BigInt operator+(BigInt lhs, const BigInt& rhs) { return lhs += rhs; }
    friend BigInt operator-(BigInt lhs, const BigInt& rhs) { return lhs -= rhs; }
    BigInt operator-() const;

    /// In-place multiply by an unsigned machine word.
    BigInt& mul_small(std::uint64_t m);
    friend BigInt mul_small(BigInt v, std::uint64_t m) { return v.mul_small(m); }

    std::strong_ordering operator<=>(const BigInt& rhs) const;
    bool operator==(const BigInt& rhs) const = default;

    /// Lossy conversion, for diagnostics only.
    double to_double() const;
    std::string to_string() const;

  private:
    // mag_ holds base-2^64 limbs, least significant first, no leading zeros.
    int sign_ = 0;
    std::vector<std::uint64_t> mag_;

    static int cmp_mag(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    static void add_mag(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
    void trim();
};

/// Fraction over 64-bit integers with cross-multiplied comparisons in
/// 128-bit arithmetic. Not normalized; callers keep magnitudes small
/// enough that num*den' products fit in __int128 (all uses in this
/// library stay far below that bound).
struct Frac64 {
    long long num = 0;
    long long den = 1;  // > 0

    friend bool operator==(const Frac64& a, const Frac64& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<(const Frac64& a, const Frac64& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Frac64& a, const Frac64& b) { return a < b || a == b; }
    friend bool operator>(const Frac64& a, const Frac64& b) { return b < a; }
    friend bool operator>=(const Frac64& a, const Frac64& b) { return b <= a; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    Frac64 reduced() const;
};

}  // namespace shapecorr
