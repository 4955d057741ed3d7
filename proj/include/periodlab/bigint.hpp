#ifndef PERIODLAB_BIGINT_HPP
#define PERIODLAB_BIGINT_HPP

// Arbitrary-precision signed integers, sign-magnitude over 64-bit limbs.
//
// This is deliberately a small, exact integer type: the Fourier coefficients
// of the forms we build overflow 64-bit words around n ~ 10^3 for large
// weights, and every coefficient-level invariant (Deligne bound, Hecke
// recursion, multiplicativity) is checked as an exact integer inequality.
// Heavy convolution loops do not run through BigInt: the series layer
// switches to a checked __int128 path whenever magnitudes permit.

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace periodlab {

class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    static BigInt from_string(std::string_view s);  // decimal, optional leading '-'
    static BigInt from_int128(__int128 v);
    static BigInt from_double(double v);  // v must be integral and finite
    static BigInt pow(std::uint64_t base, unsigned exp);

    std::string to_string() const;
    // Nearest double of the top 128 bits of the magnitude; exact whenever the
    // value fits a double exactly.
    double to_double() const;

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool fits_int64() const;
    std::int64_t as_int64() const;  // caller checks fits_int64()

    BigInt operator-() const;
    BigInt& negate();

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // *this += a * b without materializing the product when it fits stack
    // buffers (the accumulation pattern of truncated-series convolution).
    void fma(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

    // -1 / 0 / +1 comparison of |a| vs |b|
    static int cmp_abs(const BigInt& a, const BigInt& b);

    std::size_t limb_count() const { return mag_.size(); }

private:
    int sign_ = 0;                    // -1, 0, +1
    std::vector<std::uint64_t> mag_;  // little-endian, no trailing zero limbs

    void trim();
    static std::vector<std::uint64_t> add_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint64_t> sub_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b);
    static std::vector<std::uint64_t> mul_mag(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b);
    static int cmp_mag(const std::vector<std::uint64_t>& a,
                       const std::vector<std::uint64_t>& b);
};

}  // namespace periodlab

#endif
