#include "periodlab/bigint.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace periodlab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    u64 mag = v < 0 ? (~static_cast<u64>(v) + 1) : static_cast<u64>(v);
    mag_.push_back(mag);
}

BigInt BigInt::from_int128(__int128 v) {
    BigInt r;
    if (v == 0) return r;
    r.sign_ = v < 0 ? -1 : 1;
    u128 mag = v < 0 ? ~static_cast<u128>(v) + 1 : static_cast<u128>(v);
    r.mag_.push_back(static_cast<u64>(mag));
    if (u64 hi = static_cast<u64>(mag >> 64)) r.mag_.push_back(hi);
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

int BigInt::cmp_abs(const BigInt& a, const BigInt& b) { return cmp_mag(a.mag_, b.mag_); }

std::vector<u64> BigInt::add_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<u64> r(hi.size() + 1, 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        u128 s = static_cast<u128>(hi[i]) + (i < lo.size() ? lo[i] : 0) + carry;
        r[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    r[hi.size()] = carry;
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<u64> BigInt::sub_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> r(a.size(), 0);
    u64 borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 bi = i < b.size() ? b[i] : 0;
        u64 t = a[i] - bi;
        u64 borrow2 = a[i] < bi;
        r[i] = t - borrow;
        borrow = borrow2 | (t < borrow);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<u64> BigInt::mul_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            u128 cur = static_cast<u128>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        r[i + b.size()] += carry;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) { *this = rhs; return *this; }
    if (sign_ == rhs.sign_) {
        mag_ = add_mag(mag_, rhs.mag_);
        return *this;
    }
    int c = cmp_mag(mag_, rhs.mag_);
    if (c == 0) { sign_ = 0; mag_.clear(); return *this; }
    if (c > 0) {
        mag_ = sub_mag(mag_, rhs.mag_);
    } else {
        mag_ = sub_mag(rhs.mag_, mag_);
        sign_ = rhs.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) {
    if (&rhs == this) { sign_ = 0; mag_.clear(); return *this; }
    BigInt neg = rhs;
    neg.negate();
    return *this += neg;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.negate();
    return r;
}

BigInt& BigInt::negate() {
    sign_ = -sign_;
    return *this;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    return r;
}

BigInt& BigInt::operator*=(const BigInt& rhs) {
    *this = *this * rhs;
    return *this;
}

void BigInt::fma(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return;
    if (a.mag_.size() == 1 && b.mag_.size() == 1) {
        u128 p = static_cast<u128>(a.mag_[0]) * b.mag_[0];
        __int128 sp = static_cast<__int128>(p);
        // |p| < 2^127 is guaranteed: both factors < 2^64 gives p < 2^128, but
        // u64*u64 fits in u128 and may exceed int128 range; route via BigInt
        // when the top bit is set.
        if (static_cast<u64>(p >> 127) == 0) {
            *this += from_int128(a.sign_ * b.sign_ > 0 ? sp : -sp);
            return;
        }
    }
    *this += a * b;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    int c = BigInt::cmp_mag(a.mag_, b.mag_) * (a.sign_ < 0 ? -1 : 1);
    return c <=> 0;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 1) return false;
    if (mag_.empty()) return true;
    if (sign_ > 0) return mag_[0] <= static_cast<u64>(INT64_MAX);
    return mag_[0] <= static_cast<u64>(INT64_MAX) + 1;
}

std::int64_t BigInt::as_int64() const {
    if (mag_.empty()) return 0;
    if (sign_ > 0) return static_cast<std::int64_t>(mag_[0]);
    return static_cast<std::int64_t>(~mag_[0] + 1);
}

double BigInt::to_double() const {
    if (sign_ == 0) return 0.0;
    // Only the top two limbs carry double precision; lower limbs shift exponent.
    std::size_t n = mag_.size();
    std::size_t drop = n > 2 ? n - 2 : 0;
    double r = 0.0;
    for (std::size_t i = n; i-- > drop;)
        r = r * 18446744073709551616.0 + static_cast<double>(mag_[i]);
    r = std::ldexp(r, static_cast<int>(64 * drop));
    return sign_ < 0 ? -r : r;
}

BigInt BigInt::from_double(double v) {
    if (!std::isfinite(v) || v != std::floor(v))
        throw std::invalid_argument("BigInt::from_double: not an integral value");
    BigInt r;
    if (v == 0.0) return r;
    int sign = v < 0 ? -1 : 1;
    double mag = std::fabs(v);
    int exp2 = 0;
    double mant = std::frexp(mag, &exp2);        // mag = mant * 2^exp2, mant in [0.5, 1)
    std::uint64_t bits = static_cast<std::uint64_t>(std::ldexp(mant, 53));  // exact: 53-bit mantissa
    int shift = exp2 - 53;
    r = BigInt(static_cast<std::int64_t>(bits));
    if (shift > 0) {
        // multiply by 2^shift in 63-bit chunks
        while (shift > 62) {
            r *= BigInt(static_cast<std::int64_t>(1) << 62);
            shift -= 62;
        }
        if (shift > 0) r *= BigInt(static_cast<std::int64_t>(1) << shift);
    } else if (shift < 0) {
        // v integral means the low bits are zero; divide by shifting the chunk down
        bits >>= -shift;
        r = BigInt(static_cast<std::int64_t>(bits));
    }
    if (sign < 0) r.negate();
    return r;
}

BigInt BigInt::pow(std::uint64_t base, unsigned exp) {
    BigInt r(1);
    BigInt b(static_cast<std::int64_t>(base));
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r;
    // consume 18 digits at a time: base 10^18 fits u64
    const u64 chunk_base = 1000000000000000000ull;
    while (i < s.size()) {
        std::size_t take = std::min<std::size_t>(18, s.size() - i);
        u64 chunk = 0;
        for (std::size_t j = 0; j < take; ++j) {
            char ch = s[i + j];
            if (ch < '0' || ch > '9') throw std::invalid_argument("BigInt: bad digit");
            chunk = chunk * 10 + static_cast<u64>(ch - '0');
        }
        u64 scale = 1;
        for (std::size_t j = 0; j < take; ++j) scale *= 10;
        r *= BigInt(static_cast<std::int64_t>(take == 18 ? chunk_base : scale));
        r += BigInt(static_cast<std::int64_t>(chunk));
        i += take;
    }
    if (neg) r.negate();
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<u64> m = mag_;
    std::string out;
    const u64 chunk_base = 1000000000000000000ull;
    while (!m.empty()) {
        // divide m by 10^18, collect remainder
        u128 rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            u128 cur = (rem << 64) | m[i];
            m[i] = static_cast<u64>(cur / chunk_base);
            rem = cur % chunk_base;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        u64 r = static_cast<u64>(rem);
        if (m.empty()) {
            out.insert(0, std::to_string(r));
        } else {
            std::string part = std::to_string(r);
            out.insert(0, std::string(18 - part.size(), '0') + part);
        }
    }
    return sign_ < 0 ? "-" + out : out;
}

}  // namespace periodlab
