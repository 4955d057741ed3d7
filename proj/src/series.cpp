#include "periodlab/series.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace periodlab {

TruncatedSeries::TruncatedSeries(std::size_t truncation, std::vector<BigInt> coeffs)
    : coeffs_(std::move(coeffs)) {
    coeffs_.resize(truncation + 1);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    std::size_t n = std::min(coeffs_.size(), rhs.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
    std::size_t n = std::min(coeffs_.size(), rhs.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

namespace {

// Upper bound on max |coefficient| as a double, and whether all fit int64.
struct MagScan {
    double max_abs = 0.0;
    bool all_int64 = true;
};

MagScan scan(const TruncatedSeries& s) {
    MagScan m;
    for (std::size_t i = 0; i <= s.truncation(); ++i) {
        const BigInt& c = s[i];
        if (!c.fits_int64()) m.all_int64 = false;
        double a = std::fabs(c.to_double());
        if (a > m.max_abs) m.max_abs = a;
    }
    return m;
}

}  // namespace

bool TruncatedSeries::int128_path_applicable(const TruncatedSeries& a, const TruncatedSeries& b) {
    MagScan ma = scan(a), mb = scan(b);
    if (!ma.all_int64 || !mb.all_int64) return false;
    double len = static_cast<double>(std::min(a.truncation(), b.truncation()) + 1);
    // 2^125 headroom: |sum| <= len * max_a * max_b must stay clear of 2^127
    return ma.max_abs * mb.max_abs * len < 4.25e37;
}

TruncatedSeries TruncatedSeries::mul_int128_path(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t m = std::min(a.truncation(), b.truncation());
    std::vector<std::int64_t> av(m + 1), bv(m + 1);
    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t i = 0; i <= m; ++i) {
        av[i] = a[i].fits_int64() ? a[i].as_int64() : throw std::overflow_error("int128 path misuse");
        bv[i] = b[i].fits_int64() ? b[i].as_int64() : throw std::overflow_error("int128 path misuse");
        if (av[i] != 0) a_idx.push_back(i);
        if (bv[i] != 0) b_idx.push_back(i);
    }
    TruncatedSeries r(m);
    const bool a_sparse = a_idx.size() * 20 < m + 1;
    const bool b_sparse = b_idx.size() * 20 < m + 1;
    if (a_sparse || b_sparse) {
        const auto& sidx = a_sparse ? a_idx : b_idx;
        const auto& sv = a_sparse ? av : bv;
        const auto& dv = a_sparse ? bv : av;
        std::vector<__int128> acc(m + 1, 0);
        for (std::size_t i : sidx) {
            __int128 si = sv[i];
            for (std::size_t j = 0; i + j <= m; ++j)
                if (dv[j] != 0) acc[i + j] += si * dv[j];
        }
        for (std::size_t n = 0; n <= m; ++n) r[n] = BigInt::from_int128(acc[n]);
        return r;
    }
    for (std::size_t n = 0; n <= m; ++n) {
        __int128 acc = 0;
        for (std::size_t i = 0; i <= n; ++i) acc += static_cast<__int128>(av[i]) * bv[n - i];
        r[n] = BigInt::from_int128(acc);
    }
    return r;
}

TruncatedSeries TruncatedSeries::mul_bigint_path(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t m = std::min(a.truncation(), b.truncation());
    TruncatedSeries r(m);
    for (std::size_t n = 0; n <= m; ++n) {
        BigInt acc;
        for (std::size_t i = 0; i <= n; ++i) {
            if (a[i].is_zero() || b[n - i].is_zero()) continue;
            acc.fma(a[i], b[n - i]);
        }
        r[n] = std::move(acc);
    }
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (TruncatedSeries::int128_path_applicable(a, b))
        return TruncatedSeries::mul_int128_path(a, b);
    return TruncatedSeries::mul_bigint_path(a, b);
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& rhs) {
    *this = *this * rhs;
    return *this;
}

TruncatedSeries TruncatedSeries::pow(unsigned e) const {
    TruncatedSeries r(truncation());
    r[0] = BigInt(1);
    if (e == 0) return r;
    TruncatedSeries base = *this;
    while (true) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e == 0) break;
        base = base * base;
    }
    return r;
}

TruncatedSeries TruncatedSeries::shift_up(std::size_t t) const {
    TruncatedSeries r(truncation());
    for (std::size_t i = 0; i + t <= truncation(); ++i) r[i + t] = coeffs_[i];
    return r;
}

TruncatedSeries TruncatedSeries::eta_quotient_base(std::size_t truncation) {
    TruncatedSeries r(truncation);
    // sum over j in Z of (-1)^j q^{j(3j-1)/2}
    r[0] = BigInt(1);
    for (std::int64_t j = 1;; ++j) {
        std::int64_t g1 = j * (3 * j - 1) / 2;
        std::int64_t g2 = j * (3 * j + 1) / 2;
        bool any = false;
        std::int64_t sgn = (j % 2 == 0) ? 1 : -1;
        if (g1 <= static_cast<std::int64_t>(truncation)) {
            r[static_cast<std::size_t>(g1)] = BigInt(sgn);
            any = true;
        }
        if (g2 <= static_cast<std::int64_t>(truncation)) {
            r[static_cast<std::size_t>(g2)] = BigInt(sgn);
            any = true;
        }
        if (!any) break;
    }
    return r;
}

}  // namespace periodlab
