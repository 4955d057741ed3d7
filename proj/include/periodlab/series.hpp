#ifndef PERIODLAB_SERIES_HPP
#define PERIODLAB_SERIES_HPP

// Truncated power series over exact integers: the construction layer for
// q-expansions (eta products, Eisenstein series, and their products).
//
// All ring operations are truncated at the fixed order M and never touch
// indices above it.  Dense convolution dispatches to a checked __int128
// path when every coefficient fits in 64 bits and the accumulated sums
// provably fit in 128; otherwise it falls back to exact BigInt accumulation.
// Both routes compute identical integers (tested), so the fast path is a
// pure speedup.

#include <cstddef>
#include <vector>

#include "periodlab/bigint.hpp"

namespace periodlab {

class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t truncation)
        : coeffs_(truncation + 1) {}
    TruncatedSeries(std::size_t truncation, std::vector<BigInt> coeffs);

    std::size_t truncation() const { return coeffs_.size() - 1; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
    BigInt& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries& operator*=(const TruncatedSeries& rhs);

    TruncatedSeries pow(unsigned e) const;   // repeated squaring, truncated
    TruncatedSeries shift_up(std::size_t t) const;  // multiply by q^t

    // Product over n >= 1 of (1 - q^n), truncated: the pentagonal-number
    // expansion, so only O(sqrt(M)) nonzero coefficients, all +-1.
    static TruncatedSeries eta_quotient_base(std::size_t truncation);

    // Reference convolution that always runs through BigInt (kept for
    // equivalence tests against the dispatching product).
    static TruncatedSeries mul_bigint_path(const TruncatedSeries& a, const TruncatedSeries& b);
    static TruncatedSeries mul_int128_path(const TruncatedSeries& a, const TruncatedSeries& b);
    static bool int128_path_applicable(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    std::vector<BigInt> coeffs_;  // index 0..M
};

}  // namespace periodlab

#endif
