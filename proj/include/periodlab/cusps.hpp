#ifndef PERIODLAB_CUSPS_HPP
#define PERIODLAB_CUSPS_HPP

// Integer 2x2 matrix layer: matrices gamma in Gamma_0(N) realizing reduced
// fractions a/c as gamma(infinity), enumeration of the outcome space
// Omega_c = { a/c : 0 <= a < c, gcd(a,c)=1 }, and the exact group operations
// the cocycle tests need.
//
// Matrices are projective (gamma is identified with -gamma); the stored
// representative keeps c > 0, or c = 0 with a > 0.

#include <cstdint>
#include <vector>

#include "periodlab/bigint.hpp"
#include "periodlab/errors.hpp"

namespace periodlab {

struct GammaMatrix {
    BigInt a, b, c, d;
    std::int64_t level = 1;

    GammaMatrix(BigInt a_, BigInt b_, BigInt c_, BigInt d_, std::int64_t level_);
    static GammaMatrix identity(std::int64_t level = 1);
    static GammaMatrix from_int(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                                std::int64_t level = 1);

    bool is_upper_triangular() const { return c.is_zero(); }

private:
    void normalize();  // determinant check, N | c check, projective sign
};

GammaMatrix mat_mul(const GammaMatrix& g1, const GammaMatrix& g2);
GammaMatrix mat_inv(const GammaMatrix& g);

// A reduced fraction a/c in Omega_c together with the dual numerator
// dd = a^{-1} mod c (the cusp gamma^{-1}(infinity) is -dd/c).
struct Cusp {
    std::int64_t a = 0;
    std::int64_t c = 1;
    std::int64_t dd = 0;

    double value() const { return static_cast<double>(a) / static_cast<double>(c); }
    // representative of -dd/c in [0,1): the numerator of the dual cusp
    std::int64_t dual_numerator() const { return c == 1 ? 0 : c - dd; }
    Cusp dual() const;
};

Cusp make_cusp(std::int64_t a, std::int64_t c);

// gamma with left column (a, c)^T: d is the representative of a^{-1} mod c
// in [0, c), b = (a d - 1)/c.  Requires gcd(a,c) = 1, c > 0, N | c.
GammaMatrix cusp_matrix(std::int64_t a, std::int64_t c, std::int64_t level);
GammaMatrix cusp_matrix(const Cusp& cusp, std::int64_t level);

// All of Omega_c in increasing numerator order, duals precomputed.
std::vector<Cusp> enumerate_omega_c(std::int64_t c);

}  // namespace periodlab

#endif
