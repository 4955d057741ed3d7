#ifndef PERIODLAB_PERIODS_HPP
#define PERIODLAB_PERIODS_HPP

// Periods of a cusp form and everything assembled from them: the vector
// u_{f,l}(gamma) = int_{gamma inf}^{inf} f(z) z^l dz for l = 0..k-2, the
// cocycle sigma_f(gamma)(X,Y) = int f(z)(Xz+Y)^{k-2} dz, and period
// polynomials r_{f,gamma}(X) = (1/(k-1)!) int f(z)(z-X)^{k-2} dz.
//
// The working identity (binomial expansion of the vertical-line integral):
//
//   u_{f,l} = sum_{j=0}^{l} C(l,j) (a/c)^{l-j} (-2 pi i)^{-j-1} j!
//             * L(f (x) e(a/c), j+1)
//
// so one batched set of critical L-values per cusp yields the whole vector.
// An independent adaptive-quadrature evaluation of the defining integral
// (period_quadrature_oracle) cross-checks the assembly.
//
// Normalization: dividing u_f by C * c^{k-2} with C = Gamma(k-1) i/(2 pi)^{k-1}
// makes the dominant-term identity  u~_l = eps * L(f (x) e(-d/c), k-1) (a/c)^l
// + O(c^{-2})  hold on the nose (for l = 0 it is exact).  The constant quoted
// in classical statements of the normalized Eichler-Shimura map,
// Gamma(k-1) i/(2 pi)^{k-2}, differs by a factor 2 pi; both conventions are
// supported and the sweep reports emit data under each so the discrepancy is
// documented rather than silently corrected.

#include <complex>
#include <vector>

#include "periodlab/cusps.hpp"
#include "periodlab/ltwist.hpp"
#include "periodlab/qexpansion.hpp"

namespace periodlab {

struct PeriodVector {
    std::vector<std::complex<double>> entries;  // u_{f,0} .. u_{f,k-2}
    Cusp cusp;
    double error_bound = 0.0;  // aggregated L-value tails times binomial weights
};

// P(X,Y) = sum_i coeffs[i] X^i Y^{degree-i}, homogeneous of degree k-2
struct HomogeneousPoly {
    std::vector<std::complex<double>> coeffs;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// r(X) = sum_i coeffs[i] X^i, degree k-2 when the leading coefficient survives
struct PeriodPolynomial {
    std::vector<std::complex<double>> coeffs;
    double error_bound = 0.0;
};

struct NormalizationConvention {
    std::complex<double> C{0.0, 0.0};
    int fe_sign = 1;

    // Gamma(k-1) i / (2 pi)^{k-1}: validated by the dominant-term identity.
    static NormalizationConvention calibrated(const QExpansion& f);
    // Gamma(k-1) i / (2 pi)^{k-2}: the classically quoted constant.
    static NormalizationConvention classical(const QExpansion& f);
};

PeriodVector period_vector(const QExpansion& f, const Cusp& cusp, double tol);
PeriodVector normalized_period_vector(const QExpansion& f, const Cusp& cusp,
                                      const NormalizationConvention& conv, double tol);

// Sweep building block: normalized periods from precomputed phase sums, so a
// whole Omega_c shares one CuspPlan.  x_value is the actual rational a/c
// (not reduced mod 1).  error_bound (optional) receives the max entry bound
// in normalized scale.
std::vector<std::complex<double>> assemble_normalized_periods(
    const CuspPlan& plan, const std::vector<std::complex<double>>& g_num,
    const std::vector<std::complex<double>>& g_dual, double x_value,
    const NormalizationConvention& conv, double* error_bound = nullptr);

// int_{a/c}^{i inf} f(z) z^l dz by adaptive quadrature on the two halves of
// the vertical line split at height 1/c, with the lower half mapped through
// gamma^{-1}.  Independent of the L-value route.
std::complex<double> period_quadrature_oracle(const QExpansion& f, const Cusp& cusp, int l,
                                              double tol);

// sigma_f(g)(X,Y); zero polynomial when g fixes infinity (c = 0).
HomogeneousPoly sigma_poly(const QExpansion& f, const GammaMatrix& g, double tol);

// (g.P)(X,Y) = P(aX+cY, bX+dY), weights computed exactly in integers.
HomogeneousPoly gamma_action(const GammaMatrix& g, const HomogeneousPoly& P);

// max|sigma(g1 g2) - sigma(g1) - g1.sigma(g2)| relative to the largest
// coefficient among the three terms (0 when all vanish).
double verify_cocycle(const QExpansion& f, const GammaMatrix& g1, const GammaMatrix& g2,
                      double tol);

PeriodPolynomial period_polynomial(const QExpansion& f, const GammaMatrix& g, double tol);

}  // namespace periodlab

#endif
