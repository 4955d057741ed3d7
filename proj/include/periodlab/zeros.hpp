#ifndef PERIODLAB_ZEROS_HPP
#define PERIODLAB_ZEROS_HPP

// Roots of period polynomials and their localization around the cusp.
//
// For a normalized eigenform of weight >= 6 the leading coefficient of
// r_{f,gamma} is pinned away from zero (the n >= 2 part of L(f (x) e(x), k-1)
// is at most zeta(5/2)^2 - 1 = 0.799... < 1 in absolute value), so the
// polynomial has exact degree k-2 and every root sits near a/c:
// the report records the deviations |x0 - a/c| and the ratios normalized by
// (1 + |a/c|)^{(k-3)/(k-2)} c^{-2/(k-2)}.

#include <complex>
#include <cstdint>
#include <vector>

#include "periodlab/cusps.hpp"
#include "periodlab/qexpansion.hpp"

namespace periodlab {

// All complex roots by Aberth-Ehrlich simultaneous iteration, deterministic
// seeding on the circle of radius 1 + max|b_i / b_deg|.  Each returned root
// satisfies |p(x0)| <= 1e-10 * max|b_i| * (1 + |x0|)^deg (the residual
// certificate); non-convergence after 500 sweeps throws.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs);

struct ZeroReport {
    Cusp cusp;
    std::vector<std::complex<double>> roots;       // sorted by real part
    std::vector<double> deviations;                // |x0 - a/c|
    std::vector<double> normalized_ratios;         // deviation / ((1+|a/c|)^{(k-3)/(k-2)} c^{-2/(k-2)})
    std::vector<double> residuals;                 // |r~(x0)| on the monic-normalized polynomial
    double max_normalized_ratio = 0.0;
    // residuals of b~_i = (-1)^i C(k-2,i) (a/c)^{k-2-i} + O(|a/c|^{k-3-i} c^{-2}):
    // observed |b~_i - model| / max(|a/c|^{k-3-i} c^{-2}, c^{-2})
    std::vector<double> coefficient_model_ratios;
};

ZeroReport zero_report(const QExpansion& f, const Cusp& cusp, double tol = 1e-11);

}  // namespace periodlab

#endif
