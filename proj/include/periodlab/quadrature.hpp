#ifndef PERIODLAB_QUADRATURE_HPP
#define PERIODLAB_QUADRATURE_HPP

// Adaptive Simpson quadrature for smooth, rapidly decaying integrands.
// Used by the period-integral oracle and by test oracles; plain Richardson
// error control (|S_fine - S_coarse| / 15) with depth-limited bisection.

#include <complex>
#include <functional>

namespace periodlab {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

std::complex<double> adaptive_simpson_complex(const std::function<std::complex<double>(double)>& f,
                                              double a, double b, double tol, int max_depth = 40);

}  // namespace periodlab

#endif
