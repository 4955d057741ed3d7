#include "periodlab/quadrature.hpp"

#include <cmath>

namespace periodlab {

namespace {

template <typename T>
T simpson_rec(const std::function<T(double)>& f, double a, double b, T fa, T fm, T fb, T whole,
              double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    T flm = f(lm), frm = f(rm);
    T left = (fa + 4.0 * flm + fm) * ((m - a) / 6.0);
    T right = (fm + 4.0 * frm + fb) * ((b - m) / 6.0);
    T delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

template <typename T>
T integrate(const std::function<T(double)>& f, double a, double b, double tol, int max_depth) {
    T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    T whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    return integrate<double>(f, a, b, tol, max_depth);
}

std::complex<double> adaptive_simpson_complex(const std::function<std::complex<double>(double)>& f,
                                              double a, double b, double tol, int max_depth) {
    return integrate<std::complex<double>>(f, a, b, tol, max_depth);
}

}  // namespace periodlab
