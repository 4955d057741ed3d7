#include "periodlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>


#include "periodlab/arith.hpp"
#include "periodlab/periods.hpp"

namespace periodlab {

namespace {

using cdouble = std::complex<double>;

cdouble horner(const std::vector<cdouble>& c, cdouble x) {
    cdouble v{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

cdouble horner_deriv(const std::vector<cdouble>& c, cdouble x) {
    cdouble v{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 1;) v = v * x + static_cast<double>(i) * c[i];
    return v;
}

}  // namespace

std::vector<cdouble> poly_roots(const std::vector<cdouble>& coeffs) {
    if (coeffs.size() < 2) return {};
    const std::size_t deg = coeffs.size() - 1;
    double max_abs = 0.0;
    for (const auto& c : coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) throw DegenerateLeadingCoefficientError("poly_roots: zero polynomial");
    double lead = std::abs(coeffs[deg]);
    if (lead <= 1e-12 * max_abs)
        throw DegenerateLeadingCoefficientError(
            "poly_roots: leading coefficient below 1e-12 of max coefficient");

    // deterministic seeds on a circle, angles offset off the axes
    double radius = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        radius = std::max(radius, 1.0 + std::abs(coeffs[i]) / lead);
    std::vector<cdouble> x(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        double ang = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.354) /
                     static_cast<double>(deg);
        x[i] = radius * cdouble(std::cos(ang), std::sin(ang));
    }

    auto residual_ok = [&](cdouble root, double pv) {
        return pv <= 1e-10 * max_abs * std::pow(1.0 + std::abs(root), static_cast<double>(deg));
    };

    for (int sweep = 0; sweep < 500; ++sweep) {
        double moved = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            cdouble p = horner(coeffs, x[i]);
            cdouble dp = horner_deriv(coeffs, x[i]);
            if (p == cdouble{0.0, 0.0}) continue;
            cdouble newton = (dp == cdouble{0.0, 0.0}) ? cdouble{0.0, 0.0} : p / dp;
            cdouble rep{0.0, 0.0};
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) rep += 1.0 / (x[i] - x[j]);
            cdouble denom = 1.0 - newton * rep;
            cdouble step = (dp == cdouble{0.0, 0.0} || denom == cdouble{0.0, 0.0})
                               ? cdouble(0.5, 0.3) * radius / static_cast<double>(sweep + 1)
                               : newton / denom;
            x[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-16 * radius) {
            bool all_ok = true;
            for (std::size_t i = 0; i < deg && all_ok; ++i)
                all_ok = residual_ok(x[i], std::abs(horner(coeffs, x[i])));
            if (all_ok) return x;
        }
    }
    // final certificate check: converged iterates may stop moving before the
    // stall detector fires
    bool all_ok = true;
    for (std::size_t i = 0; i < deg && all_ok; ++i)
        all_ok = residual_ok(x[i], std::abs(horner(coeffs, x[i])));
    if (all_ok) return x;
    throw NonConvergenceError("poly_roots: residual certificate not met after 500 sweeps");
}

ZeroReport zero_report(const QExpansion& f, const Cusp& cusp, double tol) {
    const int k = f.weight();
    if (k < 6 || !f.is_normalized_eigenform())
        throw UnsupportedWeightError(
            "zero_report: needs a normalized eigenform of weight >= 6 (degree and nonvanishing "
            "are only guaranteed there)");
    if (f.level() > 1 && cusp.c % f.level() != 0)
        throw LevelMismatchError("zero_report: level does not divide c");

    GammaMatrix g = cusp_matrix(cusp, f.level());
    PeriodPolynomial r = period_polynomial(f, g, tol);
    const std::size_t deg = r.coeffs.size() - 1;  // k-2

    double max_abs = 0.0;
    for (const auto& c : r.coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (std::abs(r.coeffs[deg]) <= 1e-12 * max_abs)
        throw DegenerateLeadingCoefficientError(
            "zero_report: leading coefficient of r_{f,gamma} vanished; this violates the "
            "weight >= 6 nonvanishing bound and is a genuine finding");

    // monic-normalized coefficients b~_i = b_i / b_{k-2} for the model report
    std::vector<cdouble> btilde(r.coeffs.size());
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) btilde[i] = r.coeffs[i] / r.coeffs[deg];

    // Root-finding runs in the shifted variable Y = X - a/c.  Expanding the
    // defining integral in powers of (z - a/c) makes each coefficient a
    // single L-value,
    //   int f(z) (z - a/c)^t dz = (-2 pi i)^{-t-1} t! L(f (x) e(a/c), t+1),
    // so the near-(k-2)-fold root cluster at Y = 0 is not drowned by the
    // binomial cancellation the monomial basis suffers (in binary64 that
    // cancellation floors root scatter at eps^{1/(k-2)} ~ 0.02).
    const double x = cusp.value();
    const double cd = static_cast<double>(cusp.c);
    std::vector<cdouble> shifted(static_cast<std::size_t>(k - 1));
    {
        int eps = calibrate_fe_sign(f);
        CuspPlan plan(f, cusp.c, tol);
        auto g_num = plan.phase_sums(cusp.a);
        auto g_dual = plan.phase_sums(cusp.dual_numerator());
        auto lhat = plan.scaled_lvalues(g_num, g_dual, eps);
        const cdouble w = cdouble(0.0, 1.0) / (2.0 * std::numbers::pi);  // 1/(-2 pi i)
        cdouble wpow = w;  // w^{s+1} walked upward
        std::vector<cdouble> moments(static_cast<std::size_t>(k - 1));
        for (int s = 0; s <= k - 2; ++s) {
            moments[static_cast<std::size_t>(s)] =
                wpow * factorial(static_cast<unsigned>(s)) * lhat[static_cast<std::size_t>(s)];
            wpow *= w;
        }
        // coefficient of Y^t in int f (z - x - Y)^{k-2} dz, overall scale dropped
        for (int t = 0; t <= k - 2; ++t)
            shifted[static_cast<std::size_t>(t)] =
                binomial(static_cast<unsigned>(k - 2), static_cast<unsigned>(t)) *
                ((t % 2 == 0) ? 1.0 : -1.0) * moments[static_cast<std::size_t>(k - 2 - t)];
        cdouble lead = shifted[static_cast<std::size_t>(k - 2)];
        if (std::abs(lead) == 0.0)
            throw DegenerateLeadingCoefficientError("zero_report: vanishing shifted leading term");
        for (auto& cc : shifted) cc /= lead;
    }

    ZeroReport rep;
    rep.cusp = cusp;
    std::vector<cdouble> yroots = poly_roots(shifted);
    std::sort(yroots.begin(), yroots.end(), [](const cdouble& a, const cdouble& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    const double denom = std::pow(1.0 + std::fabs(x), (k - 3.0) / (k - 2.0)) *
                         std::pow(cd, -2.0 / (k - 2.0));
    for (const auto& y : yroots) {
        rep.roots.push_back(y + cdouble(x, 0.0));
        double dev = std::abs(y);
        rep.deviations.push_back(dev);
        double ratio = dev / denom;
        rep.normalized_ratios.push_back(ratio);
        rep.max_normalized_ratio = std::max(rep.max_normalized_ratio, ratio);
        rep.residuals.push_back(std::abs(horner(shifted, y)));
    }

    // coefficient model: b~_i = (-1)^i C(k-2,i) x^{k-2-i} + O(|x|^{k-3-i} c^{-2})
    for (std::size_t i = 0; i < btilde.size(); ++i) {
        double model = ((i % 2 == 0) ? 1.0 : -1.0) *
                       binomial(static_cast<unsigned>(deg), static_cast<unsigned>(i)) *
                       std::pow(x, static_cast<double>(deg - i));
        double err_scale =
            x == 0.0 ? 1.0 / (cd * cd)
                     : std::max(std::pow(std::fabs(x),
                                         static_cast<double>(deg) - 1.0 - static_cast<double>(i)) /
                                    (cd * cd),
                                1.0 / (cd * cd));
        rep.coefficient_model_ratios.push_back(std::abs(btilde[i] - model) / err_scale);
    }
    return rep;
}

}  // namespace periodlab
