#include "periodlab/periods.hpp"

#include <cmath>
#include <numbers>

#include "periodlab/arith.hpp"
#include "periodlab/quadrature.hpp"

namespace periodlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cdouble = std::complex<double>;

BigInt bpow(const BigInt& base, int e) {
    BigInt r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::int64_t to_i64(const BigInt& v, const char* what) {
    if (!v.fits_int64()) throw Error(std::string(what) + ": matrix entry exceeds int64 range");
    return v.as_int64();
}

}  // namespace

NormalizationConvention NormalizationConvention::calibrated(const QExpansion& f) {
    NormalizationConvention conv;
    const int k = f.weight();
    conv.C = cdouble(0.0, factorial(static_cast<unsigned>(k - 2)) / std::pow(kTwoPi, k - 1));
    conv.fe_sign = calibrate_fe_sign(f);
    return conv;
}

NormalizationConvention NormalizationConvention::classical(const QExpansion& f) {
    NormalizationConvention conv;
    const int k = f.weight();
    conv.C = cdouble(0.0, factorial(static_cast<unsigned>(k - 2)) / std::pow(kTwoPi, k - 2));
    conv.fe_sign = calibrate_fe_sign(f);
    return conv;
}

std::vector<cdouble> assemble_normalized_periods(const CuspPlan& plan,
                                                 const std::vector<cdouble>& g_num,
                                                 const std::vector<cdouble>& g_dual,
                                                 double x_value,
                                                 const NormalizationConvention& conv,
                                                 double* error_bound) {
    const int k = plan.weight();
    std::vector<double> ltails;
    std::vector<cdouble> lhat = plan.scaled_lvalues(g_num, g_dual, conv.fe_sign, &ltails);

    // u~_l = (1/C) sum_j C(l,j) x^{l-j} (-2 pi i)^{-j-1} j! Lhat(j+1)
    const cdouble w = cdouble(0.0, 1.0) / kTwoPi;  // 1/(-2 pi i)
    std::vector<cdouble> wpow(static_cast<std::size_t>(k));
    wpow[0] = w;
    for (int j = 1; j < k; ++j) wpow[static_cast<std::size_t>(j)] = wpow[static_cast<std::size_t>(j - 1)] * w;

    std::vector<cdouble> out(static_cast<std::size_t>(k - 1));
    double max_err = 0.0;
    const cdouble inv_c = 1.0 / conv.C;
    for (int l = 0; l <= k - 2; ++l) {
        cdouble acc{0.0, 0.0};
        double err = 0.0;
        for (int j = 0; j <= l; ++j) {
            double coef = binomial(static_cast<unsigned>(l), static_cast<unsigned>(j)) *
                          factorial(static_cast<unsigned>(j));
            double xp = std::pow(x_value, l - j);
            cdouble term = coef * xp * wpow[static_cast<std::size_t>(j)] *
                           lhat[static_cast<std::size_t>(j)];
            acc += term;
            err += coef * std::fabs(xp) * std::abs(wpow[static_cast<std::size_t>(j)]) *
                   ltails[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(l)] = acc * inv_c;
        max_err = std::max(max_err, err * std::abs(inv_c));
    }
    if (error_bound) *error_bound = max_err;
    return out;
}

namespace {

// shared by the public period functions and sigma_poly: normalized periods for
// the fraction realized by (a, c, d) with c > 0, a d = 1 (mod c)
std::vector<cdouble> normalized_periods_for(const QExpansion& f, std::int64_t a, std::int64_t c,
                                            std::int64_t d, const NormalizationConvention& conv,
                                            double tol, double* error_bound) {
    CuspPlan plan(f, c, tol);
    std::int64_t am = a % c;
    if (am < 0) am += c;
    std::int64_t dm = (-d) % c;
    if (dm < 0) dm += c;
    auto g_num = plan.phase_sums(am);
    auto g_dual = plan.phase_sums(dm);
    double x = static_cast<double>(a) / static_cast<double>(c);
    return assemble_normalized_periods(plan, g_num, g_dual, x, conv, error_bound);
}

}  // namespace

PeriodVector normalized_period_vector(const QExpansion& f, const Cusp& cusp,
                                      const NormalizationConvention& conv, double tol) {
    PeriodVector pv;
    pv.cusp = cusp;
    pv.entries = normalized_periods_for(f, cusp.a, cusp.c, cusp.dd, conv, tol, &pv.error_bound);
    return pv;
}

PeriodVector period_vector(const QExpansion& f, const Cusp& cusp, double tol) {
    NormalizationConvention conv = NormalizationConvention::calibrated(f);
    PeriodVector pv = normalized_period_vector(f, cusp, conv, tol);
    const double ck = std::pow(static_cast<double>(cusp.c), static_cast<double>(f.weight() - 2));
    for (auto& e : pv.entries) e *= conv.C * ck;
    pv.error_bound *= std::abs(conv.C) * ck;
    return pv;
}

HomogeneousPoly sigma_poly(const QExpansion& f, const GammaMatrix& g, double tol) {
    const int k = f.weight();
    HomogeneousPoly p;
    p.coeffs.assign(static_cast<std::size_t>(k - 1), cdouble{0.0, 0.0});
    if (g.is_upper_triangular()) return p;  // gamma(inf) = inf: empty integral

    std::int64_t a = to_i64(g.a, "sigma_poly");
    std::int64_t c = to_i64(g.c, "sigma_poly");
    std::int64_t d = to_i64(g.d, "sigma_poly");
    NormalizationConvention conv = NormalizationConvention::calibrated(f);
    auto u_norm = normalized_periods_for(f, a, c, d, conv, tol, nullptr);
    const double ck = std::pow(static_cast<double>(c), static_cast<double>(k - 2));
    for (int i = 0; i <= k - 2; ++i)
        p.coeffs[static_cast<std::size_t>(i)] =
            binomial(static_cast<unsigned>(k - 2), static_cast<unsigned>(i)) *
            u_norm[static_cast<std::size_t>(i)] * conv.C * ck;
    return p;
}

namespace {

// double-double scalars: the substitution weights reach ~(2*entry)^{deg}, far
// past 2^53, and compositions can cancel them down to O(1) results, so plain
// double accumulation loses the cocycle identity for large entries.  Exact
// integer weights split into hi+lo doubles and a compensated accumator keep
// the action accurate to ~eps relative at any entry size that fits.
struct DD {
    double hi = 0.0, lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    DD r = two_sum(s.hi, lo);
    return r;
}

// (w.hi + w.lo) * x with an exact FMA product split
DD dd_mul_d(DD w, double x) {
    double p = w.hi * x;
    double err = std::fma(w.hi, x, -p);
    err = std::fma(w.lo, x, err);
    return two_sum(p, err);
}

DD bigint_to_dd(const BigInt& v) {
    double hi = v.to_double();
    double lo = (v - BigInt::from_double(hi)).to_double();
    return {hi, lo};
}

}  // namespace

HomogeneousPoly gamma_action(const GammaMatrix& g, const HomogeneousPoly& P) {
    const int deg = P.degree();
    const std::size_t n = static_cast<std::size_t>(deg + 1);
    HomogeneousPoly out;
    out.coeffs.assign(n, cdouble{0.0, 0.0});

    // (g.P)(X,Y) = P(aX+cY, bX+dY); the weight of X^t Y^{deg-t} in
    // (aX+cY)^i (bX+dY)^{deg-i} is assembled exactly in integers
    std::vector<DD> acc_re(n), acc_im(n);
    std::vector<BigInt> wrow(n);
    for (int i = 0; i <= deg; ++i) {
        const cdouble pi = P.coeffs[static_cast<std::size_t>(i)];
        if (pi == cdouble{0.0, 0.0}) continue;
        std::vector<BigInt> left(static_cast<std::size_t>(i + 1));
        for (int p = 0; p <= i; ++p)
            left[static_cast<std::size_t>(p)] =
                BigInt(static_cast<std::int64_t>(binomial(static_cast<unsigned>(i), static_cast<unsigned>(p)))) *
                bpow(g.a, p) * bpow(g.c, i - p);
        std::vector<BigInt> right(static_cast<std::size_t>(deg - i + 1));
        for (int q = 0; q <= deg - i; ++q)
            right[static_cast<std::size_t>(q)] =
                BigInt(static_cast<std::int64_t>(binomial(static_cast<unsigned>(deg - i), static_cast<unsigned>(q)))) *
                bpow(g.b, q) * bpow(g.d, deg - i - q);
        for (std::size_t t = 0; t < n; ++t) wrow[t] = BigInt(0);
        for (int p = 0; p <= i; ++p)
            for (int q = 0; q <= deg - i; ++q)
                wrow[static_cast<std::size_t>(p + q)].fma(left[static_cast<std::size_t>(p)],
                                                          right[static_cast<std::size_t>(q)]);
        for (std::size_t t = 0; t < n; ++t) {
            if (wrow[t].is_zero()) continue;
            DD w = bigint_to_dd(wrow[t]);
            acc_re[t] = dd_add(acc_re[t], dd_mul_d(w, pi.real()));
            acc_im[t] = dd_add(acc_im[t], dd_mul_d(w, pi.imag()));
        }
    }
    for (std::size_t t = 0; t < n; ++t)
        out.coeffs[t] = cdouble(acc_re[t].hi + acc_re[t].lo, acc_im[t].hi + acc_im[t].lo);
    return out;
}

double verify_cocycle(const QExpansion& f, const GammaMatrix& g1, const GammaMatrix& g2,
                      double tol) {
    GammaMatrix g12 = mat_mul(g1, g2);
    HomogeneousPoly s12 = sigma_poly(f, g12, tol);
    HomogeneousPoly s1 = sigma_poly(f, g1, tol);
    HomogeneousPoly s2 = sigma_poly(f, g2, tol);
    HomogeneousPoly act = gamma_action(g1, s2);

    double scale = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < s12.coeffs.size(); ++i) {
        scale = std::max({scale, std::abs(s12.coeffs[i]), std::abs(s1.coeffs[i]),
                          std::abs(act.coeffs[i])});
        resid = std::max(resid, std::abs(s12.coeffs[i] - s1.coeffs[i] - act.coeffs[i]));
    }
    if (scale == 0.0) return 0.0;
    return resid / scale;
}

PeriodPolynomial period_polynomial(const QExpansion& f, const GammaMatrix& g, double tol) {
    const int k = f.weight();
    if (g.is_upper_triangular())
        throw NotACuspError("period_polynomial: gamma must move infinity");
    std::int64_t a = to_i64(g.a, "period_polynomial");
    std::int64_t c = to_i64(g.c, "period_polynomial");
    std::int64_t d = to_i64(g.d, "period_polynomial");
    NormalizationConvention conv = NormalizationConvention::calibrated(f);
    double nerr = 0.0;
    auto u_norm = normalized_periods_for(f, a, c, d, conv, tol, &nerr);
    const double ck = std::pow(static_cast<double>(c), static_cast<double>(k - 2));
    const double inv_fact = 1.0 / factorial(static_cast<unsigned>(k - 1));

    PeriodPolynomial r;
    r.coeffs.assign(static_cast<std::size_t>(k - 1), cdouble{0.0, 0.0});
    // (z - X)^{k-2} expanded: b_i = (1/(k-1)!) C(k-2,i) (-1)^i u_{k-2-i}
    for (int i = 0; i <= k - 2; ++i) {
        double coef = inv_fact * binomial(static_cast<unsigned>(k - 2), static_cast<unsigned>(i)) *
                      ((i % 2 == 0) ? 1.0 : -1.0);
        r.coeffs[static_cast<std::size_t>(i)] =
            coef * u_norm[static_cast<std::size_t>(k - 2 - i)] * conv.C * ck;
    }
    r.error_bound = nerr * std::abs(conv.C) * ck * inv_fact *
                    binomial(static_cast<unsigned>(k - 2), static_cast<unsigned>((k - 2) / 2));
    return r;
}

// ---------------------------------------------------------------------------
// quadrature oracle
// ---------------------------------------------------------------------------

namespace {

// truncated q-expansion at x + iu, direct sincos per term (deliberately
// independent of the phase-table kernels)
cdouble eval_form(const QExpansion& f, double x, double u, std::size_t max_terms) {
    cdouble acc{0.0, 0.0};
    for (std::size_t n = 1; n <= max_terms; ++n) {
        double decay = std::exp(-kTwoPi * static_cast<double>(n) * u);
        if (decay < 1e-310) break;
        double nn = static_cast<double>(n);
        double p = nn * x;
        double frac = p - std::floor(p) + std::fma(nn, x, -p);
        double ang = kTwoPi * frac;
        acc += f.a_double(n) * decay * cdouble(std::cos(ang), std::sin(ang));
        // Deligne-bound cutoff: remaining terms are negligible
        double majorant = 2.0 * std::pow(nn + 1.0, f.weight() / 2.0) *
                          std::exp(-kTwoPi * (nn + 1.0) * u);
        if (majorant < 1e-19 * (1.0 + std::abs(acc))) break;
    }
    return acc;
}

std::size_t form_terms_needed(int k, std::int64_t c, std::size_t available) {
    // need 2 sqrt(n) n^{(k-1)/2} e^{-2 pi n / c} < ~1e-17 at the lowest height 1/c
    double cd = static_cast<double>(c);
    double n = std::max(8.0, k * cd / kTwoPi);
    while (2.0 * std::pow(n, k / 2.0) * std::exp(-kTwoPi * n / cd) > 1e-17) {
        n *= 1.1;
        if (n > 1e9) break;
    }
    std::size_t need = static_cast<std::size_t>(n) + 1;
    if (need > available)
        throw InsufficientCoefficientsError("period_quadrature_oracle: q-expansion too short", need);
    return need;
}

}  // namespace

std::complex<double> period_quadrature_oracle(const QExpansion& f, const Cusp& cusp, int l,
                                              double tol) {
    const int k = f.weight();
    if (l < 0 || l > k - 2) throw Error("period_quadrature_oracle: l out of range");
    if (f.level() > 1 && cusp.c % f.level() != 0)
        throw LevelMismatchError("period_quadrature_oracle: level does not divide c");
    const double cd = static_cast<double>(cusp.c);
    const double x0 = cusp.value();
    const double x1 = -static_cast<double>(cusp.dd) / cd;
    std::size_t terms = form_terms_needed(k, cusp.c, f.truncation());

    const double ik = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // i^k for even k
    const double lo = 1.0 / cd;

    // upper half: i * int f(x0 + iu)(x0 + iu)^l du
    auto upper = [&](double u) -> cdouble {
        return eval_form(f, x0, u, terms) * std::pow(cdouble(x0, u), l);
    };
    // lower half mapped through gamma^{-1}:
    // i * int (i c u)^k f(x1 + iu) (x0 + i/(c^2 u))^l / (c^2 u^2) du
    auto lower = [&](double u) -> cdouble {
        double cu = cd * u;
        double jac = ik * std::pow(cu, static_cast<double>(k)) / (cd * cd * u * u);
        return jac * eval_form(f, x1, u, terms) *
               std::pow(cdouble(x0, 1.0 / (cd * cd * u)), l);
    };

    // truncation heights: beyond these the integrands are < ~1e-20 relative
    double hi1 = lo + (46.0 + (l + 2) * std::log(4.0 + std::fabs(x0))) / kTwoPi;
    double hi2 = lo + 8.0;
    for (int it = 0; it < 32; ++it)
        hi2 = lo + (46.0 + k * std::log(cd * hi2 + 4.0) + l * std::log(4.0 + std::fabs(x0))) / kTwoPi;

    // coarse pass fixes the scale, refined pass hits the requested tolerance
    cdouble c1 = adaptive_simpson_complex(upper, lo, hi1, 1e-3);
    cdouble c2 = adaptive_simpson_complex(lower, lo, hi2, 1e-3 * std::pow(cd, k - 2.0));
    double scale = std::max({std::abs(c1 + c2), 1e-3 * (std::abs(c1) + std::abs(c2)), 1e-300});
    cdouble h1 = adaptive_simpson_complex(upper, lo, hi1, tol * scale * 0.25);
    cdouble h2 = adaptive_simpson_complex(lower, lo, hi2, tol * scale * 0.25);
    return cdouble(0.0, 1.0) * (h1 + h2);
}

}  // namespace periodlab
