#include "periodlab/ltwist.hpp"
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "periodlab/arith.hpp"

namespace periodlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cdouble = std::complex<double>;
}  // namespace

double incomplete_gamma_upper(int s, double x) {
    // all terms positive: relative error ~ s * eps
    double sum = 1.0, term = 1.0;
    for (int m = 1; m < s; ++m) {
        term *= x / static_cast<double>(m);
        sum += term;
    }
    return factorial(static_cast<unsigned>(s - 1)) * std::exp(-x) * sum;
}

double zeta_upper(double t) {
    // direct sum + integral remainder, remainder rounded up
    double s = 0.0;
    const int cut = 256;
    for (int n = cut; n >= 1; --n) s += std::pow(static_cast<double>(n), -t);
    s += std::pow(static_cast<double>(cut), 1.0 - t) / (t - 1.0);
    return s;
}

double divisor_series_tail(double t, std::size_t M) {
    // sum_{n>M} d(n) n^{-t} = sum_{ab>M} (ab)^{-t}
    //   <= 2^{t-1}/(t-1) * M^{1-t} * (1 + ln M + zeta(t))
    // from T(x) = sum_{b>x} b^{-t} <= floor(x)^{1-t}/(t-1) <= (x/2)^{1-t}/(t-1).
    if (t <= 1.0) return HUGE_VAL;
    double m = static_cast<double>(M);
    return std::pow(2.0, t - 1.0) / (t - 1.0) * std::pow(m, 1.0 - t) *
           (1.0 + std::log(m) + zeta_upper(t));
}

std::size_t series_terms_needed(int k, double sigma, double tol, std::size_t hard_cap) {
    double t = sigma - (k - 1) / 2.0;
    if (t <= 1.0)
        throw InsufficientCoefficientsError("series does not converge absolutely at Re s = " +
                                                std::to_string(sigma),
                                            hard_cap + 1);
    std::size_t m = 8;
    while (divisor_series_tail(t, m) > tol) {
        if (m > hard_cap)
            throw InsufficientCoefficientsError(
                "series tail cannot reach tol = " + std::to_string(tol) + " at Re s = " +
                    std::to_string(sigma),
                m);
        m = m + m / 4 + 1;
    }
    while (m > 8 && divisor_series_tail(t, m - 1) <= tol) --m;
    return m;
}

LValue ltwist_series(const QExpansion& f, double x, cdouble s, double tol) {
    const int k = f.weight();
    if (s.real() < (k + 1) / 2.0 + 0.5 - 1e-12)
        throw Error("ltwist_series: Re s must be >= (k+1)/2 + 1/2 = " +
                    std::to_string((k + 1) / 2.0 + 0.5));
    std::size_t m = series_terms_needed(k, s.real(), tol, 100000000);
    if (m > f.truncation())
        throw InsufficientCoefficientsError("ltwist_series needs more coefficients", m);

    cdouble acc{0.0, 0.0};
    double abs_acc = 0.0;
    for (std::size_t n = 1; n <= m; ++n) {
        double nn = static_cast<double>(n);
        // n*x reduced mod 1 with an fma correction so large n keeps full phase accuracy
        double p = nn * x;
        double perr = std::fma(nn, x, -p);
        double frac = p - std::floor(p) + perr;
        double ang = kTwoPi * frac;
        cdouble phase{std::cos(ang), std::sin(ang)};
        cdouble term = f.a_double(n) * phase * std::exp(-s * std::log(nn));
        acc += term;
        abs_acc += std::abs(term);
    }
    LValue out;
    out.value = acc;
    out.s = s;
    out.x = x;
    out.abs_tail_bound = divisor_series_tail(s.real() - (k - 1) / 2.0, m) +
                         abs_acc * 1.1e-16 * (8.0 + std::log2(static_cast<double>(m + 1)));
    return out;
}

// ---------------------------------------------------------------------------
// CuspPlan
// ---------------------------------------------------------------------------

namespace {

// smooth majorant for the split-integral term at index n, frequency sigma:
//   d(n) <= 2 sqrt(n), Gamma(sigma, x) <= sigma x^{sigma-1} e^{-x} for x >= sigma
double afe_majorant(int k, int sigma, double c, double n) {
    double x = kTwoPi * n / c;
    double lg = std::log(2.0) + 0.5 * std::log(n) + (k - 1) / 2.0 * std::log(n) +
                std::log(static_cast<double>(sigma)) + (sigma - 1) * std::log(x) - x -
                sigma * std::log(kTwoPi * n);
    return std::exp(lg);
}

}  // namespace

CuspPlan::CuspPlan(const QExpansion& f, std::int64_t c, double tol) : k_(f.weight()), c_(c) {
    if (c < 1) throw NotACuspError("CuspPlan: modulus must be >= 1");
    if (f.level() > 1 && c % f.level() != 0)
        throw LevelMismatchError("CuspPlan: level " + std::to_string(f.level()) +
                                 " does not divide c = " + std::to_string(c));
    const int rows = k_ - 1;
    const double cd = static_cast<double>(c);

    // choose the term count: geometric decay of the majorant kicks in past
    // n_geo; every sigma must drop below its own scale tol * Gamma(sigma)/(2pi)^sigma
    std::vector<double> target(static_cast<std::size_t>(rows));
    for (int sigma = 1; sigma <= rows; ++sigma)
        target[static_cast<std::size_t>(sigma - 1)] =
            tol * factorial(static_cast<unsigned>(sigma - 1)) / std::pow(kTwoPi, sigma);

    // the majorant ratio bound e^{-pi/c} is only valid past n_geo, so the
    // chosen term count never drops below it
    const std::size_t n_geo = static_cast<std::size_t>((k_ / 2.0 + rows) * cd / std::numbers::pi) + 1;
    const double ratio = std::exp(-std::numbers::pi / cd);
    auto tail_at = [&](int sigma, std::size_t terms) {
        return afe_majorant(k_, sigma, cd, static_cast<double>(terms + 1)) / (1.0 - ratio);
    };
    auto all_below = [&](std::size_t terms) {
        for (int sigma = 1; sigma <= rows; ++sigma)
            if (tail_at(sigma, terms) > target[static_cast<std::size_t>(sigma - 1)]) return false;
        return true;
    };
    std::size_t m = n_geo;
    while (!all_below(m)) {
        m = m + m / 8 + 1;
        if (m > 400000000)
            throw InsufficientCoefficientsError("CuspPlan: term bound runaway", m);
    }
    while (m > n_geo && all_below(m - 1)) --m;
    if (m > f.truncation()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", tol);
        throw InsufficientCoefficientsError(
            "CuspPlan: c = " + std::to_string(c) + " at tol = " + buf + " needs more coefficients",
            m);
    }
    terms_ = m;

    tails_.resize(static_cast<std::size_t>(rows));
    for (int sigma = 1; sigma <= rows; ++sigma)
        tails_[static_cast<std::size_t>(sigma - 1)] = tail_at(sigma, m);

    // weight matrix, row-major over n
    row_stride_ = (static_cast<std::size_t>(rows) + 3) / 4 * 4;
    weights_.assign(terms_ * row_stride_, 0.0);
    std::vector<double> abs_col(static_cast<std::size_t>(rows), 0.0);
    for (std::size_t t = 0; t < terms_; ++t) {
        double n = static_cast<double>(t + 1);
        double x = kTwoPi * n / cd;
        double an = f.a_double(t + 1);
        double* row = &weights_[t * row_stride_];
        for (int sigma = 1; sigma <= rows; ++sigma) {
            double w = an * incomplete_gamma_upper(sigma, x) / std::pow(kTwoPi * n, sigma);
            row[sigma - 1] = w;
            abs_col[static_cast<std::size_t>(sigma - 1)] += std::fabs(w);
        }
    }
    // fold summation rounding into the recorded tails
    for (int sigma = 1; sigma <= rows; ++sigma)
        tails_[static_cast<std::size_t>(sigma - 1)] +=
            abs_col[static_cast<std::size_t>(sigma - 1)] * 1.1e-16 *
            (8.0 + std::log2(static_cast<double>(terms_ + 1)));

    table_ = kernels::build_phase_table(static_cast<std::size_t>(c));
}

std::vector<cdouble> CuspPlan::phase_sums(std::int64_t numerator) const {
    std::int64_t num = numerator % c_;
    if (num < 0) num += c_;
    std::vector<cdouble> out(static_cast<std::size_t>(k_ - 1));
    kernels::multi_phase_dot(weights_.data(), terms_, static_cast<std::size_t>(k_ - 1),
                             row_stride_, table_.data(), static_cast<std::size_t>(c_),
                             static_cast<std::size_t>(num), static_cast<std::size_t>(num),
                             out.data());
    return out;
}

std::vector<cdouble> CuspPlan::scaled_lvalues(const std::vector<cdouble>& g_num,
                                              const std::vector<cdouble>& g_dual, int fe_sign,
                                              std::vector<double>* tails_out) const {
    const double cd = static_cast<double>(c_);
    const double c2k = std::pow(cd, 2.0 - static_cast<double>(k_));  // c^{2-k}
    std::vector<cdouble> out(static_cast<std::size_t>(k_ - 1));
    if (tails_out) tails_out->assign(static_cast<std::size_t>(k_ - 1), 0.0);
    for (int s = 1; s <= k_ - 1; ++s) {
        double pref = std::pow(kTwoPi, s) / factorial(static_cast<unsigned>(s - 1));
        double cpow = std::pow(cd, 2.0 - 2.0 * static_cast<double>(s));  // c^{k-2s} * c^{2-k}
        cdouble v = c2k * g_num[static_cast<std::size_t>(s - 1)] +
                    static_cast<double>(fe_sign) * cpow * g_dual[static_cast<std::size_t>(k_ - s - 1)];
        out[static_cast<std::size_t>(s - 1)] = pref * v;
        if (tails_out)
            (*tails_out)[static_cast<std::size_t>(s - 1)] =
                pref * (c2k * tail(s) + cpow * tail(k_ - s));
    }
    return out;
}

// ---------------------------------------------------------------------------

LValue ltwist_cusp(const QExpansion& f, const Cusp& cusp, int s, double tol) {
    const int k = f.weight();
    if (s < 1 || s > k - 1)
        throw Error("ltwist_cusp: s must be an integer in [1, k-1]");
    int eps = calibrate_fe_sign(f);
    CuspPlan plan(f, cusp.c, tol);
    auto g_num = plan.phase_sums(cusp.a);
    auto g_dual = plan.phase_sums(cusp.dual_numerator());
    std::vector<double> tails;
    auto lhat = plan.scaled_lvalues(g_num, g_dual, eps, &tails);
    double ck2 = std::pow(static_cast<double>(cusp.c), static_cast<double>(k - 2));
    LValue out;
    out.value = lhat[static_cast<std::size_t>(s - 1)] * ck2;
    out.abs_tail_bound = tails[static_cast<std::size_t>(s - 1)] * ck2;
    out.s = cdouble(static_cast<double>(s), 0.0);
    out.x = cusp.value();
    return out;
}

std::complex<double> completed_lambda(const QExpansion& f, const Cusp& cusp, int s, double tol) {
    const double cd = static_cast<double>(cusp.c);
    const int k = f.weight();
    if (std::fabs((k - 2.0 * s) * std::log(cd)) > 600.0)
        throw Error("completed_lambda: scale exceeds double range; use the scaled identities");
    LValue lv = ltwist_cusp(f, cusp, s, tol);
    return factorial(static_cast<unsigned>(s - 1)) * std::pow(cd / kTwoPi, s) * lv.value;
}

int calibrate_fe_sign(const QExpansion& f) {
    if (int cached = f.fe_sign_cached()) return cached;
    const int k = f.weight();

    // split-integral sums at the self-dual cusp 0/1
    CuspPlan plan(f, 1, 1e-13);
    auto g = plan.phase_sums(0);
    cdouble a_side = g[static_cast<std::size_t>(k - 2)];  // sigma = k-1
    cdouble b_side = g[0];                                // sigma = 1
    double tail_a = plan.tail(k - 1), tail_b = plan.tail(1);

    // independent reference: the plain series at s = k-1, with tolerance
    // adapted so the sign is resolvable with the coefficients at hand
    double scale = std::abs(b_side);
    if (scale < 1e-300) throw CalibrationFailureError("calibrate_fe_sign: vanishing dual-side sum");
    double gamma_pref = factorial(static_cast<unsigned>(k - 2)) / std::pow(kTwoPi, k - 1);
    // sign resolution only needs the reference to beat a fraction of |b_side|,
    // so relax toward that when the form is short on coefficients
    double tol_ref = 0.05 * scale / gamma_pref;
    double tol_use = std::min(tol_ref, 1e-10);
    double achievable =
        divisor_series_tail(static_cast<double>(k - 1) - (k - 1) / 2.0, f.truncation());
    if (achievable > tol_use) tol_use = std::min(tol_ref, achievable * 1.5);
    LValue ref = ltwist_series(f, 0.0, cdouble(static_cast<double>(k - 1), 0.0), tol_use);

    cdouble eps = (ref.value * gamma_pref - a_side) / b_side;
    double delta = (ref.abs_tail_bound * gamma_pref + tail_a + tail_b) / scale + 1e-9;
    int sign = eps.real() >= 0.0 ? 1 : -1;
    if (std::abs(eps - cdouble(static_cast<double>(sign), 0.0)) > std::max(0.3, 3.0 * delta))
        throw CalibrationFailureError(
            "calibrate_fe_sign: solved sign " + std::to_string(eps.real()) + " + " +
            std::to_string(eps.imag()) + "i is not within tolerance of +-1 (weight " +
            std::to_string(k) + ")");
    f.cache_fe_sign(sign);
    return sign;
}

CriticalValueReport critical_value_bounds_report(const QExpansion& f, const Cusp& cusp,
                                                 double tol) {
    const int k = f.weight();
    int eps = calibrate_fe_sign(f);
    CuspPlan plan(f, cusp.c, tol);
    auto g_num = plan.phase_sums(cusp.a);
    auto g_dual = plan.phase_sums(cusp.dual_numerator());
    auto lhat = plan.scaled_lvalues(g_num, g_dual, eps);
    const double cd = static_cast<double>(cusp.c);
    double ck2 = std::pow(cd, static_cast<double>(k - 2));

    CriticalValueReport rep;
    rep.cusp = cusp;
    for (int sigma = 1; sigma <= k - 1; ++sigma) {
        CriticalValueRow row;
        row.sigma = sigma;
        row.value = lhat[static_cast<std::size_t>(sigma - 1)] * ck2;
        row.comparison_scale = std::pow(cd, std::max(0.0, static_cast<double>(k - 2 * sigma)));
        row.normalized = std::abs(row.value) / row.comparison_scale;
        rep.max_normalized = std::max(rep.max_normalized, row.normalized);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace periodlab
