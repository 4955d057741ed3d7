#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "periodlab/ltwist.hpp"
#include "periodlab/quadrature.hpp"

using namespace periodlab;
using cdouble = std::complex<double>;

namespace {
const QExpansion& delta() {
    static QExpansion f = build_delta(4000);
    return f;
}
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("incomplete gamma: closed form against limits and quadrature") {
    CHECK(incomplete_gamma_upper(1, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
    CHECK(incomplete_gamma_upper(3, 1e-12) == doctest::Approx(2.0).epsilon(1e-9));
    // independent oracle: adaptive quadrature of t^4 e^{-t} on [2, 60]
    double quad = adaptive_simpson([](double t) { return t * t * t * t * std::exp(-t); }, 2.0,
                                   60.0, 1e-13);
    CHECK(incomplete_gamma_upper(5, 2.0) == doctest::Approx(quad).epsilon(1e-11));
}

TEST_CASE("divisor-series tail bound really bounds the tail") {
    // exact tail by direct summation far past M, compared with the bound
    auto d_of = [](std::size_t n) {
        std::size_t c = 0;
        for (std::size_t i = 1; i * i <= n; ++i)
            if (n % i == 0) c += (i * i == n) ? 1 : 2;
        return static_cast<double>(c);
    };
    for (double t : {2.0, 3.5, 5.5}) {
        for (std::size_t m : {20u, 100u}) {
            double exact = 0.0;
            for (std::size_t n = m + 1; n <= 500000; ++n)
                exact += d_of(n) * std::pow(static_cast<double>(n), -t);
            CHECK(divisor_series_tail(t, m) >= exact);
            CHECK(divisor_series_tail(t, m) <= 500.0 * (exact + 1e-12));  // not absurdly loose
        }
    }
}

TEST_CASE("ltwist_series: direct summation oracle at two truncations") {
    // x = 1/2: sum tau(n) (-1)^n / n^11, summed naively here
    double ref1 = 0.0, ref2 = 0.0;
    for (std::size_t n = 1; n <= 600; ++n) {
        double term = delta().a_double(n) * ((n % 2 == 0) ? 1.0 : -1.0) /
                      std::pow(static_cast<double>(n), 11.0);
        if (n <= 300) ref1 += term;
        ref2 += term;
    }
    CHECK(std::fabs(ref1 - ref2) <= 1e-10);  // oracle self-consistency
    LValue lv = ltwist_series(delta(), 0.5, cdouble(11.0, 0.0), 1e-11);
    CHECK(std::fabs(lv.value.real() - ref2) <= 1e-9);
    CHECK(std::fabs(lv.value.imag()) <= 1e-12);
}

TEST_CASE("ltwist_series: refinement consistency and periodicity") {
    LValue a = ltwist_series(delta(), 0.0, cdouble(11.0, 0.0), 1e-12);
    LValue b = ltwist_series(delta(), 0.0, cdouble(11.0, 0.0), 1e-9);
    CHECK(std::abs(a.value - b.value) <= a.abs_tail_bound + b.abs_tail_bound);
    LValue c = ltwist_series(delta(), 1.0, cdouble(11.0, 0.0), 1e-12);
    CHECK(std::abs(a.value - c.value) <= 1e-12);
}

TEST_CASE("ltwist_series: conjugation symmetry for real coefficients") {
    cdouble s(9.5, 1.5);
    LValue plus = ltwist_series(delta(), 0.37, s, 1e-9);
    LValue minus = ltwist_series(delta(), -0.37, std::conj(s), 1e-9);
    CHECK(std::abs(minus.value - std::conj(plus.value)) <= 1e-8);
}

TEST_CASE("ltwist_series: precondition and insufficient coefficients") {
    CHECK_THROWS_AS(ltwist_series(delta(), 0.0, cdouble(5.0, 0.0), 1e-9), Error);
    QExpansion tiny = build_delta(5);
    CHECK_THROWS_AS(ltwist_series(tiny, 0.0, cdouble(11.0, 0.0), 1e-12),
                    InsufficientCoefficientsError);
    try {
        ltwist_series(tiny, 0.0, cdouble(11.0, 0.0), 1e-12);
    } catch (const InsufficientCoefficientsError& e) {
        CHECK(e.required > 5);
    }
}

TEST_CASE("calibrate_fe_sign: delta gives +1 and weight 18 gives i^k") {
    CHECK(calibrate_fe_sign(delta()) == 1);  // k = 12 = 0 mod 4: i^k = (+1) = (-1)^k
    QExpansion w18 = build_level_one_eigenform(18, 4000);
    CHECK(calibrate_fe_sign(w18) == -1);  // k = 18 = 2 mod 4: i^k = -1 differs from (-1)^k
    QExpansion w16 = build_level_one_eigenform(16, 4000);
    CHECK(calibrate_fe_sign(w16) == 1);
}

TEST_CASE("ltwist_cusp equals ltwist_series at s = k-1") {
    for (std::int64_t c : {1ll, 2ll, 7ll, 24ll}) {
        for (const auto& cusp : enumerate_omega_c(c)) {
            LValue afe = ltwist_cusp(delta(), cusp, 11, 1e-11);
            LValue ser = ltwist_series(delta(), cusp.value(), cdouble(11.0, 0.0), 1e-11);
            CHECK(std::abs(afe.value - ser.value) <= 1e-9);
        }
    }
}

TEST_CASE("ltwist_cusp: dual-representative independence") {
    // replacing d by d + c only shifts the dual phase stream by a full period
    Cusp cusp = make_cusp(2, 5);
    CuspPlan plan(delta(), 5, 1e-12);
    auto g_num = plan.phase_sums(cusp.a);
    auto g1 = plan.phase_sums(cusp.dual_numerator());
    auto g2 = plan.phase_sums(cusp.dual_numerator() + 5);
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(std::abs(g1[i] - g2[i]) == 0.0);
    (void)g_num;
}

TEST_CASE("functional equation at the bottom of the strip (worked identity)") {
    // L(0/1, 1) = eps Gamma(11) (2 pi)^{-10} L(0/1, 11)
    Cusp zero = make_cusp(0, 1);
    LValue l1 = ltwist_cusp(delta(), zero, 1, 1e-12);
    LValue l11 = ltwist_cusp(delta(), zero, 11, 1e-12);
    double eps = calibrate_fe_sign(delta());
    cdouble rhs = eps * 3628800.0 / std::pow(kTwoPi, 10) * l11.value;
    CHECK(std::abs(l1.value - rhs) <= 1e-10 * std::abs(l1.value));
}

TEST_CASE("completed lambda: functional equation and central symmetry") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        std::int64_t c = 2 + static_cast<std::int64_t>(rng() % 40);
        auto omega = enumerate_omega_c(c);
        const Cusp& cusp = omega[rng() % omega.size()];
        Cusp dual = cusp.dual();
        int eps = calibrate_fe_sign(delta());
        for (int s : {1, 3, 6, 11}) {
            cdouble lhs = completed_lambda(delta(), cusp, s, 1e-12);
            cdouble rhs = static_cast<double>(eps) *
                          completed_lambda(delta(), dual, 12 - s, 1e-12);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), 1.0));
        }
        // s = k/2: modulus-level symmetry is sign-independent
        double mid_here = std::abs(completed_lambda(delta(), cusp, 6, 1e-12));
        double mid_dual = std::abs(completed_lambda(delta(), dual, 6, 1e-12));
        CHECK(mid_here == doctest::Approx(mid_dual).epsilon(1e-9));
    }
}

TEST_CASE("fe involution: applying the functional equation twice is the identity") {
    int eps = calibrate_fe_sign(delta());
    CHECK(eps * eps == 1);
    Cusp cusp = make_cusp(3, 8);
    cdouble once = completed_lambda(delta(), cusp, 4, 1e-12);
    cdouble twice = static_cast<double>(eps * eps) * once;
    CHECK(std::abs(once - twice) == 0.0);
}

TEST_CASE("critical value report: normalized values bounded") {
    for (std::int64_t c : {1ll, 25ll, 120ll}) {
        auto omega = enumerate_omega_c(c);
        CriticalValueReport rep = critical_value_bounds_report(delta(), omega[omega.size() / 2]);
        REQUIRE(rep.rows.size() == 11);
        CHECK(rep.max_normalized < 10.0);
        // sigma = k-1: |L| <= sum |a(n)|/n^{k-1} <= 1.8
        CHECK(std::abs(rep.rows[10].value) <= 1.8);
    }
}

TEST_CASE("refinement: halving tol stays within combined tail bounds") {
    Cusp cusp = make_cusp(5, 13);
    LValue coarse = ltwist_cusp(delta(), cusp, 6, 1e-8);
    LValue fine = ltwist_cusp(delta(), cusp, 6, 5e-9);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.abs_tail_bound + fine.abs_tail_bound);
}
