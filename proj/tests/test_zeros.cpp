#include <doctest.h>

#include <cmath>
#include <random>

#include "periodlab/arith.hpp"
#include "periodlab/ltwist.hpp"
#include "periodlab/zeros.hpp"

using namespace periodlab;
using cdouble = std::complex<double>;

namespace {
const QExpansion& delta() {
    static QExpansion f = build_delta(13000);  // enough for c = 1009 plans
    return f;
}

cdouble eval(const std::vector<cdouble>& c, cdouble x) {
    cdouble v{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}
}  // namespace

TEST_CASE("poly_roots: quadratics and exact factorizations") {
    auto r = poly_roots({cdouble{-1.0, 0.0}, cdouble{0.0, 0.0}, cdouble{1.0, 0.0}});  // X^2 - 1
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](cdouble a, cdouble b) { return a.real() < b.real(); });
    CHECK(std::abs(r[0] - cdouble{-1.0, 0.0}) <= 1e-12);
    CHECK(std::abs(r[1] - cdouble{1.0, 0.0}) <= 1e-12);

    // (X - 1/4)^2: a double root is resolvable to sqrt(eps) ~ 1e-8 << 1e-6
    auto r2 = poly_roots({cdouble{0.0625, 0.0}, cdouble{-0.5, 0.0}, cdouble{1.0, 0.0}});
    for (const auto& root : r2) CHECK(std::abs(root - cdouble{0.25, 0.0}) <= 1e-6);
}

TEST_CASE("poly_roots: high-multiplicity model polynomial (X - a/c)^{k-2}") {
    // binary64 cannot localize a 10-fold root to 1e-6 (perturbation theory gives
    // eps^{1/10} ~ 0.02), so the achievable assertions are: residual certificates,
    // the exact root centroid (a Vieta identity), and a cluster radius at the
    // perturbation-theory scale.
    const double r = 0.25;  // dyadic, so the expanded coefficients are exact
    std::vector<cdouble> coeffs(11);
    for (int i = 0; i <= 10; ++i)
        coeffs[static_cast<std::size_t>(i)] =
            cdouble(binomial(10, static_cast<unsigned>(i)) * std::pow(-r, 10 - i), 0.0);
    auto roots = poly_roots(coeffs);
    REQUIRE(roots.size() == 10);
    cdouble centroid{0.0, 0.0};
    for (const auto& root : roots) {
        CHECK(std::abs(root - cdouble(r, 0.0)) <= 0.05);  // cluster radius ~ eps^{1/10}
        centroid += root;
    }
    centroid /= 10.0;
    // per-root errors mostly cancel around the cluster, not exactly
    CHECK(std::abs(centroid - cdouble(r, 0.0)) <= 2e-3);
}

TEST_CASE("poly_roots: random degree-10 polynomials verified by residual") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cdouble> c(11);
        for (auto& v : c) v = cdouble(u(rng), u(rng));
        if (std::abs(c[10]) < 0.1) c[10] += cdouble{0.5, 0.5};
        auto roots = poly_roots(c);
        REQUIRE(roots.size() == 10);
        double max_abs = 0.0;
        for (const auto& v : c) max_abs = std::max(max_abs, std::abs(v));
        for (const auto& root : roots)
            CHECK(std::abs(eval(c, root)) <=
                  1e-10 * max_abs * std::pow(1.0 + std::abs(root), 10.0));
        // Vieta: sum of roots = -c9/c10
        cdouble sum{0.0, 0.0};
        for (const auto& root : roots) sum += root;
        CHECK(std::abs(sum + c[9] / c[10]) <= 1e-8 * (1.0 + std::abs(c[9] / c[10])));
    }
}

TEST_CASE("poly_roots: degenerate leading coefficient rejected") {
    CHECK_THROWS_AS(poly_roots({cdouble{1.0, 0.0}, cdouble{1.0, 0.0}, cdouble{1e-14, 0.0}}),
                    DegenerateLeadingCoefficientError);
}

TEST_CASE("zero_report: degree, Vieta, residuals at the inversion cusp") {
    ZeroReport rep = zero_report(delta(), make_cusp(0, 1));
    REQUIRE(rep.roots.size() == 10);
    for (double res : rep.residuals) CHECK(res <= 1e-8);
}

TEST_CASE("zero_report: roots cluster near a/c for large c") {
    for (std::int64_t c : {101ll, 251ll}) {
        ZeroReport rep = zero_report(delta(), make_cusp(1, c));
        REQUIRE(rep.roots.size() == 10);
        double bound = 3.0 * std::pow(1.0 + 1.0 / static_cast<double>(c), 0.9) *
                       std::pow(static_cast<double>(c), -0.2);
        for (double dev : rep.deviations) CHECK(dev <= bound);
        CHECK(rep.max_normalized_ratio <= 3.0);

        // Vieta on the monic-normalized polynomial: sum of roots = -b~_9
        cdouble sum{0.0, 0.0};
        for (const auto& r : rep.roots) sum += r;
        // model: -b~_9 = C(10,9) (a/c) + O(c^{-2}); checked loosely
        CHECK(std::abs(sum - 10.0 * rep.cusp.value()) <= 1e-2);
    }
}

TEST_CASE("zero_report: coefficient model residuals bounded") {
    ZeroReport rep = zero_report(delta(), make_cusp(3, 101));
    // b~_i = (-1)^i C(10,i)(a/c)^{10-i} + O(|a/c|^{9-i} c^{-2}): the observed
    // ratios against that error scale stay bounded by a modest constant
    for (double ratio : rep.coefficient_model_ratios) CHECK(ratio <= 50.0);
}

TEST_CASE("zero_report: deviations shrink as c grows (trend)") {
    double prev = 1e9;
    for (std::int64_t c : {11ll, 101ll, 1009ll}) {
        ZeroReport rep = zero_report(delta(), make_cusp(1, c));
        double max_dev = 0.0;
        for (double d : rep.deviations) max_dev = std::max(max_dev, d);
        CHECK(max_dev < prev);
        prev = max_dev;
    }
}

TEST_CASE("zero_report: weight and eigenform preconditions") {
    std::vector<BigInt> coeffs{BigInt(1), BigInt(5)};
    QExpansion noteigen(12, 1, coeffs, false);
    CHECK_THROWS_AS(zero_report(noteigen, make_cusp(0, 1)), UnsupportedWeightError);
}

TEST_CASE("nonvanishing: L(x, k-1) stays in the window around its leading term") {
    // the n >= 2 tail of L(f x e(x), 11) is at most zeta(5.5)^2 - 1 < 0.8, so
    // |L - e(x) a(1)| is small and |L| is pinned inside [0.2, 1.8]
    for (int i = 0; i < 50; ++i) {
        double x = (i + 0.5) / 50.0;
        LValue lv = ltwist_series(delta(), x, cdouble(11.0, 0.0), 1e-10);
        cdouble lead(std::cos(2.0 * M_PI * x), std::sin(2.0 * M_PI * x));
        CHECK(std::abs(lv.value - lead) <= 0.8);
        CHECK(std::abs(lv.value) >= 0.2);
        CHECK(std::abs(lv.value) <= 1.8);
    }
}
