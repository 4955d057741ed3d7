#include <doctest.h>

#include <cmath>
#include <random>

#include "periodlab/moments.hpp"
#include "periodlab/threading.hpp"

using namespace periodlab;
using cdouble = std::complex<double>;

namespace {
const QExpansion& delta() {
    static QExpansion f = build_delta(6000);
    return f;
}

MomentSpec spec_of(std::initializer_list<std::pair<int, unsigned>> a,
                   std::initializer_list<std::pair<int, unsigned>> b) {
    MomentSpec s = MomentSpec::zeros(12);
    for (auto [j, v] : a) s.alpha[static_cast<std::size_t>(j)] = v;
    for (auto [j, v] : b) s.beta[static_cast<std::size_t>(j)] = v;
    return s;
}
}  // namespace

TEST_CASE("moment spec: derived quantities and validation") {
    MomentSpec s = spec_of({{0, 1}, {3, 2}}, {{1, 1}});
    CHECK(s.alpha_total() == 3);
    CHECK(s.beta_total() == 1);
    CHECK(s.n_exponent() == 0 * 1 + 3 * 2 + 1 * 1);
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(MomentSpec::zeros(12).validate(), Error);
}

TEST_CASE("lfab_diagonal: empty side vanishes") {
    CHECK(std::abs(lfab_diagonal(delta(), spec_of({{0, 1}}, {}), 1e-9)) == 0.0);
    CHECK(std::abs(lfab_diagonal(delta(), spec_of({}, {{4, 2}}), 1e-9)) == 0.0);
}

TEST_CASE("lfab_diagonal (1,1): direct summation oracle at two truncations") {
    // sum |a(n)|^2 / n^22 computed naively
    double o1 = 0.0, o2 = 0.0;
    for (std::size_t n = 1; n <= 400; ++n) {
        double an = delta().a_double(n);
        double term = an * an / std::pow(static_cast<double>(n), 22.0);
        if (n <= 200) o1 += term;
        o2 += term;
    }
    CHECK(std::fabs(o1 - o2) <= 1e-12);
    cdouble d = lfab_diagonal(delta(), spec_of({{0, 1}}, {{0, 1}}), 1e-10);
    CHECK(d.real() == doctest::Approx(o2).epsilon(1e-10));
    CHECK(d.imag() == 0.0);
    CHECK(d.real() == doctest::Approx(1.000139486).epsilon(1e-8));
}

TEST_CASE("lfab_diagonal: depends only on the exponent totals") {
    cdouble a = lfab_diagonal(delta(), spec_of({{0, 1}}, {{0, 1}}), 1e-10);
    cdouble b = lfab_diagonal(delta(), spec_of({{7, 1}}, {{2, 1}}), 1e-10);
    CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("lfab quadrature matches diagonal for the acceptance spec shapes") {
    for (auto [at, bt] : {std::pair<int, int>{1, 1}, {2, 1}, {2, 2}}) {
        MomentSpec s = MomentSpec::zeros(12);
        s.alpha[0] = static_cast<unsigned>(at);
        s.beta[0] = static_cast<unsigned>(bt);
        cdouble d = lfab_diagonal(delta(), s, 1e-8);
        cdouble q = lfab_quadrature(delta(), s, 1 << 13);
        CHECK(std::abs(d - q) <= 1e-6);
    }
}

TEST_CASE("lfab_quadrature: pure-alpha spec tends to zero and grid doubling is stable") {
    MomentSpec s = spec_of({{0, 1}}, {});
    cdouble q1 = lfab_quadrature(delta(), s, 1 << 12);
    CHECK(std::abs(q1) <= 1e-8);  // mean of an oscillating series with no constant term
    MomentSpec s2 = spec_of({{0, 1}}, {{0, 1}});
    cdouble a = lfab_quadrature(delta(), s2, 1 << 12);
    cdouble b = lfab_quadrature(delta(), s2, 1 << 13);
    CHECK(std::abs(a - b) <= 1e-8);
}

TEST_CASE("empirical moment: conjugating the spec conjugates the value") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    PeriodSweep sweep(delta(), 53, conv, 1e-10);
    MomentSpec s = spec_of({{1, 1}}, {{0, 1}});
    MomentSpec sc = spec_of({{0, 1}}, {{1, 1}});
    cdouble main = lfab_diagonal(delta(), s, 1e-9);
    MomentReport a = empirical_moment(sweep, s, main);
    MomentReport b = empirical_moment(sweep, sc, std::conj(main));
    CHECK(std::abs(a.empirical - std::conj(b.empirical)) <= 1e-12);
}

TEST_CASE("empirical moment: main term and denominator law") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    cdouble l11 = lfab_diagonal(delta(), spec_of({{0, 1}}, {{0, 1}}), 1e-9);

    MomentReport r0 = empirical_moment(delta(), 251, spec_of({{0, 1}}, {{0, 1}}), conv);
    CHECK(std::abs(r0.main_term - l11) <= 1e-12);
    CHECK(r0.abs_error <= 0.01);

    // moving the (1,1) pair to j = 1 divides the main term by 3 exactly
    MomentReport r1 = empirical_moment(delta(), 251, spec_of({{1, 1}}, {{1, 1}}), conv);
    CHECK(std::abs(r1.main_term - l11 / 3.0) <= 1e-12);
    CHECK(r1.abs_error <= 0.02);

    // first moment: empty diagonal, so the main term vanishes
    MomentReport rf = empirical_moment(delta(), 251, spec_of({{0, 1}}, {}), conv);
    CHECK(std::abs(rf.main_term) == 0.0);
    CHECK(std::abs(rf.empirical) <= 0.05);
}

TEST_CASE("sweep: samples count phi(c) and entries match per-cusp assembly") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    PeriodSweep sweep(delta(), 20, conv, 1e-10);
    REQUIRE(sweep.samples().size() == 8);  // phi(20)
    for (const auto& s : sweep.samples()) {
        PeriodVector direct = normalized_period_vector(delta(), s.cusp, conv, 1e-10);
        for (std::size_t l = 0; l < direct.entries.size(); ++l)
            CHECK(std::abs(direct.entries[l] - s.u_tilde[l]) <= 1e-12);
    }
}

TEST_CASE("sweep determinism under thread count") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    set_thread_count(1);
    PeriodSweep s1(delta(), 151, conv, 1e-10);
    set_thread_count(4);
    PeriodSweep s4(delta(), 151, conv, 1e-10);
    set_thread_count(1);
    REQUIRE(s1.samples().size() == s4.samples().size());
    for (std::size_t i = 0; i < s1.samples().size(); ++i)
        for (std::size_t l = 0; l < s1.samples()[i].u_tilde.size(); ++l)
            CHECK(s1.samples()[i].u_tilde[l] == s4.samples()[i].u_tilde[l]);
}

TEST_CASE("limit law: structure of the samples") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    auto samples = sample_limit_law(delta(), 40, 8, conv);
    REQUIRE(samples.size() == 320);
    for (const auto& s : samples) {
        // entry_j / entry_0 = z^j exactly
        for (int j : {1, 5, 10}) {
            cdouble ratio = s.entries[static_cast<std::size_t>(j)] / s.entries[0];
            CHECK(std::abs(ratio - std::pow(cdouble(s.z, 0.0), j)) <= 1e-12);
        }
        // |entry_0| within the nonvanishing window around 1
        CHECK(std::abs(s.entries[0]) >= 0.2);
        CHECK(std::abs(s.entries[0]) <= 1.8);
    }
}

TEST_CASE("ks distance: sanity on known configurations") {
    CHECK(ks_distance({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) <= 1.0 / 3.0 + 1e-12);
    double d = ks_distance({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    CHECK(d == doctest::Approx(1.0));
    // same distribution sampled twice: distance small
    std::mt19937_64 rng(4);
    std::vector<double> a(4000), b(4000);
    for (auto& v : a) v = static_cast<double>(rng() % 100000) / 100000.0;
    for (auto& v : b) v = static_cast<double>(rng() % 100000) / 100000.0;
    CHECK(ks_distance(a, b) <= 0.05);
}

TEST_CASE("empirical distribution approaches the limit law") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    PeriodSweep sweep(delta(), 251, conv, 1e-10);
    auto limit = sample_limit_law(delta(), 2000, 1, conv);
    Projection proj{ProjectionKind::re_u, 0};
    double ks = ks_distance(project_samples(sweep.samples(), proj), project_limit(limit, proj));
    CHECK(ks <= 0.05);
    // c = 1: single-point sample set still projects fine
    PeriodSweep trivial(delta(), 1, conv, 1e-10);
    auto one = project_samples(trivial.samples(), proj);
    REQUIRE(one.size() == 1);
}

TEST_CASE("empirical distribution reports") {
    NormalizationConvention conv = NormalizationConvention::calibrated(delta());
    DistributionReport rep = empirical_distribution(delta(), 101, Projection{ProjectionKind::re_u, 0},
                                                    20, conv);
    CHECK(rep.histogram.total == 100);  // phi(101)
    std::int64_t covered = 0;
    for (auto n : rep.histogram.counts) covered += n;
    CHECK(covered == 100);

    // |u~_j / u~_0| tracks (a/c)^j through the dominant term: for j = 1 the
    // projected samples approximate the numerators a/c themselves
    PeriodSweep sweep(delta(), 101, conv, 1e-10);
    DistributionReport ratio = empirical_distribution(sweep, parse_projection("absratio1"), 10);
    for (std::size_t i = 0; i < sweep.samples().size(); ++i) {
        double expect = sweep.samples()[i].cusp.value();
        CHECK(std::fabs(ratio.samples[i] - expect) <= 0.05);
    }

    // c = 1: single-point histogram
    DistributionReport one = empirical_distribution(delta(), 1, Projection{ProjectionKind::re_u, 0},
                                                    5, conv);
    CHECK(one.histogram.total == 1);
}

TEST_CASE("histogram: deterministic binning") {
    Histogram h = make_histogram({0.0, 0.25, 0.5, 0.75, 1.0}, 4, 0.0, 1.0);
    CHECK(h.total == 5);
    CHECK(h.counts[0] == 1);
    CHECK(h.counts[3] == 2);  // 0.75 and the top edge clamp
}

TEST_CASE("projection parsing round-trip") {
    for (const char* name : {"re_u0", "im_u3", "absratio1"}) {
        Projection p = parse_projection(name);
        CHECK(projection_name(p) == name);
    }
    CHECK_THROWS_AS(parse_projection("bogus"), UsageError);
}
