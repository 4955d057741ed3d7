#ifndef PERIODLAB_MOMENTS_HPP
#define PERIODLAB_MOMENTS_HPP

// Mixed moments of normalized periods over Omega_c against their closed-form
// main term, and the empirical distribution against the limit law.
//
// Main term: the (alpha, beta)-moment of the normalized period vector is
//     L_{f,alpha,beta}(k-1) / (1 + sum_j j (alpha_j + beta_j)) + o(1),
// where L_{f,alpha,beta}(s) is the diagonal Dirichlet series
//     sum over n_1..n_{alpha+beta} with n_1+..+n_alpha = n_{alpha+1}+..+n_{alpha+beta}
//     of prod a(n_i) / prod n_i^s
//     = int_0^1 L(f (x) e(x), s)^alpha conj(L)^beta dx.
// Both routes are implemented (tuple convolution vs midpoint quadrature) and
// serve as each other's oracle.
//
// Limit law: F(y,z) = L(f (x) e(y), k-1) (1, z, ..., z^{k-2}) with y, z
// uniform on [0,1); samples are drawn on midpoint grids and compared to the
// empirical vectors via two-sample Kolmogorov-Smirnov distances on 1-D
// projections.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "periodlab/cusps.hpp"
#include "periodlab/periods.hpp"
#include "periodlab/qexpansion.hpp"

namespace periodlab {

struct MomentSpec {
    std::vector<unsigned> alpha;  // alpha_0..alpha_{k-2}
    std::vector<unsigned> beta;

    MomentSpec(std::vector<unsigned> a, std::vector<unsigned> b);
    static MomentSpec zeros(int weight);  // all-zero template (invalid until set)

    unsigned alpha_total() const;
    unsigned beta_total() const;
    unsigned n_exponent() const;  // sum_j j (alpha_j + beta_j)
    void validate() const;        // not all zero, sizes match
    std::string label() const;    // "a0=1,b0=1" style
};

// Diagonal series at s = k-1 by per-index-truncated tuple convolution.
std::complex<double> lfab_diagonal(const QExpansion& f, const MomentSpec& spec, double tol);

// Midpoint-rule average of L(f (x) e(x), k-1)^{alpha, beta} over [0,1).
std::complex<double> lfab_quadrature(const QExpansion& f, const MomentSpec& spec,
                                     std::size_t grid_points);

struct EmpiricalSample {
    Cusp cusp;
    std::vector<std::complex<double>> u_tilde;  // normalized period vector
};

// One Omega_c sweep: a single CuspPlan shared across all numerators, phase
// sums computed once per unit, vectors assembled per cusp.  This is the hot
// path; sweeps parallelize over units with deterministic output.
class PeriodSweep {
public:
    PeriodSweep(const QExpansion& f, std::int64_t c, const NormalizationConvention& conv,
                double tol);
    const std::vector<EmpiricalSample>& samples() const { return samples_; }
    std::int64_t modulus() const { return c_; }
    int weight() const { return k_; }
    double max_error_bound() const { return max_err_; }

private:
    std::int64_t c_;
    int k_;
    double max_err_ = 0.0;
    std::vector<EmpiricalSample> samples_;
};

struct MomentReport {
    MomentSpec spec;
    std::int64_t c = 1;
    std::complex<double> empirical{0.0, 0.0};
    std::complex<double> main_term{0.0, 0.0};
    double abs_error = 0.0;
    double normalized_error = 0.0;  // abs_error * c^{1/6}
};

MomentReport empirical_moment(const QExpansion& f, std::int64_t c, const MomentSpec& spec,
                              const NormalizationConvention& conv);
// sweep-reusing variant (main term passed in so sweeps amortize across specs)
MomentReport empirical_moment(const PeriodSweep& sweep, const MomentSpec& spec,
                              std::complex<double> main_series_value);

struct LimitSample {
    double y = 0.0, z = 0.0;
    std::vector<std::complex<double>> entries;  // conv-scaled F(y,z)
};

// F on the midpoint grid of [0,1)^2, scaled so samples are directly
// comparable with normalized periods under the same convention (the
// calibrated sign and any constant ratio are folded in).
std::vector<LimitSample> sample_limit_law(const QExpansion& f, std::size_t grid_y,
                                          std::size_t grid_z,
                                          const NormalizationConvention& conv);

enum class ProjectionKind { re_u, im_u, abs_ratio };
struct Projection {
    ProjectionKind kind = ProjectionKind::re_u;
    int j = 0;  // entry index; abs_ratio uses |u_j / u_0|
};
Projection parse_projection(const std::string& name);  // re_u0, im_u1, absratio1, ...
std::string projection_name(const Projection& p);

std::vector<double> project_samples(const std::vector<EmpiricalSample>& samples,
                                    const Projection& p);
std::vector<double> project_limit(const std::vector<LimitSample>& samples, const Projection& p);

struct Histogram {
    double lo = 0.0, hi = 1.0;
    std::vector<std::int64_t> counts;
    std::size_t total = 0;
};
Histogram make_histogram(const std::vector<double>& values, int bins,
                         std::optional<double> lo = std::nullopt,
                         std::optional<double> hi = std::nullopt);

// two-sample Kolmogorov-Smirnov statistic sup |F_1 - F_2|
double ks_distance(std::vector<double> a, std::vector<double> b);

// histogram of one projection of the normalized periods over Omega_c, with
// the raw projected samples kept for KS comparisons against the limit law
struct DistributionReport {
    std::int64_t c = 1;
    Projection projection;
    Histogram histogram;
    std::vector<double> samples;
};

DistributionReport empirical_distribution(const QExpansion& f, std::int64_t c,
                                          const Projection& proj, int bins,
                                          const NormalizationConvention& conv);
DistributionReport empirical_distribution(const PeriodSweep& sweep, const Projection& proj,
                                          int bins);

}  // namespace periodlab

#endif
