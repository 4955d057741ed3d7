#ifndef PERIODLAB_QEXPANSION_HPP
#define PERIODLAB_QEXPANSION_HPP

// Cusp forms as exact integer q-expansions.
//
// A QExpansion holds the weight k, the level N, and the Fourier coefficients
// a(1..M) as exact integers.  Everything downstream (L-values, periods,
// moments) reads coefficients through here and converts to floating point at
// the last moment.  Instances are immutable after construction and safe to
// share across threads.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "periodlab/bigint.hpp"
#include "periodlab/errors.hpp"
#include "periodlab/series.hpp"

namespace periodlab {

class QExpansion {
public:
    // coeffs[i] = a(i+1); weight even >= 4, level >= 1.
    QExpansion(int weight, std::int64_t level, std::vector<BigInt> coeffs,
               bool normalized_eigenform);

    int weight() const { return weight_; }
    std::int64_t level() const { return level_; }
    std::size_t truncation() const { return coeffs_.size(); }
    bool is_normalized_eigenform() const { return eigenform_; }

    const BigInt& a(std::size_t n) const;       // 1-based; throws past truncation
    double a_double(std::size_t n) const { return a(n).to_double(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    // Functional-equation sign memo (0 = not yet calibrated).  Writing the
    // same value twice is harmless, so a relaxed atomic keeps the type
    // shareable without locking.
    int fe_sign_cached() const { return fe_sign_.load(std::memory_order_relaxed); }
    void cache_fe_sign(int s) const { fe_sign_.store(s, std::memory_order_relaxed); }

    QExpansion(const QExpansion& o)
        : weight_(o.weight_), level_(o.level_), coeffs_(o.coeffs_),
          eigenform_(o.eigenform_), fe_sign_(o.fe_sign_cached()) {}
    QExpansion& operator=(const QExpansion&) = delete;

private:
    int weight_;
    std::int64_t level_;
    std::vector<BigInt> coeffs_;
    bool eigenform_;
    mutable std::atomic<int> fe_sign_{0};
};

// q * prod_{n>=1} (1-q^n)^24 truncated at M, exact integers throughout.
QExpansion build_delta(std::size_t coeff_count);

// E_4 = 1 + 240 sum sigma_3(n) q^n,  E_6 = 1 - 504 sum sigma_5(n) q^n.
TruncatedSeries build_eisenstein(int w, std::size_t truncation);

// Delta * E_4^a * E_6^b for the weights where the cusp space is 1-dimensional,
// so the product is automatically the normalized eigenform.
QExpansion build_level_one_eigenform(int k, std::size_t coeff_count);

QExpansion load_form(const std::filesystem::path& path);
void save_form(const QExpansion& f, const std::filesystem::path& path);

struct BoundsReport {
    double deligne_max_ratio = 0.0;   // max |a(n)| / (d(n) n^{(k-1)/2})
    std::size_t deligne_argmax = 0;
    double hecke_max_ratio = 0.0;     // max over X of sum_{n<=X} |a(n)|^2 / X^k
    std::size_t hecke_argmax = 0;
};

// Report-only scan of the coefficient bounds (no pass/fail).
BoundsReport verify_coefficient_bounds(const QExpansion& f);

// Exact invariant verification: a(1) = 1, the Deligne bound as the exact
// rational inequality |a(n)|^2 <= d(n)^2 n^{k-1}, multiplicativity over all
// coprime pairs in range, and the Hecke recursion at prime powers.  Eigenform
// checks apply only when the flag is set.  Throws InvariantViolationError
// naming the failing index.
void validate_invariants(const QExpansion& f);

}  // namespace periodlab

#endif
