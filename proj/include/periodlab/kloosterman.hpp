#ifndef PERIODLAB_KLOOSTERMAN_HPP
#define PERIODLAB_KLOOSTERMAN_HPP

// Classical Kloosterman sums S(m,n;c) = sum_{d mod c, (d,c)=1} e((m d + n d^-1)/c),
// Ramanujan sums via the divisor formula, Weil-bound certification, and the
// moduli-sum cancellation experiment over c = 0 mod N.
//
// S(m,n;c) is real (pair d with -d), so the imaginary part is tracked only as
// a rounding diagnostic.  |S| <= phi(c) trivially.

#include <complex>
#include <cstdint>
#include <vector>

namespace periodlab {

struct KloostermanValue {
    std::int64_t m = 0, n = 0, c = 1;
    double value = 0.0;           // real part of the exponential sum
    double imag_residual = 0.0;   // |imaginary part| (rounding only)
    double rounding_error = 0.0;  // bound on the accumulated float error
};

// Unit group of Z/c with inverses, built gcd-free: prime-modulus inverse
// recurrence, Newton lifting to prime powers, CRT recombination.
struct UnitTable {
    std::uint32_t c = 1;
    std::vector<std::uint32_t> units;
    std::vector<std::uint32_t> inverses;  // inverses[i] * units[i] = 1 mod c
};

UnitTable build_unit_table(std::uint32_t c);

KloostermanValue kloosterman_sum(std::int64_t m, std::int64_t n, std::int64_t c);

// Batched: S(m,n;c) for all (m,n) in [0,mmax] x [0,nmax], one table build.
// Result indexed [m * (nmax+1) + n].
std::vector<KloostermanValue> kloosterman_rectangle(std::int64_t mmax, std::int64_t nmax,
                                                    std::int64_t c);

// S(m,0;c) exactly: sum over d | gcd(m,c) of d * mu(c/d)
std::int64_t ramanujan_sum(std::int64_t m, std::int64_t c);

struct WeilCheck {
    std::int64_t m = 0, n = 0, c = 1;
    double sum_abs = 0.0;
    double bound = 0.0;  // d(c) sqrt(c) sqrt(gcd(m,n,c))
    double slack = 0.0;  // bound - |S|
    bool holds = false;  // slack >= -1e-6
};

WeilCheck weil_check(std::int64_t m, std::int64_t n, std::int64_t c);

struct ModuliPartialSumRow {
    std::int64_t x = 0;           // checkpoint X'
    double partial_sum = 0.0;     // sum_{c <= X', N | c} S(m,n;c)
    double exponent_estimate = 0.0;  // log |sum| / log X'
};

// Running sums at (roughly) geometrically spaced checkpoints plus the final X.
std::vector<ModuliPartialSumRow> moduli_partial_sums(std::int64_t m, std::int64_t n,
                                                     std::int64_t x_max, std::int64_t level);

}  // namespace periodlab

#endif
