#ifndef PERIODLAB_KERNELS_HPP
#define PERIODLAB_KERNELS_HPP

// Inner-loop kernels for the sweep-heavy paths: phase-weighted dot products
// against a root-of-unity table (L-value sums at cusps) and gathered phase
// sums over unit groups (Kloosterman sums).
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime via cpuid.  The two variants accumulate in the
// same n-order, so they agree to a few ulps; the scalar one is the semantic
// reference and the equivalence is unit-tested.  Selection can be forced with
// set_backend() or the PERIODLAB_KERNEL environment variable
// (auto | scalar | avx2).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace periodlab::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);  // throws periodlab::Error if unavailable
const char* backend_name(Backend b);
Backend parse_backend(std::string_view name);  // "auto" resolves to best available

// table[2j] + i*table[2j+1] = e(j / table_size); built with conjugate symmetry
// so table[size-j] is exactly the conjugate of table[j].
std::vector<double> build_phase_table(std::size_t size);

// out[r] = sum_{t=0}^{count-1} weights[t*row_stride + r] * e(idx_t / table_size)
// with idx_0 = start, idx_{t+1} = (idx_t + step) mod table_size.
// Requires 0 <= start, step < table_size.  Weights are real, row-major with
// row_stride >= rows (callers pad row_stride to a multiple of 4 for speed).
void multi_phase_dot(const double* weights, std::size_t count, std::size_t rows,
                     std::size_t row_stride, const double* table, std::size_t table_size,
                     std::size_t start, std::size_t step, std::complex<double>* out);

// sum_i e((m*units[i] + n*invs[i]) / c); the Kloosterman inner loop.
// Requires m, n in [0, c) and units/invs entries in [0, c).
std::complex<double> kloosterman_phase_sum(const std::uint32_t* units, const std::uint32_t* invs,
                                           std::size_t count, std::uint32_t m, std::uint32_t n,
                                           const double* table, std::uint32_t c);

// Reference implementations, exposed for equivalence tests.
namespace detail {
void multi_phase_dot_scalar(const double* weights, std::size_t count, std::size_t rows,
                            std::size_t row_stride, const double* table, std::size_t table_size,
                            std::size_t start, std::size_t step, std::complex<double>* out);
std::complex<double> kloosterman_phase_sum_scalar(const std::uint32_t* units,
                                                  const std::uint32_t* invs, std::size_t count,
                                                  std::uint32_t m, std::uint32_t n,
                                                  const double* table, std::uint32_t c);
#if defined(PERIODLAB_HAVE_AVX2)
void multi_phase_dot_avx2(const double* weights, std::size_t count, std::size_t rows,
                          std::size_t row_stride, const double* table, std::size_t table_size,
                          std::size_t start, std::size_t step, std::complex<double>* out);
std::complex<double> kloosterman_phase_sum_avx2(const std::uint32_t* units,
                                                const std::uint32_t* invs, std::size_t count,
                                                std::uint32_t m, std::uint32_t n,
                                                const double* table, std::uint32_t c);
#endif
}  // namespace detail

}  // namespace periodlab::kernels

#endif
