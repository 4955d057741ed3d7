#include <cmath>
#include <numbers>

#include "periodlab/kernels.hpp"

namespace periodlab::kernels {

std::vector<double> build_phase_table(std::size_t size) {
    std::vector<double> t(2 * size);
    const double w = 2.0 * std::numbers::pi / static_cast<double>(size);
    std::size_t half = size / 2;
    for (std::size_t j = 0; j <= half; ++j) {
        double re = std::cos(w * static_cast<double>(j));
        double im = std::sin(w * static_cast<double>(j));
        t[2 * j] = re;
        t[2 * j + 1] = im;
        if (j != 0 && size - j != j) {
            t[2 * (size - j)] = re;
            t[2 * (size - j) + 1] = -im;
        }
    }
    if (size % 2 == 0 && size >= 2) t[2 * half + 1] = 0.0;  // e(1/2) exactly real
    return t;
}

namespace detail {

void multi_phase_dot_scalar(const double* weights, std::size_t count, std::size_t rows,
                            std::size_t row_stride, const double* table, std::size_t table_size,
                            std::size_t start, std::size_t step, std::complex<double>* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = {0.0, 0.0};
    std::size_t idx = start;
    for (std::size_t t = 0; t < count; ++t) {
        const double re = table[2 * idx], im = table[2 * idx + 1];
        const double* w = weights + t * row_stride;
        for (std::size_t r = 0; r < rows; ++r) {
            out[r] += std::complex<double>(w[r] * re, w[r] * im);
        }
        idx += step;
        if (idx >= table_size) idx -= table_size;
    }
}

std::complex<double> kloosterman_phase_sum_scalar(const std::uint32_t* units,
                                                  const std::uint32_t* invs, std::size_t count,
                                                  std::uint32_t m, std::uint32_t n,
                                                  const double* table, std::uint32_t c) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t idx =
            (static_cast<std::uint64_t>(m) * units[i] + static_cast<std::uint64_t>(n) * invs[i]) % c;
        re += table[2 * idx];
        im += table[2 * idx + 1];
    }
    return {re, im};
}

}  // namespace detail
}  // namespace periodlab::kernels
