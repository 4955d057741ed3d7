// AVX2 variants of the sweep kernels.  Compiled with -mavx2 -mfma on x86-64
// only; callers reach these through the runtime dispatcher.
// multi_phase_dot accumulates in the same n order as the scalar reference
// (FMA rounding is the only difference); kloosterman_phase_sum splits the sum
// across four lanes.  Both equivalences are unit-tested to tolerance.

#if defined(PERIODLAB_HAVE_AVX2)

#include <immintrin.h>

#include "periodlab/kernels.hpp"

namespace periodlab::kernels::detail {

namespace {

// rows handled in compile-time chunks of 4 so the accumulators stay in ymm
// registers across the whole n loop.
template <int CH>
void mpd_chunks(const double* weights, std::size_t count, std::size_t row_stride,
                const double* table, std::size_t table_size, std::size_t start, std::size_t step,
                double* acc_re, double* acc_im) {
    __m256d are[CH], aim[CH];
    for (int j = 0; j < CH; ++j) {
        are[j] = _mm256_setzero_pd();
        aim[j] = _mm256_setzero_pd();
    }
    std::size_t idx = start;
    for (std::size_t t = 0; t < count; ++t) {
        const __m256d re = _mm256_broadcast_sd(table + 2 * idx);
        const __m256d im = _mm256_broadcast_sd(table + 2 * idx + 1);
        const double* w = weights + t * row_stride;
        for (int j = 0; j < CH; ++j) {
            const __m256d wv = _mm256_loadu_pd(w + 4 * j);
            are[j] = _mm256_fmadd_pd(wv, re, are[j]);
            aim[j] = _mm256_fmadd_pd(wv, im, aim[j]);
        }
        idx += step;
        if (idx >= table_size) idx -= table_size;
    }
    for (int j = 0; j < CH; ++j) {
        _mm256_storeu_pd(acc_re + 4 * j, are[j]);
        _mm256_storeu_pd(acc_im + 4 * j, aim[j]);
    }
}

}  // namespace

void multi_phase_dot_avx2(const double* weights, std::size_t count, std::size_t rows,
                          std::size_t row_stride, const double* table, std::size_t table_size,
                          std::size_t start, std::size_t step, std::complex<double>* out) {
    const std::size_t chunks = rows / 4;
    const std::size_t tail = rows % 4;
    double acc_re[32], acc_im[32];

    if (chunks > 0 && row_stride >= chunks * 4 && chunks <= 8) {
        switch (chunks) {
            case 1: mpd_chunks<1>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            case 2: mpd_chunks<2>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            case 3: mpd_chunks<3>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            case 4: mpd_chunks<4>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            case 5: mpd_chunks<5>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            case 6: mpd_chunks<6>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            case 7: mpd_chunks<7>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
            default: mpd_chunks<8>(weights, count, row_stride, table, table_size, start, step, acc_re, acc_im); break;
        }
        for (std::size_t r = 0; r < chunks * 4; ++r) out[r] = {acc_re[r], acc_im[r]};
    } else if (chunks > 0) {
        // rows too wide for the register budget: fall back entirely
        multi_phase_dot_scalar(weights, count, rows, row_stride, table, table_size, start, step, out);
        return;
    }

    if (tail > 0) {
        // scalar tail rows (same n order)
        std::size_t base = chunks * 4;
        for (std::size_t r = 0; r < tail; ++r) out[base + r] = {0.0, 0.0};
        std::size_t idx = start;
        for (std::size_t t = 0; t < count; ++t) {
            const double re = table[2 * idx], im = table[2 * idx + 1];
            const double* w = weights + t * row_stride + base;
            for (std::size_t r = 0; r < tail; ++r)
                out[base + r] += std::complex<double>(w[r] * re, w[r] * im);
            idx += step;
            if (idx >= table_size) idx -= table_size;
        }
    }
}

std::complex<double> kloosterman_phase_sum_avx2(const std::uint32_t* units,
                                                const std::uint32_t* invs, std::size_t count,
                                                std::uint32_t m, std::uint32_t n,
                                                const double* table, std::uint32_t c) {
    // Exactness of the double products needs (m + n) * c < 2^52; larger inputs
    // (never hit at desk scale) take the scalar path.
    if ((static_cast<std::uint64_t>(m) + n + 1) * c >= (1ull << 52) || c >= (1u << 30) || count < 8)
        return kloosterman_phase_sum_scalar(units, invs, count, m, n, table, c);

    const __m256d vm = _mm256_set1_pd(static_cast<double>(m));
    const __m256d vn = _mm256_set1_pd(static_cast<double>(n));
    const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
    const __m256d vinv_c = _mm256_set1_pd(1.0 / static_cast<double>(c));
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m128i ui = _mm_loadu_si128(reinterpret_cast<const __m128i*>(units + i));
        __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(invs + i));
        // entries < c < 2^30, so the int32 -> double conversion is exact
        __m256d ud = _mm256_cvtepi32_pd(ui);
        __m256d vd = _mm256_cvtepi32_pd(vi);
        __m256d s = _mm256_fmadd_pd(vn, vd, _mm256_mul_pd(vm, ud));
        // s mod c: quotient estimate can be off by one either way
        __m256d q = _mm256_floor_pd(_mm256_mul_pd(s, vinv_c));
        __m256d r = _mm256_fnmadd_pd(q, vc, s);
        __m256d too_big = _mm256_cmp_pd(r, vc, _CMP_GE_OQ);
        r = _mm256_sub_pd(r, _mm256_and_pd(too_big, vc));
        __m256d neg = _mm256_cmp_pd(r, zero, _CMP_LT_OQ);
        r = _mm256_add_pd(r, _mm256_and_pd(neg, vc));
        // gather table[2r] and table[2r+1]
        __m128i idx = _mm256_cvtpd_epi32(_mm256_add_pd(r, r));
        __m256d tre = _mm256_i32gather_pd(table, idx, 8);
        __m256d tim = _mm256_i32gather_pd(table + 1, idx, 8);
        acc_re = _mm256_add_pd(acc_re, tre);
        acc_im = _mm256_add_pd(acc_im, tim);
    }

    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = im4[0] + im4[1] + im4[2] + im4[3];
    for (; i < count; ++i) {
        std::uint64_t idx =
            (static_cast<std::uint64_t>(m) * units[i] + static_cast<std::uint64_t>(n) * invs[i]) % c;
        re += table[2 * idx];
        im += table[2 * idx + 1];
    }
    return {re, im};
}

}  // namespace periodlab::kernels::detail

#endif  // PERIODLAB_HAVE_AVX2
