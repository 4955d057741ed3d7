#include <atomic>
#include <cstdlib>
#include <string>

#include "periodlab/errors.hpp"
#include "periodlab/kernels.hpp"

namespace periodlab::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(PERIODLAB_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend resolve_initial() {
    if (const char* env = std::getenv("PERIODLAB_KERNEL")) {
        std::string v = env;
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && cpu_has_avx2()) return Backend::avx2;
        if (v != "auto" && v != "avx2")
            return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& state() {
    static std::atomic<Backend> s{resolve_initial()};
    return s;
}

}  // namespace

Backend active_backend() { return state().load(std::memory_order_relaxed); }

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2: return cpu_has_avx2();
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw Error(std::string("kernel backend '") + backend_name(b) + "' not available on this machine");
    state().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    if (name == "auto") return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    throw UsageError("unknown kernel backend '" + std::string(name) + "' (auto|scalar|avx2)");
}

void multi_phase_dot(const double* weights, std::size_t count, std::size_t rows,
                     std::size_t row_stride, const double* table, std::size_t table_size,
                     std::size_t start, std::size_t step, std::complex<double>* out) {
#if defined(PERIODLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        detail::multi_phase_dot_avx2(weights, count, rows, row_stride, table, table_size, start,
                                     step, out);
        return;
    }
#endif
    detail::multi_phase_dot_scalar(weights, count, rows, row_stride, table, table_size, start, step,
                                   out);
}

std::complex<double> kloosterman_phase_sum(const std::uint32_t* units, const std::uint32_t* invs,
                                           std::size_t count, std::uint32_t m, std::uint32_t n,
                                           const double* table, std::uint32_t c) {
#if defined(PERIODLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2)
        return detail::kloosterman_phase_sum_avx2(units, invs, count, m, n, table, c);
#endif
    return detail::kloosterman_phase_sum_scalar(units, invs, count, m, n, table, c);
}

}  // namespace periodlab::kernels
