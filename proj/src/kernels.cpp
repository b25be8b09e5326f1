#include "coslab/kernels.hpp"

#include <atomic>
#include <cstring>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coslab::kernels {

namespace {
std::atomic<bool> g_parallel_enabled{true};
} // namespace

bool openmp_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

bool parallel_enabled() { return openmp_available() && g_parallel_enabled.load(); }

void set_parallel_enabled(bool on) { g_parallel_enabled.store(on); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int openmp_dim_threshold() { return 32; }

namespace {

inline void matmul_row(const cdouble* a, const cdouble* b, cdouble* c, int n, int i) {
    cdouble* ci = c + static_cast<std::size_t>(i) * n;
    const cdouble* ai = a + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j)
        ci[j] = cdouble(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
        const cdouble aik = ai[k];
        const cdouble* bk = b + static_cast<std::size_t>(k) * n;
        for (int j = 0; j < n; ++j)
            ci[j] += aik * bk[j];
    }
}

} // namespace

void matmul_serial(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    for (int i = 0; i < n; ++i)
        matmul_row(a, b, c, n, i);
}

void matmul_openmp(const cdouble* a, const cdouble* b, cdouble* c, int n) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        matmul_row(a, b, c, n, i);
#else
    matmul_serial(a, b, c, n);
#endif
}

void matmul(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    if (parallel_enabled() && n >= openmp_dim_threshold() && max_threads() > 1)
        matmul_openmp(a, b, c, n);
    else
        matmul_serial(a, b, c, n);
}

void for_each_index(int n, const std::function<void(int)>& fn) {
#ifdef _OPENMP
    if (parallel_enabled() && n > 1 && max_threads() > 1) {
        std::exception_ptr first_error;
        std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
        if (first_error)
            std::rethrow_exception(first_error);
        return;
    }
#endif
    for (int i = 0; i < n; ++i)
        fn(i);
}

} // namespace coslab::kernels
