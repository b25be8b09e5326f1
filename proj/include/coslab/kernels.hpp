#pragma once

#include <complex>
#include <functional>

namespace coslab::kernels {

using cdouble = std::complex<double>;

// Dense complex matrix product, row-major n x n buffers. `c` must not alias
// `a` or `b`. Both variants accumulate each output entry over k in ascending
// order, so the parallel kernel is bit-identical to the serial reference.
void matmul_serial(const cdouble* a, const cdouble* b, cdouble* c, int n);
void matmul_openmp(const cdouble* a, const cdouble* b, cdouble* c, int n);

// Dispatching entry point used by the Matrix type: picks the OpenMP kernel for
// dimensions at or above openmp_dim_threshold() when parallelism is enabled.
void matmul(const cdouble* a, const cdouble* b, cdouble* c, int n);

// Runs fn(0..n-1), in parallel when OpenMP is enabled. Results must be written
// to per-index storage by the caller; iteration order is unspecified. The first
// exception thrown by any index is captured and rethrown after the loop.
void for_each_index(int n, const std::function<void(int)>& fn);

bool openmp_available();
bool parallel_enabled();
void set_parallel_enabled(bool on);
int max_threads();
int openmp_dim_threshold();

} // namespace coslab::kernels
