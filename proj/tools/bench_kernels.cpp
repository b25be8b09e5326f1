// Benchmark: serial reference kernels vs the OpenMP variants.
//
// Two layers are compared: the dense complex matmul kernel itself (parallel
// over rows) and the trial-sweep driver that the verification suites run on
// (parallel over independent trials). Outputs one line per configuration.

#include <chrono>
#include <cstdio>
#include <vector>

#include "coslab/complex_matrix.hpp"
#include "coslab/eigen.hpp"
#include "coslab/kernels.hpp"
#include "coslab/random.hpp"
#include "coslab/rng.hpp"
#include "coslab/sqrt_series.hpp"

using namespace coslab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_matmul(int dim, int reps) {
    Rng rng(1234);
    const Matrix a = random_matrix(rng, dim);
    const Matrix b = random_matrix(rng, dim);
    Matrix c(dim);

    const auto t_serial = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        kernels::matmul_serial(a.data().data(), b.data().data(), c.data().data(), dim);
    const double serial = seconds_since(t_serial);

    Matrix c2(dim);
    const auto t_omp = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        kernels::matmul_openmp(a.data().data(), b.data().data(), c2.data().data(), dim);
    const double omp = seconds_since(t_omp);

    const bool identical = c == c2;
    std::printf("matmul dim=%-3d reps=%-6d serial=%8.4fs openmp=%8.4fs speedup=%5.2fx %s\n",
                dim, reps, serial, omp, serial / omp,
                identical ? "bit-identical" : "MISMATCH");
}

void bench_trials(int trials) {
    // A verification-shaped workload: series square roots of random matrices.
    std::vector<double> out_serial(trials), out_parallel(trials);

    kernels::set_parallel_enabled(false);
    const auto t_serial = std::chrono::steady_clock::now();
    kernels::for_each_index(trials, [&](int i) {
        Rng rng = Rng::for_trial(99, i);
        const Matrix x = random_matrix_with_norm(rng, 6, rng.uniform(0.0, 0.95));
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
        out_serial[i] = operator_norm(r.value);
    });
    const double serial = seconds_since(t_serial);

    kernels::set_parallel_enabled(true);
    const auto t_par = std::chrono::steady_clock::now();
    kernels::for_each_index(trials, [&](int i) {
        Rng rng = Rng::for_trial(99, i);
        const Matrix x = random_matrix_with_norm(rng, 6, rng.uniform(0.0, 0.95));
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
        out_parallel[i] = operator_norm(r.value);
    });
    const double par = seconds_since(t_par);

    bool identical = true;
    for (int i = 0; i < trials; ++i)
        if (out_serial[i] != out_parallel[i])
            identical = false;
    std::printf("trials  n=%-5d          serial=%8.4fs openmp=%8.4fs speedup=%5.2fx %s\n",
                trials, serial, par, serial / par,
                identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("threads available: %d (openmp %s)\n", kernels::max_threads(),
                kernels::openmp_available() ? "on" : "off");
    bench_matmul(8, 200000);
    bench_matmul(16, 40000);
    bench_matmul(32, 8000);
    bench_matmul(64, 1000);
    bench_trials(2000);
    return 0;
}
