#include "coslab/chebyshev.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdint>

#include "coslab/errors.hpp"

namespace coslab {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

void require_degree(int n) {
    if (n < 0)
        throw invalid_input_error("chebyshev: degree must be >= 0");
    if (n > kChebMaxDegree)
        throw invalid_input_error("chebyshev: degree capped at 64");
}

// binomial(n, k) for n <= 66 fits in a signed 64-bit integer; the running
// product is exact at every step and the 128-bit intermediate cannot overflow.
std::int64_t binomial64(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    __int128 result = 1;
    for (int i = 1; i <= k; ++i)
        result = result * (n - k + i) / i;
    return static_cast<std::int64_t>(result);
}

} // namespace

ChebCoeffs ChebCoeffs::make(int n) {
    require_degree(n);
    // Integer three-term recurrence on coefficient arrays.
    std::vector<BigInt> prev{BigInt(1)};        // T_0
    if (n == 0)
        return {0, prev};
    std::vector<BigInt> cur{BigInt(0), BigInt(1)}; // T_1
    for (int k = 1; k < n; ++k) {
        std::vector<BigInt> next(k + 2, BigInt(0));
        for (int i = 0; i <= k; ++i)
            next[i + 1] += 2 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {n, cur};
}

cdouble cheb_explicit(int n, cdouble x) {
    require_degree(n);
    if (n == 0)
        return {1.0, 0.0};
    const cdouble m = x * x - cdouble(1.0, 0.0);
    cdouble sum(0.0, 0.0);
    cdouble mk(1.0, 0.0); // (x^2-1)^k
    // x^(n-2k) recomputed from a power table to keep the loop simple.
    std::vector<cdouble> xp(n + 1);
    xp[0] = {1.0, 0.0};
    for (int i = 1; i <= n; ++i)
        xp[i] = xp[i - 1] * x;
    for (int k = 0; 2 * k <= n; ++k) {
        const double c = static_cast<double>(binomial64(n, 2 * k));
        sum += c * xp[n - 2 * k] * mk;
        mk *= m;
    }
    return sum;
}

Matrix cheb_explicit(int n, const Matrix& x) {
    require_degree(n);
    const int dim = x.dim();
    if (n == 0)
        return Matrix::identity(dim);
    const Matrix m = x * x - Matrix::identity(dim);
    std::vector<Matrix> xp;
    xp.reserve(n + 1);
    xp.push_back(Matrix::identity(dim));
    for (int i = 1; i <= n; ++i)
        xp.push_back(xp.back() * x);
    Matrix sum(dim);
    Matrix mk = Matrix::identity(dim);
    for (int k = 0; 2 * k <= n; ++k) {
        const double c = static_cast<double>(binomial64(n, 2 * k));
        sum += xp[n - 2 * k] * mk * cdouble(c, 0.0);
        if (2 * (k + 1) <= n)
            mk = mk * m;
    }
    return sum;
}

cdouble cheb_recurrence(int n, cdouble x) {
    if (n < 0)
        throw invalid_input_error("cheb_recurrence: degree must be >= 0");
    cdouble prev(1.0, 0.0);
    if (n == 0)
        return prev;
    cdouble cur = x;
    for (int k = 1; k < n; ++k) {
        const cdouble next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Matrix cheb_recurrence(int n, const Matrix& x) {
    if (n < 0)
        throw invalid_input_error("cheb_recurrence: degree must be >= 0");
    Matrix prev = Matrix::identity(x.dim());
    if (n == 0)
        return prev;
    Matrix cur = x;
    for (int k = 1; k < n; ++k) {
        Matrix next = x * cur * cdouble(2.0, 0.0) - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Matrix extend_cosine_sequence(const Matrix& c1, long n) {
    const long mag = n < 0 ? -n : n;
    if (mag > kChebMaxDegree)
        throw invalid_input_error("extend_cosine_sequence: |n| capped at 64");
    return cheb_recurrence(static_cast<int>(mag), c1);
}

double cheb_norm_bound(int n, double m) {
    if (m < 0.0 || !std::isfinite(m))
        throw invalid_input_error("cheb_norm_bound: M must be finite and >= 0");
    const ChebCoeffs coeffs = ChebCoeffs::make(n);
    BigFloat sum = 0;
    BigFloat mk = 1;
    const BigFloat mf(m);
    double partial = 0.0;
    for (int k = 0; k <= n; ++k) {
        sum += BigFloat(abs(coeffs.coeffs[k])) * mk;
        const double as_double = sum.convert_to<double>();
        if (std::isfinite(as_double))
            partial = as_double;
        mk *= mf;
    }
    const double result = sum.convert_to<double>();
    if (!std::isfinite(result))
        throw overflow_error("cheb_norm_bound: sum exceeds double range", partial);
    return result;
}

} // namespace coslab
