#include "coslab/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "coslab/errors.hpp"
#include "coslab/kernels.hpp"

namespace coslab {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw invalid_input_error(std::string(op) + ": dimension mismatch");
}

} // namespace

Matrix::Matrix(int dim) : dim_(dim) {
    if (dim < 1)
        throw invalid_input_error("Matrix: dimension must be >= 1");
    data_.assign(static_cast<std::size_t>(dim) * dim, cdouble(0.0, 0.0));
}

Matrix::Matrix(int dim, std::initializer_list<cdouble> entries) : Matrix(dim) {
    if (entries.size() != data_.size())
        throw invalid_input_error("Matrix: entry count must equal dim^2");
    std::copy(entries.begin(), entries.end(), data_.begin());
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i)
        m(i, i) = cdouble(1.0, 0.0);
    return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_dim(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_dim(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(cdouble s) {
    for (auto& v : data_)
        v *= s;
    return *this;
}

Matrix Matrix::adjoint() const {
    Matrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

double Matrix::frobenius_norm() const {
    // Power-of-two prescaling keeps |v|^2 from under/overflowing for extreme
    // magnitudes (repeated-squaring workloads reach 1e-150 and beyond).
    const double m = max_abs();
    if (m == 0.0)
        return 0.0;
    if (!std::isfinite(m))
        return m;
    const double scale = std::ldexp(1.0, -std::ilogb(m));
    double s = 0.0;
    for (const auto& v : data_)
        s += std::norm(v * scale);
    return std::sqrt(s) / scale;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

bool Matrix::all_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

Matrix operator+(Matrix a, const Matrix& b) {
    a += b;
    return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
    a -= b;
    return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "operator*");
    Matrix c(a.dim());
    kernels::matmul(a.data().data(), b.data().data(), c.data().data(), a.dim());
    return c;
}

Matrix operator*(cdouble s, Matrix a) {
    a *= s;
    return a;
}

Matrix operator*(Matrix a, cdouble s) {
    a *= s;
    return a;
}

Matrix diag_matrix(std::initializer_list<cdouble> entries) {
    std::vector<cdouble> v(entries);
    return diag_matrix(std::span<const cdouble>(v));
}

Matrix diag_matrix(std::span<const cdouble> entries) {
    Matrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i)
        m(i, i) = entries[i];
    return m;
}

Matrix jordan_block(cdouble lambda, int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = lambda;
        if (i + 1 < dim)
            m(i, i + 1) = cdouble(1.0, 0.0);
    }
    return m;
}

namespace {

// LU with partial pivoting; returns pivot sign and leaves LU packed in `a`.
// Throws numerical_failure on a pivot below the singularity threshold.
int lu_decompose(Matrix& a, std::vector<int>& perm) {
    const int n = a.dim();
    perm.resize(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-300)
            throw numerical_failure("lu_decompose: matrix is numerically singular", best);
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a(k, j), a(piv, j));
            std::swap(perm[k], perm[piv]);
            sign = -sign;
        }
        const cdouble inv_pivot = cdouble(1.0, 0.0) / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cdouble m = a(i, k) * inv_pivot;
            a(i, k) = m;
            for (int j = k + 1; j < n; ++j)
                a(i, j) -= m * a(k, j);
        }
    }
    return sign;
}

} // namespace

cdouble determinant(const Matrix& x) {
    Matrix a = x;
    std::vector<int> perm;
    cdouble det;
    try {
        const int sign = lu_decompose(a, perm);
        det = cdouble(static_cast<double>(sign), 0.0);
    } catch (const numerical_failure&) {
        return cdouble(0.0, 0.0);
    }
    for (int i = 0; i < a.dim(); ++i)
        det *= a(i, i);
    return det;
}

Matrix inverse(const Matrix& x) {
    const int n = x.dim();
    Matrix a = x;
    std::vector<int> perm;
    lu_decompose(a, perm);
    Matrix inv(n);
    std::vector<cdouble> col(n);
    for (int rhs = 0; rhs < n; ++rhs) {
        for (int i = 0; i < n; ++i)
            col[i] = perm[i] == rhs ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < i; ++k)
                col[i] -= a(i, k) * col[k];
        for (int i = n - 1; i >= 0; --i) {
            for (int k = i + 1; k < n; ++k)
                col[i] -= a(i, k) * col[k];
            col[i] /= a(i, i);
        }
        for (int i = 0; i < n; ++i)
            inv(i, rhs) = col[i];
    }
    return inv;
}

} // namespace coslab
