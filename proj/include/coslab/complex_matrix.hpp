#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace coslab {

using cdouble = std::complex<double>;

/// Dense complex square matrix, row-major. The value type of the ambient
/// algebra: immutable-by-convention after construction, cheap to copy at the
/// dimensions this laboratory targets (<= 64).
class Matrix {
  public:
    Matrix() = default;

    /// Zero matrix of the given dimension (must be >= 1).
    explicit Matrix(int dim);

    /// Row-major construction from a flat list of dim*dim entries.
    Matrix(int dim, std::initializer_list<cdouble> entries);

    static Matrix identity(int dim);

    int dim() const { return dim_; }

    cdouble& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * dim_ + j];
    }
    const cdouble& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * dim_ + j];
    }

    std::span<const cdouble> data() const { return data_; }
    std::span<cdouble> data() { return data_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(cdouble s);

    /// Conjugate transpose.
    Matrix adjoint() const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.dim_ == b.dim_ && a.data_ == b.data_;
    }

  private:
    int dim_ = 0;
    std::vector<cdouble> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cdouble s, Matrix a);
Matrix operator*(Matrix a, cdouble s);

Matrix diag_matrix(std::initializer_list<cdouble> entries);
Matrix diag_matrix(std::span<const cdouble> entries);

/// Upper bidiagonal Jordan block J(lambda) of the given dimension.
Matrix jordan_block(cdouble lambda, int dim);

/// Determinant via LU with partial pivoting.
cdouble determinant(const Matrix& x);

/// Inverse via LU with partial pivoting. Throws numerical_failure when a pivot
/// falls below the singularity threshold.
Matrix inverse(const Matrix& x);

} // namespace coslab
