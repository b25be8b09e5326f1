#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "coslab/complex_matrix.hpp"

namespace coslab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact integer coefficients of T_n (coefficient of x^k at index k). Kept in
/// arbitrary precision: the leading coefficient is 2^(n-1) and interior
/// coefficients outgrow 64-bit integers well before n = 64.
struct ChebCoeffs {
    int n = 0;
    std::vector<BigInt> coeffs;

    static ChebCoeffs make(int n);
};

constexpr int kChebMaxDegree = 64;

/// T_n(x) by the explicit sum over binomial(n, 2k) * x^(n-2k) * (x^2-1)^k.
/// Degree capped at 64, where the binomials still fit in 64-bit integers.
///
/// Note the binomial index: the classical closed form is sometimes quoted
/// with an ambiguous C_n^k symbol. Pairing the binomial with 2k is the
/// reading that reproduces T_2 = 2x^2 - 1 and cos(n arccos x); the
/// n-choose-k reading gives 3x^2 - 2 and is rejected by the cross-checks.
cdouble cheb_explicit(int n, cdouble x);
Matrix cheb_explicit(int n, const Matrix& x);

/// T_n(x) by the three-term recurrence T_{k+1} = 2 x T_k - T_{k-1}; the
/// cross-check route for cheb_explicit.
cdouble cheb_recurrence(int n, cdouble x);
Matrix cheb_recurrence(int n, const Matrix& x);

/// C(n) = C(-n) = T_|n|(C(1)): extension of a cosine sequence from its value
/// at 1, even in n by construction.
Matrix extend_cosine_sequence(const Matrix& c1, long n);

/// Majorant sum_k |c_{n,k}| M^k over the exact coefficients of T_n; dominates
/// sup ||T_n(y)|| over ||y|| <= M in any Banach algebra. Coefficients stay
/// exact integers; the sum is accumulated in 100sig-digit floats and converted
/// to double once. Throws overflow_error (carrying the largest partial sum
/// still finite in double) if the result exceeds the double range.
double cheb_norm_bound(int n, double m);

} // namespace coslab
