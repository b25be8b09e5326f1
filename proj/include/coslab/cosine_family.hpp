#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "coslab/complex_matrix.hpp"

namespace coslab {

using BigInt = boost::multiprecision::cpp_int;

/// Whitelisted irrationals for Hamel bases and convergent enumeration. The
/// high-precision values are computed, not typed in: sqrt and the golden ratio
/// from exact square roots, pi from boost.math.
enum class Irrational { Sqrt2, GoldenRatio, Pi };

Irrational irrational_from_name(const std::string& name); // throws config_error
std::string irrational_name(Irrational xi);
double irrational_value(Irrational xi);

constexpr int kMaxConvergents = 40;

struct Convergent {
    BigInt p;
    BigInt q;
    double value = 0.0; // p/q rounded
    double gap = 0.0;   // |p - q*xi|, from the high-precision embedding
};

/// Continued-fraction convergents p_j/q_j of the whitelisted irrational,
/// exact integers, with |p_j - q_j xi| < 1/q_{j+1} verified in high precision.
/// k is capped at 40 (the precision budget of the stored constants); beyond it
/// an invalid_input_error names the cap.
std::vector<Convergent> convergents(Irrational xi, int k);

/// Element p*b1 + q*b2 of the rank-2 subgroup, kept as exact coordinates. The
/// embedded value is for ordering and reporting only; evaluation never touches
/// it (p - q*sqrt(2) cancels catastrophically in doubles long before the
/// convergent depths used here).
struct GroupPoint {
    BigInt p;
    BigInt q;
    double embedded = 0.0;

    GroupPoint negate() const { return {-p, -q, -embedded}; }
};

struct HamelSpec {
    enum class Kind { Cos, Cosh };

    // Basis (b1, b2) with b2 = b1 * xi, so that b2/b1 is the whitelisted
    // irrational and convergents of xi supply group elements p*b1 + q*b2
    // arbitrarily close to zero.
    double b1 = 1.0;
    Irrational xi = Irrational::Sqrt2;
    double mu = 0.0; // phi(p, q) = p*mu + q*nu
    double nu = 1.0;
    Kind kind = Kind::Cos;

    double b2_value() const;

    /// Builds a group point, computing the embedding in >= 30 significant
    /// digits and cross-checking its sign against the interval enclosure.
    GroupPoint point(const BigInt& p, const BigInt& q) const;

    GroupPoint add(const GroupPoint& a, const GroupPoint& b) const;
    GroupPoint sub(const GroupPoint& a, const GroupPoint& b) const;

    /// phi(p, q) = p*mu + q*nu, from exact coordinates.
    double phi(const GroupPoint& g) const;
};

/// A cosine family in one of four realizations. Evaluation at 0 gives the
/// identity exactly, and eval(-t) == eval(t) bit-for-bit (the sign of the
/// argument never enters any code path).
class CosineFamily {
  public:
    enum class Realization { Generator, ScalarCos, ScalarCosh, Hamel };

    static CosineFamily generator(Matrix a);
    static CosineFamily scalar_cos(cdouble a);
    static CosineFamily scalar_cosh(cdouble a);
    static CosineFamily hamel(HamelSpec spec);

    Realization realization() const { return realization_; }
    int dim() const;
    bool is_hamel() const { return realization_ == Realization::Hamel; }
    bool supports_real_argument() const { return !is_hamel(); }

    const Matrix& generator_matrix() const;
    cdouble scalar_parameter() const { return scalar_a_; }
    const HamelSpec& hamel_spec() const;

    /// Throws type_error when called on a Hamel family: those take exact
    /// coordinates only.
    Matrix eval(double t) const;

    /// Throws type_error on non-Hamel families.
    Matrix eval(const GroupPoint& g) const;

  private:
    CosineFamily() = default;

    Realization realization_ = Realization::ScalarCos;
    Matrix generator_;
    cdouble scalar_a_{0.0, 0.0};
    HamelSpec hamel_{};
};

/// || C(s+t) + C(s-t) - 2 C(s) C(t) ||.
double dalembert_residual(const CosineFamily& f, double s, double t);
double dalembert_residual(const CosineFamily& f, const GroupPoint& s, const GroupPoint& t);

/// || (1 - C(s-t))(1 - C(s+t)) - (C(s) - C(t))^2 ||.
double product_identity_residual(const CosineFamily& f, double s, double t);
double product_identity_residual(const CosineFamily& f, const GroupPoint& s,
                                 const GroupPoint& t);

/// || C(s) C(t) - C(t) C(s) ||.
double commutation_residual(const CosineFamily& f, double s, double t);
double commutation_residual(const CosineFamily& f, const GroupPoint& s, const GroupPoint& t);

} // namespace coslab
