#include "coslab/cosine_family.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"
#include "coslab/matrix_functions.hpp"

namespace coslab {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

BigFloat irrational_bigfloat(Irrational xi) {
    switch (xi) {
    case Irrational::Sqrt2:
        return sqrt(BigFloat(2));
    case Irrational::GoldenRatio:
        return (1 + sqrt(BigFloat(5))) / 2;
    case Irrational::Pi:
        return boost::math::constants::pi<BigFloat>();
    }
    throw invalid_input_error("irrational_bigfloat: unknown constant");
}

Matrix scalar_matrix(cdouble v) {
    Matrix m(1);
    m(0, 0) = v;
    return m;
}

} // namespace

Irrational irrational_from_name(const std::string& name) {
    if (name == "sqrt2")
        return Irrational::Sqrt2;
    if (name == "golden")
        return Irrational::GoldenRatio;
    if (name == "pi")
        return Irrational::Pi;
    throw config_error("unknown irrational '" + name + "'; whitelisted: sqrt2, golden, pi");
}

std::string irrational_name(Irrational xi) {
    switch (xi) {
    case Irrational::Sqrt2:
        return "sqrt2";
    case Irrational::GoldenRatio:
        return "golden";
    case Irrational::Pi:
        return "pi";
    }
    return "?";
}

double irrational_value(Irrational xi) {
    return irrational_bigfloat(xi).convert_to<double>();
}

std::vector<Convergent> convergents(Irrational xi, int k) {
    if (k < 1)
        throw invalid_input_error("convergents: k must be >= 1");
    if (k > kMaxConvergents)
        throw invalid_input_error("convergents: precision budget allows k <= " +
                                  std::to_string(kMaxConvergents) + " for " +
                                  irrational_name(xi));
    const BigFloat value = irrational_bigfloat(xi);

    // Continued-fraction digits by repeated floor/reciprocal in 100-digit
    // arithmetic; one extra term supplies the q_{j+1} in the quality check.
    std::vector<BigInt> digits;
    BigFloat x = value;
    for (int j = 0; j <= k; ++j) {
        const BigInt a = x.convert_to<BigInt>(); // truncates toward zero; x > 0 throughout
        digits.push_back(a);
        const BigFloat frac = x - BigFloat(a);
        if (frac <= 0)
            throw numerical_failure("convergents: precision exhausted", j);
        x = 1 / frac;
    }

    std::vector<Convergent> result;
    BigInt p_prev = 1, q_prev = 0;
    BigInt p_cur = digits[0], q_cur = 1;
    BigInt p_next, q_next;
    for (int j = 0; j < k; ++j) {
        // Next convergent, needed for the |p - q xi| < 1/q_{j+1} verification.
        p_next = digits[j + 1] * p_cur + p_prev;
        q_next = digits[j + 1] * q_cur + q_prev;

        Convergent c;
        c.p = p_cur;
        c.q = q_cur;
        const BigFloat gap = abs(BigFloat(p_cur) - BigFloat(q_cur) * value);
        c.gap = gap.convert_to<double>();
        c.value = (BigFloat(p_cur) / BigFloat(q_cur)).convert_to<double>();
        if (!(gap * BigFloat(q_next) < 1))
            throw numerical_failure("convergents: quality bound |p - q xi| < 1/q_next failed",
                                    c.gap);
        result.push_back(std::move(c));

        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return result;
}

double HamelSpec::b2_value() const {
    return (BigFloat(b1) * irrational_bigfloat(xi)).convert_to<double>();
}

GroupPoint HamelSpec::point(const BigInt& p, const BigInt& q) const {
    const BigFloat b2v = BigFloat(b1) * irrational_bigfloat(xi);
    const BigFloat embedded = BigFloat(p) * BigFloat(b1) + BigFloat(q) * b2v;
    GroupPoint g{p, q, embedded.convert_to<double>()};
    // Interval cross-check: the 100-digit evaluation carries ~1e-98 relative
    // error per term; an embedding is only trusted when the enclosure stays on
    // one side of zero.
    if (p == 0 && q == 0) {
        g.embedded = 0.0;
    } else {
        const BigFloat width =
            (abs(BigFloat(p)) + abs(BigFloat(q)) * irrational_bigfloat(xi)) *
            BigFloat(std::fabs(b1)) * BigFloat("1e-90");
        if (abs(embedded) <= width)
            throw numerical_failure(
                "HamelSpec::point: embedding interval straddles zero; precision exhausted",
                g.embedded);
    }
    return g;
}

GroupPoint HamelSpec::add(const GroupPoint& a, const GroupPoint& b) const {
    return point(a.p + b.p, a.q + b.q);
}

GroupPoint HamelSpec::sub(const GroupPoint& a, const GroupPoint& b) const {
    return point(a.p - b.p, a.q - b.q);
}

double HamelSpec::phi(const GroupPoint& g) const {
    return g.p.convert_to<double>() * mu + g.q.convert_to<double>() * nu;
}

CosineFamily CosineFamily::generator(Matrix a) {
    if (!a.all_finite())
        throw invalid_input_error("CosineFamily::generator: non-finite entries");
    CosineFamily f;
    f.realization_ = Realization::Generator;
    f.generator_ = std::move(a);
    return f;
}

CosineFamily CosineFamily::scalar_cos(cdouble a) {
    CosineFamily f;
    f.realization_ = Realization::ScalarCos;
    f.scalar_a_ = a;
    return f;
}

CosineFamily CosineFamily::scalar_cosh(cdouble a) {
    CosineFamily f;
    f.realization_ = Realization::ScalarCosh;
    f.scalar_a_ = a;
    return f;
}

CosineFamily CosineFamily::hamel(HamelSpec spec) {
    if (spec.b1 == 0.0 || !std::isfinite(spec.b1))
        throw invalid_input_error("CosineFamily::hamel: b1 must be finite and nonzero");
    CosineFamily f;
    f.realization_ = Realization::Hamel;
    f.hamel_ = spec;
    return f;
}

int CosineFamily::dim() const {
    return realization_ == Realization::Generator ? generator_.dim() : 1;
}

const Matrix& CosineFamily::generator_matrix() const {
    if (realization_ != Realization::Generator)
        throw type_error("CosineFamily: not a generator family");
    return generator_;
}

const HamelSpec& CosineFamily::hamel_spec() const {
    if (realization_ != Realization::Hamel)
        throw type_error("CosineFamily: not a Hamel family");
    return hamel_;
}

Matrix CosineFamily::eval(double t) const {
    if (!std::isfinite(t))
        throw invalid_input_error("CosineFamily::eval: t must be finite");
    // |t| everywhere: evenness is a property of the code path, not of libm.
    const double s = std::fabs(t);
    switch (realization_) {
    case Realization::Generator:
        return matrix_cos(generator_, s);
    case Realization::ScalarCos:
        return scalar_matrix(std::cos(scalar_a_ * s));
    case Realization::ScalarCosh:
        return scalar_matrix(std::cosh(scalar_a_ * s));
    case Realization::Hamel:
        throw type_error("CosineFamily::eval: Hamel families take exact group coordinates, "
                         "not real arguments");
    }
    throw invalid_input_error("CosineFamily::eval: corrupt realization");
}

Matrix CosineFamily::eval(const GroupPoint& g) const {
    if (realization_ != Realization::Hamel)
        throw type_error("CosineFamily::eval: group coordinates are only valid for Hamel "
                         "families");
    const double phi = std::fabs(hamel_.phi(g));
    const double v = hamel_.kind == HamelSpec::Kind::Cos ? std::cos(phi) : std::cosh(phi);
    return scalar_matrix(cdouble(v, 0.0));
}

double dalembert_residual(const CosineFamily& f, double s, double t) {
    const Matrix lhs = f.eval(s + t) + f.eval(s - t);
    const Matrix rhs = f.eval(s) * f.eval(t) * cdouble(2.0, 0.0);
    return operator_norm(lhs - rhs);
}

double dalembert_residual(const CosineFamily& f, const GroupPoint& s, const GroupPoint& t) {
    const HamelSpec& spec = f.hamel_spec();
    const Matrix lhs = f.eval(spec.add(s, t)) + f.eval(spec.sub(s, t));
    const Matrix rhs = f.eval(s) * f.eval(t) * cdouble(2.0, 0.0);
    return operator_norm(lhs - rhs);
}

double product_identity_residual(const CosineFamily& f, double s, double t) {
    const Matrix one = Matrix::identity(f.dim());
    const Matrix lhs = (one - f.eval(s - t)) * (one - f.eval(s + t));
    const Matrix diff = f.eval(s) - f.eval(t);
    return operator_norm(lhs - diff * diff);
}

double product_identity_residual(const CosineFamily& f, const GroupPoint& s,
                                 const GroupPoint& t) {
    const HamelSpec& spec = f.hamel_spec();
    const Matrix one = Matrix::identity(1);
    const Matrix lhs = (one - f.eval(spec.sub(s, t))) * (one - f.eval(spec.add(s, t)));
    const Matrix diff = f.eval(s) - f.eval(t);
    return operator_norm(lhs - diff * diff);
}

double commutation_residual(const CosineFamily& f, double s, double t) {
    const Matrix cs = f.eval(s);
    const Matrix ct = f.eval(t);
    return operator_norm(cs * ct - ct * cs);
}

double commutation_residual(const CosineFamily& f, const GroupPoint& s, const GroupPoint& t) {
    const Matrix cs = f.eval(s);
    const Matrix ct = f.eval(t);
    return operator_norm(cs * ct - ct * cs);
}

} // namespace coslab
