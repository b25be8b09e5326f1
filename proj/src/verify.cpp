#include "coslab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "coslab/chebyshev.hpp"
#include "coslab/cosine_family.hpp"
#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"
#include "coslab/kernels.hpp"
#include "coslab/matrix_functions.hpp"
#include "coslab/random.hpp"
#include "coslab/sqrt_series.hpp"
#include "coslab/zero_two.hpp"

namespace coslab {

namespace {

// Worst residual across independent trials. Each trial draws from its own
// derived stream and writes to its own slot, so the reduction is identical
// whether or not the loop runs under OpenMP.
template <typename Fn>
double worst_over_trials(std::uint64_t seed, long trials, Fn&& fn) {
    std::vector<double> residuals(trials, 0.0);
    kernels::for_each_index(static_cast<int>(trials), [&](int i) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(i));
        residuals[i] = fn(i, rng);
    });
    double worst = 0.0;
    for (const double r : residuals)
        worst = std::max(worst, r);
    return worst;
}

class Suite {
  public:
    explicit Suite(const VerifyOptions& options) : options_(options) {}

    std::vector<CheckResult> take() { return std::move(results_); }

    double tolerance(const std::string& name, double fallback) const {
        const auto it = options_.tolerance_overrides.find(name);
        return it == options_.tolerance_overrides.end() ? fallback : it->second;
    }

    std::uint64_t check_seed() const {
        // A fixed odd multiplier per registered check keeps streams disjoint.
        return options_.seed ^ (static_cast<std::uint64_t>(results_.size() + 1) *
                               0x9E3779B97F4A7C15ull);
    }

    void record(std::string name, std::string anchor, std::string tol_name, double tol,
                double worst, long trials, std::string detail = {}) {
        CheckResult r;
        r.name = std::move(name);
        r.anchor = std::move(anchor);
        r.tolerance_name = std::move(tol_name);
        r.tolerance = tol;
        r.worst = worst;
        r.trials = trials;
        r.pass = worst <= tol;
        r.detail = std::move(detail);
        results_.push_back(std::move(r));
    }

    const VerifyOptions& options() const { return options_; }

  private:
    const VerifyOptions& options_;
    std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------------- algebra

void check_submultiplicative(Suite& s) {
    const double tol = s.tolerance("submult", 1e-12);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 500, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 8);
        const Matrix x = random_matrix(rng, dim);
        const Matrix y = random_matrix(rng, dim);
        return operator_norm(x * y) - operator_norm(x) * operator_norm(y);
    });
    s.record("norm_submultiplicative", "||x*y|| <= ||x||*||y||", "submult", tol, worst, 500);
}

void check_rho_below_norm(Suite& s) {
    const double tol = s.tolerance("rho_norm", 1e-10);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 300, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 8);
        const Matrix x = random_matrix(rng, dim);
        return spectral_radius_eig(x) - operator_norm(x);
    });
    s.record("spectral_radius_below_norm", "rho(x) <= ||x||", "rho_norm", tol, worst, 300);
}

void check_gelfand(Suite& s) {
    {
        const double tol = s.tolerance("gelfand_random", 0.05);
        const std::uint64_t seed = s.check_seed();
        const double worst = worst_over_trials(seed, 100, [](int, Rng& rng) {
            const Matrix x = random_matrix_with_norm(rng, 6, rng.uniform(0.05, 2.0));
            const GelfandEstimate g = spectral_radius_gelfand(x, 12);
            return std::fabs(g.value - spectral_radius_eig(x));
        });
        s.record("gelfand_vs_eigenvalues_random", "rho(x) = lim ||x^n||^(1/n)",
                 "gelfand_random", tol, worst, 100);
    }
    {
        const double tol = s.tolerance("gelfand_normal", 1e-9);
        const std::uint64_t seed = s.check_seed();
        const double worst = worst_over_trials(seed, 100, [](int, Rng& rng) {
            const Matrix x = random_normal_matrix(rng, 6, rng.uniform(0.1, 2.0));
            const GelfandEstimate g = spectral_radius_gelfand(x, 12);
            return std::fabs(g.value - spectral_radius_eig(x));
        });
        s.record("gelfand_vs_eigenvalues_normal", "rho(x) = lim ||x^n||^(1/n), normal x",
                 "gelfand_normal", tol, worst, 100);
    }
}

void check_cos_evenness(Suite& s) {
    const double tol = s.tolerance("cos_even", 0.0);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 50, [](int, Rng& rng) {
        const int dim = rng.uniform_int(1, 8);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 2.0));
        const double t = rng.uniform(-3.0, 3.0);
        const Matrix diff = matrix_cos(a, t) - matrix_cos(a, -t);
        return diff.max_abs();
    });
    s.record("matrix_cos_even", "C(-t) = C(t), bit-exact", "cos_even", tol, worst, 50);
}

void check_newton_sqrt(Suite& s) {
    const double tol = s.tolerance("newton_sqrt", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 100, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 8);
        const Matrix w = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.9));
        const Matrix x = Matrix::identity(dim) - w;
        const Matrix y = matrix_sqrt_newton(x);
        return operator_norm(y * y - x);
    });
    s.record("newton_sqrt_residual", "y^2 = x for y = sqrt(x)", "newton_sqrt", tol, worst,
             100);
}

// -------------------------------------------------------------------- chebyshev

void check_cheb_nesting(Suite& s) {
    const double tol = s.tolerance("cheb_nesting", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int m = rng.uniform_int(0, 8);
        const int n = rng.uniform_int(0, 8);
        const cdouble x(rng.uniform(-1.0, 1.0), 0.0);
        const cdouble nested = cheb_recurrence(m, cheb_recurrence(n, x));
        const cdouble direct = cheb_recurrence(m * n, x);
        return std::abs(nested - direct);
    });
    s.record("cheb_nesting", "T_m(T_n(x)) = T_{m*n}(x)", "cheb_nesting", tol, worst, 200);
}

void check_cheb_dalembert(Suite& s) {
    const double tol = s.tolerance("cheb_dalembert", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int i, Rng& rng) {
        const int m = rng.uniform_int(0, 12);
        const int n = rng.uniform_int(0, 12);
        if (i % 2 == 0) {
            const cdouble x(rng.uniform(-1.0, 1.0), 0.0);
            const cdouble lhs = cheb_recurrence(m + n, x) + cheb_recurrence(std::abs(m - n), x);
            const cdouble rhs = 2.0 * cheb_recurrence(m, x) * cheb_recurrence(n, x);
            return std::abs(lhs - rhs);
        }
        // Polynomials of one matrix commute, so the sequence identity holds
        // verbatim for matrix arguments.
        const int dim = rng.uniform_int(2, 5);
        const Matrix y = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        const Matrix lhs =
            cheb_recurrence(m + n, y) + cheb_recurrence(std::abs(m - n), y);
        const Matrix rhs = cheb_recurrence(m, y) * cheb_recurrence(n, y) * cdouble(2.0, 0.0);
        return operator_norm(lhs - rhs);
    });
    s.record("cheb_sequence_dalembert", "T_{m+n}(x) + T_{|m-n|}(x) = 2*T_m(x)*T_n(x)",
             "cheb_dalembert", tol, worst, 200);
}

void check_cheb_triple(Suite& s) {
    const double tol = s.tolerance("cheb_triple", 1e-10);
    const std::uint64_t seed = s.check_seed();
    // 1000 points, all n <= 30 at each point.
    const double worst = worst_over_trials(seed, 1000, [](int, Rng& rng) {
        const double x = rng.uniform(-1.0, 1.0);
        const cdouble xe(x, 0.0);
        double local = 0.0;
        for (int n = 0; n <= 30; ++n) {
            const double trig = std::cos(static_cast<double>(n) * std::acos(x));
            const cdouble ex = cheb_explicit(n, xe);
            const cdouble rec = cheb_recurrence(n, xe);
            local = std::max(local, std::abs(ex - cdouble(trig, 0.0)));
            local = std::max(local, std::abs(rec - cdouble(trig, 0.0)));
            local = std::max(local, std::abs(ex - rec));
        }
        return local;
    });
    s.record("cheb_triple_agreement", "T_n(cos(theta)) = cos(n*theta)", "cheb_triple", tol,
             worst, 31000);
}

void check_cheb_norm_bound(Suite& s) {
    const double tol = s.tolerance("cheb_bound", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int n = rng.uniform_int(0, 24);
        const int dim = rng.uniform_int(2, 6);
        const Matrix y = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.5));
        const double bound = cheb_norm_bound(n, operator_norm(y));
        return operator_norm(cheb_recurrence(n, y)) - bound;
    });
    s.record("cheb_norm_bound_dominates", "||T_n(y)|| <= sum_k |c_{n,k}| M^k", "cheb_bound",
             tol, worst, 200);
}

void check_extend_sequence(Suite& s) {
    const double tol = s.tolerance("extend_sequence", 1e-8);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 100, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        // Keep rho(a) <= 0.5 (||a|| stays <= 1): ||cos(n a)|| grows like
        // cosh(n * max |Im lambda|), and past ~1e4 the absolute 1e-8 budget is
        // not reachable in doubles for either evaluation route.
        const double rho = spectral_radius_eig(a);
        if (rho > 0.5)
            a *= cdouble(0.5 / rho, 0.0);
        const Matrix c1 = matrix_cos(a, 1.0);
        const long n = rng.uniform_int(0, 20);
        const Matrix lhs = extend_cosine_sequence(c1, rng.next_u64() % 2 ? n : -n);
        const Matrix rhs = matrix_cos(a, static_cast<double>(n));
        return operator_norm(lhs - rhs);
    });
    s.record("extend_cosine_sequence", "C(n) = C(-n) = T_|n|(C(1))", "extend_sequence", tol,
             worst, 100);
}

// ------------------------------------------------------------------ sqrt series

void check_alpha_coeffs(Suite& s) {
    const SqrtSeriesCoeffs c = SqrtSeriesCoeffs::make(2500);
    double worst = 0.0;
    std::ostringstream detail;
    // alpha_1 = 1/2, alpha_2 = -1/8, alpha_3 = 1/16 from the product formula.
    worst = std::max(worst, std::fabs(c.alpha[1] - 0.5));
    worst = std::max(worst, std::fabs(c.alpha[2] + 0.125));
    worst = std::max(worst, std::fabs(c.alpha[3] - 0.0625));
    // Sign pattern (-1)^(n-1) alpha_n >= 0.
    for (int n = 1; n <= c.n_max; ++n) {
        const double signed_alpha = (n % 2 == 1 ? 1.0 : -1.0) * c.alpha[n];
        if (signed_alpha < 0.0)
            worst = std::max(worst, -signed_alpha);
    }
    // sum |alpha_n| converges to 1 from below; tail ~ n^(-1/2).
    const double total = c.abs_partial[c.n_max];
    if (total > 1.0)
        worst = std::max(worst, total - 1.0);
    if (total < 1.0 - 2e-2)
        worst = std::max(worst, (1.0 - 2e-2) - total);
    detail << "sum_{n<=2500} |alpha_n| = " << total;
    s.record("sqrt_series_coefficients", "sum |alpha_n| t^n = 1 - sqrt(1-t)", "alpha_coeffs",
             s.tolerance("alpha_coeffs", 1e-15), worst, 2500, detail.str());
}

void check_alpha_partial_identity(Suite& s) {
    const double tol = s.tolerance("alpha_identity", 1e-12);
    const SqrtSeriesCoeffs c = SqrtSeriesCoeffs::make(4000);
    double worst = 0.0;
    for (const double t : {0.1, 0.5, 0.9}) {
        double sum = 0.0;
        double tpow = 1.0;
        double abs_sum = 0.0;
        for (int n = 1; n <= c.n_max; ++n) {
            tpow *= t;
            sum += (n % 2 == 1 ? 1.0 : -1.0) * c.alpha[n] * tpow;
            abs_sum += std::fabs(c.alpha[n]) * tpow;
        }
        const double target = bound_rhs(t);
        const double tail = target - abs_sum; // exact truncation remainder
        const double excess = std::fabs(sum - target) - std::max(tail, 0.0);
        worst = std::max(worst, excess);
    }
    s.record("sqrt_series_partial_sums", "sum (-1)^(n-1) alpha_n t^n -> 1 - sqrt(1-t)",
             "alpha_identity", tol, worst, 3);
}

void check_sqrt_series_bound(Suite& s) {
    const double tol = s.tolerance("eq_bound", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 1000, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.99));
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
        const double lhs = operator_norm(Matrix::identity(dim) - r.value);
        return lhs - r.certified_bound;
    });
    s.record("sqrt_series_norm_bound", "||1 - sqrt(1-x)|| <= 1 - sqrt(1 - ||x||)",
             "eq_bound", tol, worst, 1000);
}

void check_sqrt_series_idempotent(Suite& s) {
    const double tol = s.tolerance("sqrt_idem", 1e-8);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 300, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.9));
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-9);
        return operator_norm(r.value * r.value - (Matrix::identity(dim) - x));
    });
    s.record("sqrt_series_idempotent", "(sqrt(1-x))^2 = 1-x", "sqrt_idem", tol, worst, 300);
}

void check_sqrt_series_vs_newton(Suite& s) {
    const double tol = s.tolerance("series_newton", 1e-8);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.9));
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
        const Matrix newton = matrix_sqrt_newton(Matrix::identity(dim) - x);
        return operator_norm(r.value - newton);
    });
    s.record("sqrt_series_vs_newton", "series route = Newton route", "series_newton", tol,
             worst, 200);
}

void check_halfplane(Suite& s) {
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.95));
        return halfplane_check(x) ? 0.0 : 1.0;
    });
    s.record("sqrt_series_halfplane", "Re(sqrt(1 - chi(x))) >= 0", "halfplane",
             s.tolerance("halfplane", 0.0), worst, 200);
}

// --------------------------------------------------------------------- families

void check_dalembert_generators(Suite& s) {
    const double tol = s.tolerance("dalembert", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const long families = 200;
    const double worst = worst_over_trials(seed, families, [](int, Rng& rng) {
        const int dim = rng.uniform_int(1, 8);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 2.0));
        const CosineFamily f = CosineFamily::generator(a);
        double worst_local = 0.0;
        for (int pair = 0; pair < 100; ++pair) {
            const double st = rng.uniform(-3.0, 3.0);
            const double tt = rng.uniform(-3.0, 3.0);
            worst_local = std::max(worst_local, dalembert_residual(f, st, tt));
        }
        return worst_local;
    });
    s.record("dalembert_generator_families", "C(s+t) + C(s-t) = 2*C(s)*C(t)", "dalembert",
             tol, worst, families * 100);
}

void check_dalembert_scalar_hamel(Suite& s) {
    const double tol = s.tolerance("dalembert_hamel", 1e-6);
    const std::uint64_t seed = s.check_seed();
    // 4000 trials = 1000 random (s, t) pairs per realization.
    const double worst = worst_over_trials(seed, 4000, [](int i, Rng& rng) {
        if (i % 4 == 0) {
            const CosineFamily f = CosineFamily::scalar_cos(
                cdouble(rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0)));
            return dalembert_residual(f, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        }
        if (i % 4 == 1) {
            const CosineFamily f = CosineFamily::scalar_cosh(
                cdouble(rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0)));
            return dalembert_residual(f, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        }
        HamelSpec spec;
        spec.mu = rng.uniform(-1.0, 1.0);
        spec.nu = rng.uniform(-1.0, 1.0);
        spec.kind = i % 4 == 2 ? HamelSpec::Kind::Cos : HamelSpec::Kind::Cosh;
        const CosineFamily f = CosineFamily::hamel(spec);
        const GroupPoint gs = spec.point(rng.uniform_int(-50, 50), rng.uniform_int(-50, 50));
        const GroupPoint gt = spec.point(rng.uniform_int(-50, 50), rng.uniform_int(-50, 50));
        const double scale = 1.0 + std::max(operator_norm(f.eval(gs)) * operator_norm(f.eval(gt)),
                                            operator_norm(f.eval(spec.add(gs, gt))));
        return dalembert_residual(f, gs, gt) / scale;
    });
    s.record("dalembert_scalar_and_hamel", "C(s+t) + C(s-t) = 2*C(s)*C(t)",
             "dalembert_hamel", tol, worst, 4000);
}

void check_family_evenness(Suite& s) {
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 100, [](int i, Rng& rng) {
        double worst_local = 0.0;
        if (i % 3 == 0) {
            const int dim = rng.uniform_int(1, 6);
            const CosineFamily f = CosineFamily::generator(
                random_matrix_with_norm(rng, dim, rng.uniform(0.0, 2.0)));
            const double t = rng.uniform(0.0, 3.0);
            worst_local = std::max(worst_local, (f.eval(t) - f.eval(-t)).max_abs());
            worst_local = std::max(
                worst_local, (f.eval(0.0) - Matrix::identity(dim)).max_abs());
        } else if (i % 3 == 1) {
            const CosineFamily f = CosineFamily::scalar_cos(
                cdouble(rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0)));
            const double t = rng.uniform(0.0, 3.0);
            worst_local = std::max(worst_local, (f.eval(t) - f.eval(-t)).max_abs());
            worst_local =
                std::max(worst_local, (f.eval(0.0) - Matrix::identity(1)).max_abs());
        } else {
            HamelSpec spec;
            spec.mu = rng.uniform(-1.0, 1.0);
            spec.nu = rng.uniform(-1.0, 1.0);
            const CosineFamily f = CosineFamily::hamel(spec);
            const GroupPoint g =
                spec.point(rng.uniform_int(-100, 100), rng.uniform_int(-100, 100));
            worst_local =
                std::max(worst_local, (f.eval(g) - f.eval(g.negate())).max_abs());
            worst_local = std::max(
                worst_local, (f.eval(spec.point(0, 0)) - Matrix::identity(1)).max_abs());
        }
        return worst_local;
    });
    s.record("family_even_and_unital", "C(0) = 1 and C(-t) = C(t), bit-exact", "family_even",
             s.tolerance("family_even", 0.0), worst, 100);
}

void check_product_identity(Suite& s) {
    const double tol = s.tolerance("product_identity", 1e-8);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int i, Rng& rng) {
        if (i % 2 == 0) {
            const CosineFamily f = CosineFamily::scalar_cos(
                cdouble(rng.uniform(-2.0, 2.0), rng.uniform(-0.5, 0.5)));
            return product_identity_residual(f, rng.uniform(-2.0, 2.0),
                                             rng.uniform(-2.0, 2.0));
        }
        const int dim = rng.uniform_int(2, 6);
        const CosineFamily f = CosineFamily::generator(
            random_matrix_with_norm(rng, dim, rng.uniform(0.0, 2.0)));
        return product_identity_residual(f, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    });
    s.record("product_identity", "(1 - C(s-t))(1 - C(s+t)) = (C(s) - C(t))^2",
             "product_identity", tol, worst, 200);
}

void check_commutation(Suite& s) {
    const double tol = s.tolerance("commutation", 1e-10);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 8);
        const CosineFamily f = CosineFamily::generator(
            random_matrix_with_norm(rng, dim, rng.uniform(0.0, 2.0)));
        return commutation_residual(f, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    });
    s.record("commutation", "C(s)*C(t) = C(t)*C(s)", "commutation", tol, worst, 200);
}

void check_convergents(Suite& s) {
    double worst = 0.0;
    std::ostringstream detail;
    // sqrt2 denominators 1, 2, 5, 12, 29; golden denominators are Fibonacci.
    const std::vector<Convergent> c2 = convergents(Irrational::Sqrt2, 12);
    const long expect2[] = {1, 2, 5, 12, 29};
    for (int i = 0; i < 5; ++i)
        if (c2[i].q != expect2[i])
            worst = std::max(worst, 1.0);
    const std::vector<Convergent> cg = convergents(Irrational::GoldenRatio, 10);
    long fib_prev = 1, fib_cur = 1;
    for (int i = 0; i < 10; ++i) {
        if (cg[i].q != fib_prev)
            worst = std::max(worst, 1.0);
        const long next = fib_prev + fib_cur;
        fib_prev = fib_cur;
        fib_cur = next;
    }
    // |17 - 12 sqrt2| = 0.0294... < 1/29.
    if (!(c2[3].p == 17 && c2[3].q == 12))
        worst = std::max(worst, 1.0);
    if (!(c2[3].gap < 1.0 / 29.0))
        worst = std::max(worst, 1.0);
    detail << "|17 - 12*sqrt2| = " << c2[3].gap;
    // Quality bound |p - q xi| < 1/q_next is enforced inside convergents() for
    // every whitelisted irrational; reaching here means it held to depth 40.
    convergents(Irrational::Pi, kMaxConvergents);
    convergents(Irrational::Sqrt2, kMaxConvergents);
    convergents(Irrational::GoldenRatio, kMaxConvergents);
    s.record("convergents_quality", "|p_j - q_j*xi| < 1/q_{j+1}", "convergents",
             s.tolerance("convergents", 0.0), worst, 3, detail.str());
}

// --------------------------------------------------------------------- zero-two

void check_half_angle_reconstruction(Suite& s) {
    const double tol = s.tolerance("half_angle_reconstruct", 1e-7);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int dim = rng.uniform_int(1, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        const CosineFamily f = CosineFamily::generator(a);
        const double t = rng.uniform(1e-3, 1.0);
        const Matrix ct = f.eval(t);
        const Matrix half = f.eval(t * 0.5);
        const Matrix one = Matrix::identity(dim);
        // Hypotheses first; skip draws that fall outside them.
        if (operator_norm(ct - one) > 2.0)
            return 0.0;
        if (spectral_radius_eig(half - one) >= 0.99)
            return 0.0;
        const HalfAngleResult h = half_angle_reconstruct(ct, 1e-9);
        return operator_norm(h.value - half);
    });
    s.record("half_angle_reconstruction", "C(t/2) = sqrt(1 - (1 - C(t))/2)",
             "half_angle_reconstruct", tol, worst, 200);
}

void check_counterexample_flagged(Suite& s) {
    // cos(2t) at t0 = pi: C(pi) = 1 reconstructs to 1, but C(pi/2) = -1; the
    // spectral hypothesis rho = 2 >= 1 must be reported violated, never a
    // silent pass.
    const CosineFamily f = CosineFamily::scalar_cos(cdouble(2.0, 0.0));
    const double pi = std::acos(-1.0);
    const RefinementTrace trace = dyadic_refine(f, pi, 6, 1e-9);
    double worst = 0.0;
    if (trace.steps.empty()) {
        worst = 1.0;
    } else {
        if (trace.steps.front().precondition_ok)
            worst = 1.0; // hypothesis wrongly reported as holding
        if (!trace.truncated)
            worst = 1.0;
        const RefinementStep& last = trace.steps.back();
        if (!(last.flagged && last.deviation > 1.0))
            worst = 1.0; // the mismatch must surface on a flagged step
    }
    s.record("half_angle_counterexample_flagged",
             "rho(C(t/2) - 1) < 1 is necessary for reconstruction",
             "counterexample", s.tolerance("counterexample", 0.0), worst, 1);
}

void check_half_angle_bound(Suite& s) {
    const double tol = s.tolerance("half_angle_bound", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 200, [](int, Rng& rng) {
        const int dim = rng.uniform_int(1, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        const CosineFamily f = CosineFamily::generator(a);
        const double t = rng.uniform(1e-3, 1.0);
        const Matrix ct = f.eval(t);
        const Matrix half = f.eval(t * 0.5);
        if (operator_norm(ct - Matrix::identity(dim)) > 2.0)
            return 0.0;
        const double bound = half_angle_bound(ct);
        return operator_norm(half - Matrix::identity(dim)) - bound;
    });
    s.record("half_angle_norm_bound", "||C(t/2) - 1|| <= 1 - sqrt(1 - ||C(t)-1||/2)",
             "half_angle_bound", tol, worst, 200);
}

void check_fixed_point_scan(Suite& s) {
    const double margin = fixed_point_scan(100000);
    // Pass iff the inequality fails on every grid point, i.e. margin > 0.
    const double worst = margin > 0.0 ? 0.0 : 1.0;
    std::ostringstream detail;
    detail << "min margin l - (1 - sqrt(1 - l/2)) = " << margin;
    s.record("fixed_point_scan", "l <= 1 - sqrt(1 - l/2) and l in [0,2] force l = 0",
             "fixed_point", s.tolerance("fixed_point", 0.0), worst, 100000, detail.str());
}

void check_contraction_sequence(Suite& s) {
    const ContractionSequence c = ContractionSequence::make(200);
    double worst = 0.0;
    std::ostringstream detail;
    worst = std::max(worst, std::fabs(c.values[0] - 2.0));
    worst = std::max(worst, std::fabs(c.values[1] - 1.0));
    worst = std::max(worst, std::fabs(c.values[2] - (1.0 - std::sqrt(0.5))));
    for (std::size_t n = 1; n + 1 < c.values.size(); ++n)
        if (!(c.values[n + 1] < c.values[n]))
            worst = std::max(worst, 1.0); // strict decrease after n = 1
    for (std::size_t n = 4; n < std::min<std::size_t>(c.values.size(), 61); ++n) {
        const double envelope = 2.0 * std::pow(0.3, static_cast<double>(n) - 2.0);
        if (c.values[n] > envelope)
            worst = std::max(worst, c.values[n] - envelope);
    }
    double worst_ratio = 0.0;
    for (std::size_t n = 6; n + 1 < std::min<std::size_t>(c.values.size(), 101); ++n)
        worst_ratio = std::max(worst_ratio,
                               std::fabs(c.values[n + 1] / c.values[n] - 0.25));
    worst = std::max(worst, worst_ratio > 0.01 ? worst_ratio : 0.0);
    detail << "u_5/u_4 = " << c.values[5] / c.values[4];
    s.record("contraction_sequence", "u_0 = 2, u_{n+1} = 1 - sqrt(1 - u_n/2), u_n -> 0",
             "contraction", s.tolerance("contraction", 1e-15), worst, 200, detail.str());
}

void check_dyadic_envelope(Suite& s) {
    const double tol = s.tolerance("envelope", 1e-9);
    const std::uint64_t seed = s.check_seed();
    const double worst = worst_over_trials(seed, 50, [](int, Rng& rng) {
        const int dim = rng.uniform_int(1, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        const CosineFamily f = CosineFamily::generator(a);
        const RefinementTrace trace = dyadic_refine(f, 1.0, 10, 1e-9);
        double worst_local = 0.0;
        for (const RefinementStep& step : trace.steps) {
            if (step.t > trace.eta || step.flagged)
                continue;
            worst_local = std::max(worst_local, step.norm_gap - step.envelope);
        }
        return worst_local;
    });
    s.record("dyadic_envelope", "sup_{|t| <= 2^-n eta} ||C(t) - 1|| <= u_n", "envelope",
             tol, worst, 50);
}

void check_trichotomy_witnesses(Suite& s) {
    double worst = 0.0;
    std::ostringstream detail;

    SamplingPlan plan;
    const ClassifierConfig config;

    // Branch zero: a norm-continuous scalar family.
    const TrichotomyReport zero =
        limsup_estimate(CosineFamily::scalar_cos(cdouble(3.0, 0.0)), plan, config);
    if (zero.branch != Branch::Zero)
        worst = std::max(worst, 1.0);
    if (!(zero.sup_profile.back().sup <= 1e-6))
        worst = std::max(worst, zero.sup_profile.back().sup);

    // Branch two: the cos Hamel family on sqrt2 convergents. The enumeration
    // oracle: |cos(q_k) - 1| >= 1.9 already happens for a denominator within
    // the first 12 convergents (q = 2378).
    HamelSpec cos_spec;
    const CosineFamily hamel_cos = CosineFamily::hamel(cos_spec);
    const TrichotomyReport two = limsup_estimate(hamel_cos, plan, config);
    if (two.branch != Branch::Two)
        worst = std::max(worst, 1.0);
    const std::vector<Convergent> conv = convergents(Irrational::Sqrt2, 12);
    double best_base = 0.0;
    for (const Convergent& c : conv)
        best_base = std::max(best_base,
                             std::fabs(std::cos(c.q.convert_to<double>()) - 1.0));
    if (best_base < 1.9)
        worst = std::max(worst, 1.9 - best_base);
    detail << "max_k<=12 |cos(q_k) - 1| = " << best_base;

    // Branch infinity: the cosh Hamel family; cosh(29) ~ 2e12 clears the
    // threshold at the 5th convergent.
    HamelSpec cosh_spec;
    cosh_spec.kind = HamelSpec::Kind::Cosh;
    const TrichotomyReport inf =
        limsup_estimate(CosineFamily::hamel(cosh_spec), plan, config);
    if (inf.branch != Branch::Infinity)
        worst = std::max(worst, 1.0);
    const double cosh29 = std::cosh(29.0);
    if (!(cosh29 > 1e6))
        worst = std::max(worst, 1.0);

    // Profile monotonicity for all three reports.
    for (const TrichotomyReport* r : {&zero, &two, &inf})
        for (std::size_t i = 0; i + 1 < r->sup_profile.size(); ++i)
            if (r->sup_profile[i + 1].sup > r->sup_profile[i].sup + 1e-15)
                worst = std::max(worst, 1.0);

    s.record("trichotomy_witnesses", "limsup |c(t) - 1| lands in {0, 2, +inf}",
             "trichotomy", s.tolerance("trichotomy", 0.0), worst, 3, detail.str());
}

void check_spectral_instruments(Suite& s) {
    const double tol = s.tolerance("spectral_lower", 1e-8);
    const std::uint64_t seed = s.check_seed();
    const std::vector<double> scales{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                     0.0078125};
    const double worst = worst_over_trials(seed, 100, [&](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.1, 2.0));
        const SpectralCharacterization sc = spectral_limsup(a, scales);
        double local = 0.0;
        for (const SpectralScaleRow& row : sc.rows) {
            local = std::max(local, row.lower_bound - row.rho_gap); // must be <= 1e-8
            local = std::max(local, row.pairing_max_dist);
        }
        return local;
    });
    s.record("spectral_character_instruments",
             "chi(C(t)) = cos(t*a_chi) and rho(C(t)-1) >= |1 - cos(t*u)cosh(t*v)|",
             "spectral_lower", tol, worst, 100);
}

void check_spectral_zero_two(Suite& s) {
    const std::uint64_t seed = s.check_seed();
    double worst = worst_over_trials(seed, 20, [](int, Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 3.0));
        const ZeroTwoCheckReport r = spectral_zero_two_check(a);
        return (r.converged && r.bounded) ? 0.0 : 1.0;
    });
    // diag(100): the window must shrink to ~1e-5 before the sup clears 1e-8.
    const ZeroTwoCheckReport big = spectral_zero_two_check(diag_matrix({cdouble(100.0, 0.0)}));
    if (!big.converged || big.final_scale > 1e-4)
        worst = std::max(worst, 1.0);
    s.record("spectral_zero_two_check", "sup_chi |cos(t*a_chi) - 1| -> 0", "char_sup",
             s.tolerance("char_sup", 0.0), worst, 21);
}

void check_family_files(Suite& s) {
    if (s.options().family_files.empty())
        return;
    double worst = 0.0;
    long trials = 0;
    for (const std::string& path : s.options().family_files) {
        const CosineFamily f = load_family_file(path); // config errors propagate
        Rng rng(s.options().seed);
        if (f.is_hamel()) {
            const HamelSpec& spec = f.hamel_spec();
            for (int i = 0; i < 50; ++i) {
                const GroupPoint gs =
                    spec.point(rng.uniform_int(-50, 50), rng.uniform_int(-50, 50));
                const GroupPoint gt =
                    spec.point(rng.uniform_int(-50, 50), rng.uniform_int(-50, 50));
                const double scale =
                    1.0 + operator_norm(f.eval(gs)) * operator_norm(f.eval(gt));
                worst = std::max(worst, dalembert_residual(f, gs, gt) / scale);
                ++trials;
            }
        } else {
            for (int i = 0; i < 50; ++i) {
                worst = std::max(worst, dalembert_residual(f, rng.uniform(-2.0, 2.0),
                                                           rng.uniform(-2.0, 2.0)));
                ++trials;
            }
        }
    }
    s.record("family_file_conformance", "C(s+t) + C(s-t) = 2*C(s)*C(t)", "dalembert_hamel",
             s.tolerance("dalembert_hamel", 1e-6), worst, trials);
}

} // namespace

std::vector<CheckResult> run_verify_suites(const VerifyOptions& options) {
    Suite s(options);
    check_submultiplicative(s);
    check_rho_below_norm(s);
    check_gelfand(s);
    check_cos_evenness(s);
    check_newton_sqrt(s);
    check_cheb_nesting(s);
    check_cheb_dalembert(s);
    check_cheb_triple(s);
    check_cheb_norm_bound(s);
    check_extend_sequence(s);
    check_alpha_coeffs(s);
    check_alpha_partial_identity(s);
    check_sqrt_series_bound(s);
    check_sqrt_series_idempotent(s);
    check_sqrt_series_vs_newton(s);
    check_halfplane(s);
    check_dalembert_generators(s);
    check_dalembert_scalar_hamel(s);
    check_family_evenness(s);
    check_product_identity(s);
    check_commutation(s);
    check_convergents(s);
    check_half_angle_reconstruction(s);
    check_counterexample_flagged(s);
    check_half_angle_bound(s);
    check_fixed_point_scan(s);
    check_contraction_sequence(s);
    check_dyadic_envelope(s);
    check_trichotomy_witnesses(s);
    check_spectral_instruments(s);
    check_spectral_zero_two(s);
    check_family_files(s);
    return s.take();
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass)
            return false;
    return true;
}

json verify_report_to_json(const std::vector<CheckResult>& results,
                           const VerifyOptions& options, bool reproducible) {
    json doc;
    doc["schema_version"] = 1;
    doc["report"] = "verify";
    doc["seed"] = options.seed;
    if (!reproducible) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        doc["generated_at"] = buf;
    }
    json checks = json::array();
    for (const CheckResult& r : results) {
        json c{{"name", r.name},
               {"anchor", r.anchor},
               {"tolerance_name", r.tolerance_name},
               {"tolerance", r.tolerance},
               {"worst", r.worst},
               {"trials", r.trials},
               {"pass", r.pass}};
        if (!r.detail.empty())
            c["detail"] = r.detail;
        checks.push_back(std::move(c));
    }
    doc["checks"] = std::move(checks);
    doc["all_pass"] = all_pass(results);
    return doc;
}

std::string render_verify_report(const std::vector<CheckResult>& results,
                                 const VerifyOptions& options, ReportFormat format,
                                 bool reproducible) {
    if (format == ReportFormat::Json)
        return verify_report_to_json(results, options, reproducible).dump(2) + "\n";
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "name,anchor,pass,worst,tolerance,tolerance_name,trials\n";
        for (const CheckResult& r : results) {
            out << r.name << ",\"" << r.anchor << "\"," << (r.pass ? "true" : "false") << ','
                << json(r.worst).dump() << ',' << json(r.tolerance).dump() << ','
                << r.tolerance_name << ',' << r.trials << "\n";
        }
        return out.str();
    }
    for (const CheckResult& r : results) {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %-34s worst=%-12.4g tol=%-10.4g  %s\n",
                      r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tolerance,
                      r.anchor.c_str());
        out << line;
    }
    out << (all_pass(results) ? "all checks passed\n" : "FAILURES present\n");
    return out.str();
}

} // namespace coslab
