// Acceptance suite: one line per criterion, nonzero exit on any failure.
// argv[1] (optional, required for criterion 9) is the path to the cosine-lab
// binary.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "coslab/chebyshev.hpp"
#include "coslab/cosine_family.hpp"
#include "coslab/eigen.hpp"
#include "coslab/kernels.hpp"
#include "coslab/matrix_functions.hpp"
#include "coslab/random.hpp"
#include "coslab/rng.hpp"
#include "coslab/sqrt_series.hpp"
#include "coslab/zero_two.hpp"
#include "test_support.hpp"

using namespace coslab;

namespace {

constexpr std::uint64_t kSeed = 987654321ull;
int g_failures = 0;

void report(int criterion, bool pass, const char* title, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, title,
                detail.c_str());
    if (!pass)
        ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

template <typename Fn>
double worst_trials(std::uint64_t salt, long trials, Fn&& fn) {
    std::vector<double> res(trials, 0.0);
    kernels::for_each_index(static_cast<int>(trials), [&](int i) {
        Rng rng = Rng::for_trial(kSeed ^ salt, static_cast<std::uint64_t>(i));
        res[i] = fn(rng);
    });
    double worst = 0.0;
    for (const double r : res)
        worst = std::max(worst, r);
    return worst;
}

// 1. d'Alembert conformance on random generator families.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const double worst = worst_trials(1, 200, [](Rng& rng) {
        const int dim = rng.uniform_int(1, 8);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 2.0));
        const CosineFamily f = CosineFamily::generator(a);
        double local = 0.0;
        for (int pair = 0; pair < 100; ++pair)
            local = std::max(local, dalembert_residual(f, rng.uniform(-3.0, 3.0),
                                                       rng.uniform(-3.0, 3.0)));
        return local;
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, worst <= 1e-9 && secs <= 60.0, "d'Alembert conformance",
           fmt("worst residual %.3g, tol 1e-9; %.1fs of 60s", worst, secs));
}

// 2. Chebyshev triple agreement + sequence extension.
void criterion_2() {
    const double worst_triple = worst_trials(2, 1000, [](Rng& rng) {
        const double x = rng.uniform(-1.0, 1.0);
        const cdouble xe(x, 0.0);
        double local = 0.0;
        for (int n = 0; n <= 30; ++n) {
            const double trig = std::cos(n * std::acos(x));
            local = std::max(local, std::abs(cheb_explicit(n, xe) - cdouble(trig, 0.0)));
            local = std::max(local,
                             std::abs(cheb_recurrence(n, xe) - cdouble(trig, 0.0)));
        }
        return local;
    });
    const double worst_extend = worst_trials(3, 100, [](Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        // rho cap keeps cos(n a) in the regime where an absolute 1e-8 match
        // between two double-precision routes is meaningful; ||a|| <= 1 holds.
        const double rho = spectral_radius_eig(a);
        if (rho > 0.5)
            a *= cdouble(0.5 / rho, 0.0);
        const Matrix c1 = matrix_cos(a, 1.0);
        double local = 0.0;
        for (const long n : {1L, 5L, 12L, 20L}) {
            const Matrix lhs = extend_cosine_sequence(c1, n);
            local = std::max(local,
                             operator_norm(lhs - matrix_cos(a, static_cast<double>(n))));
        }
        return local;
    });
    report(2, worst_triple <= 1e-10 && worst_extend <= 1e-8, "Chebyshev agreement",
           fmt("triple worst %.3g (tol 1e-10), extension worst %.3g (tol 1e-8)",
               worst_triple, worst_extend));
}

// 3. Square-root series: idempotence, certified bound, Newton agreement.
void criterion_3() {
    double worst_idem = 0.0, worst_bound = 0.0;
    {
        std::vector<double> idem(1000), bound(1000);
        kernels::for_each_index(1000, [&](int i) {
            Rng rng = Rng::for_trial(kSeed ^ 4, i);
            const int dim = rng.uniform_int(2, 6);
            const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.99));
            const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
            const Matrix one = Matrix::identity(dim);
            idem[i] = operator_norm(r.value * r.value - (one - x));
            bound[i] = operator_norm(one - r.value) - r.certified_bound;
        });
        for (int i = 0; i < 1000; ++i) {
            worst_idem = std::max(worst_idem, idem[i]);
            worst_bound = std::max(worst_bound, bound[i]);
        }
    }
    const double worst_newton = worst_trials(5, 200, [](Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.9));
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
        return operator_norm(r.value - matrix_sqrt_newton(Matrix::identity(dim) - x));
    });
    report(3, worst_idem <= 1e-8 && worst_bound <= 1e-9 && worst_newton <= 1e-8,
           "square-root series",
           fmt("idempotence %.3g (1e-8), bound excess %.3g (1e-9), ", worst_idem,
               worst_bound) +
               fmt("Newton gap %.3g (1e-8)", worst_newton));
}

// 4. Half-angle reconstruction under verified hypotheses + flagged
// counterexample.
void criterion_4() {
    const double worst = worst_trials(6, 200, [](Rng& rng) {
        const int dim = rng.uniform_int(1, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        const CosineFamily f = CosineFamily::generator(a);
        const double t = rng.uniform(1e-3, 1.0);
        const Matrix ct = f.eval(t);
        const Matrix half = f.eval(t * 0.5);
        const Matrix one = Matrix::identity(dim);
        if (operator_norm(ct - one) > 2.0 ||
            spectral_radius_eig(half - one) >= 0.99)
            return 0.0; // hypothesis not met; outside the criterion
        return operator_norm(half_angle_reconstruct(ct, 1e-9).value - half);
    });

    const CosineFamily counter = CosineFamily::scalar_cos(cdouble(2.0, 0.0));
    const RefinementTrace trace = dyadic_refine(counter, std::acos(-1.0), 6, 1e-9);
    const bool flagged = trace.truncated && !trace.steps.empty() &&
                         !trace.steps.front().precondition_ok &&
                         trace.steps.back().flagged && trace.steps.back().deviation > 1.0;
    report(4, worst <= 1e-7 && flagged, "half-angle reconstruction",
           fmt("worst deviation %.3g (tol 1e-7); counterexample flagged: ", worst) +
               (flagged ? "yes" : "NO"));
}

// 5. Dyadic envelope + contraction sequence.
void criterion_5() {
    const double worst_env = worst_trials(7, 50, [](Rng& rng) {
        const int dim = rng.uniform_int(1, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 1.0));
        const CosineFamily f = CosineFamily::generator(a);
        const RefinementTrace trace = dyadic_refine(f, 1.0, 12, 1e-9);
        double local = 0.0;
        for (const RefinementStep& s : trace.steps)
            if (s.t <= trace.eta && !s.flagged)
                local = std::max(local, s.norm_gap - s.envelope);
        return local;
    });

    const ContractionSequence seq = ContractionSequence::make(120);
    bool exact_iteration = seq.values[0] == 2.0;
    for (std::size_t n = 0; n + 1 < seq.values.size(); ++n) {
        const double u = seq.values[n];
        const double stable = (u * 0.5) / (1.0 + std::sqrt(1.0 - u * 0.5));
        if (seq.values[n + 1] != stable)
            exact_iteration = false; // must be the iteration itself, bit-for-bit
        if (n <= 20) {
            const double direct = 1.0 - std::sqrt(1.0 - u * 0.5);
            if (std::fabs(seq.values[n + 1] - direct) > 1e-15)
                exact_iteration = false;
        }
    }
    double worst_ratio = 0.0;
    for (std::size_t n = 6; n < 100; ++n)
        worst_ratio =
            std::max(worst_ratio, std::fabs(seq.values[n + 1] / seq.values[n] - 0.25));
    report(5, worst_env <= 1e-9 && exact_iteration && worst_ratio <= 0.01,
           "contraction envelope",
           fmt("envelope excess %.3g (tol 1e-9), ratio dev %.3g (tol 0.01), ", worst_env,
               worst_ratio) +
               (exact_iteration ? "iteration exact" : "ITERATION MISMATCH"));
}

// 6. Trichotomy witnesses.
void criterion_6() {
    SamplingPlan plan;
    bool pass = true;
    std::string detail;

    const TrichotomyReport zero =
        limsup_estimate(CosineFamily::scalar_cos(cdouble(3.0, 0.0)), plan);
    if (zero.branch != Branch::Zero || zero.sup_profile.back().sup > 1e-6)
        pass = false;
    detail += fmt("zero final sup %.3g; ", zero.sup_profile.back().sup);

    HamelSpec cos_spec;
    const TrichotomyReport two = limsup_estimate(CosineFamily::hamel(cos_spec), plan);
    const std::vector<Convergent> conv = convergents(Irrational::Sqrt2, 30);
    double base_max = 0.0;
    long attained_q = 0;
    for (int k = 0; k < 30; ++k) {
        const double v =
            std::fabs(std::cos(conv[k].q.convert_to<double>()) - 1.0);
        if (v > base_max) {
            base_max = v;
            attained_q = conv[k].q.convert_to<long>();
        }
        if (base_max >= 1.9)
            break;
    }
    if (two.branch != Branch::Two || base_max < 1.9)
        pass = false;
    detail += fmt("two max |c-1| %.4f at q=", base_max) + std::to_string(attained_q) + "; ";

    HamelSpec cosh_spec;
    cosh_spec.kind = HamelSpec::Kind::Cosh;
    const TrichotomyReport inf = limsup_estimate(CosineFamily::hamel(cosh_spec), plan);
    const double cosh_q5 = std::cosh(conv[4].q.convert_to<double>()); // q_5 = 29
    if (inf.branch != Branch::Infinity || !(cosh_q5 > 1e6))
        pass = false;
    detail += fmt("infinity witness cosh(29) = %.3g > 1e6", cosh_q5);

    report(6, pass, "trichotomy witnesses", detail);
}

// 7. Character identity and spectral lower bound.
void criterion_7() {
    const std::vector<double> scales{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    const double worst = worst_trials(8, 100, [&](Rng& rng) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix a = random_matrix_with_norm(rng, dim, rng.uniform(0.1, 2.0));
        const SpectralCharacterization sc = spectral_limsup(a, scales);
        double local = 0.0;
        for (const SpectralScaleRow& row : sc.rows) {
            local = std::max(local, row.pairing_max_dist);
            local = std::max(local, row.lower_bound - row.rho_gap);
        }
        return local;
    });
    report(7, worst <= 1e-8, "character identity and spectral lower bound",
           fmt("worst excess %.3g (tol 1e-8) over 100 generators x 6 scales", worst));
}

// 8. Fixed-point scan.
void criterion_8() {
    const double margin = fixed_point_scan(100000);
    report(8, margin > 0.0, "fixed-point scan",
           fmt("l <= 1-sqrt(1-l/2) fails on all 1e5 grid points; min margin %.3g",
               margin));
}

// 9. Byte-identical reproducible verify runs.
void criterion_9(const char* cli_path) {
    if (cli_path == nullptr) {
        report(9, false, "determinism", "cosine-lab binary path not supplied");
        return;
    }
    const std::string cmd = std::string(cli_path) +
                            " verify --reproducible --seed 424242 --format json 2>/dev/null";
    std::array<std::string, 2> outputs;
    for (auto& out : outputs) {
        FILE* pipe = popen(cmd.c_str(), "r");
        if (pipe == nullptr) {
            report(9, false, "determinism", "failed to spawn the CLI");
            return;
        }
        std::array<char, 8192> buf;
        std::size_t got;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            out.append(buf.data(), got);
        const int status = pclose(pipe);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
            report(9, false, "determinism", "verify run failed");
            return;
        }
    }
    const bool identical = outputs[0] == outputs[1] && !outputs[0].empty();
    report(9, identical, "determinism",
           identical ? fmt("two runs, %.0f bytes each, identical",
                           static_cast<double>(outputs[0].size()))
                     : "runs differ");
}

} // namespace

int main(int argc, char** argv) {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(argc > 1 ? argv[1] : nullptr);

    std::printf("%d of 9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
