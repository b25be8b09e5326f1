#include "coslab/zero_two.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"
#include "coslab/matrix_functions.hpp"

namespace coslab {

HalfAngleResult half_angle_reconstruct(const Matrix& ct, double tol) {
    const int dim = ct.dim();
    const Matrix one = Matrix::identity(dim);
    const double gap = operator_norm(ct - one);
    if (gap > 2.0 + 2e-12)
        throw domain_error("half_angle_reconstruct: requires ||C(t) - 1|| <= 2");
    const Matrix half_defect = (one - ct) * cdouble(0.5, 0.0);
    MatrixSqrtSeriesResult s = matrix_sqrt_series(half_defect, tol);
    return {std::move(s.value), s.flagged_slow, s.tail_bound};
}

double half_angle_bound(const Matrix& ct) {
    const double gap = operator_norm(ct - Matrix::identity(ct.dim()));
    if (gap > 2.0 + 2e-12)
        throw domain_error("half_angle_bound: requires ||C(t) - 1|| <= 2");
    return bound_rhs(std::min(gap, 2.0) / 2.0);
}

ContractionSequence ContractionSequence::make(int n_max) {
    if (n_max < 1)
        throw invalid_input_error("ContractionSequence: n_max must be >= 1");
    ContractionSequence c;
    c.values.reserve(n_max + 1);
    double u = 2.0;
    c.values.push_back(u);
    for (int n = 0; n < n_max; ++n) {
        // u/2 / (1 + sqrt(1 - u/2)) == 1 - sqrt(1 - u/2), but stays strictly
        // positive all the way down to the underflow floor; the direct form
        // collapses to 0 once u < 4 eps.
        u = (u * 0.5) / (1.0 + std::sqrt(1.0 - u * 0.5));
        c.values.push_back(u);
    }
    return c;
}

RefinementTrace dyadic_refine(const CosineFamily& f, double t0, int n_steps, double tol) {
    if (!f.supports_real_argument())
        throw type_error("dyadic_refine: family must accept real arguments");
    if (n_steps < 1 || n_steps > 40)
        throw invalid_input_error("dyadic_refine: n_steps must lie in [1, 40]");
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw invalid_input_error("dyadic_refine: t0 must be positive and finite");

    const int dim = f.dim();
    const Matrix one = Matrix::identity(dim);
    const ContractionSequence envelope = ContractionSequence::make(n_steps + 1);

    // Pre-scan: eta is the largest sampled scale such that both hypotheses
    // (norm gap <= 2, spectral gap of the half scale < 1) hold at it and at
    // every sampled scale below it.
    RefinementTrace trace;
    trace.t0 = t0;
    trace.eta = 0.0;
    std::vector<double> gaps(n_steps + 1);
    std::vector<double> rhos(n_steps + 1);
    for (int n = 0; n <= n_steps; ++n) {
        const double t = std::ldexp(t0, -n);
        gaps[n] = operator_norm(f.eval(t) - one);
        rhos[n] = spectral_radius_eig(f.eval(t * 0.5) - one);
    }
    for (int n = n_steps; n >= 0; --n) {
        if (gaps[n] <= 2.0 && rhos[n] < 1.0)
            trace.eta = std::ldexp(t0, -n);
        else
            break;
    }

    Matrix reconstructed = f.eval(t0);
    for (int n = 0; n <= n_steps; ++n) {
        const double t = std::ldexp(t0, -n);
        RefinementStep step;
        step.n = n;
        step.t = t;
        step.ground_truth = f.eval(t);
        if (n > 0) {
            const HalfAngleResult h = half_angle_reconstruct(reconstructed, tol);
            reconstructed = h.value;
        }
        step.reconstructed = reconstructed;
        step.deviation = operator_norm(step.reconstructed - step.ground_truth);
        step.norm_gap = operator_norm(step.ground_truth - one);
        step.envelope = envelope.values[n];
        step.precondition_rho = rhos[n];
        step.precondition_ok = rhos[n] < 1.0 && gaps[n] <= 2.0;
        step.flagged = n > 0 && !trace.steps.back().precondition_ok;
        trace.steps.push_back(std::move(step));
        if (trace.steps.back().flagged) {
            trace.truncated = true;
            break;
        }
        // The next reconstruction needs ||C(t_n) - 1|| <= 2 on the chained value.
        if (n < n_steps && operator_norm(reconstructed - one) > 2.0 + 2e-12) {
            trace.truncated = true;
            break;
        }
    }
    return trace;
}

std::string branch_name(Branch b) {
    switch (b) {
    case Branch::Zero:
        return "zero";
    case Branch::Two:
        return "two";
    case Branch::Infinity:
        return "infinity";
    case Branch::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

namespace {

struct RawSample {
    SampleRef ref;
    double family_norm = 0.0; // ||C||, finite samples only
};

// ||C(arg) - 1|| with overflow converted to a flagged sample.
template <typename EvalFn>
RawSample measure_sample(int dim, EvalFn&& eval) {
    RawSample s;
    const Matrix value = eval();
    if (!value.all_finite()) {
        s.ref.overflowed = true;
        s.ref.gap = std::numeric_limits<double>::infinity();
        s.family_norm = std::numeric_limits<double>::infinity();
        return s;
    }
    s.ref.gap = operator_norm(value - Matrix::identity(dim));
    s.family_norm = operator_norm(value);
    return s;
}

} // namespace

TrichotomyReport limsup_estimate(const CosineFamily& f, const SamplingPlan& plan,
                                 const ClassifierConfig& config) {
    TrichotomyReport report;
    report.config = config;

    std::vector<RawSample> samples;
    std::vector<double> deltas;

    if (f.is_hamel())
        report.note = "Hamel-type family: a constructed witness on exact group "
                      "coordinates, sampled along continued-fraction convergents";

    if (f.is_hamel()) {
        const HamelSpec& spec = f.hamel_spec();
        const int n_conv = std::min(plan.n_convergents, kMaxConvergents);
        if (n_conv < 1 || plan.n_multiples < 1)
            throw invalid_input_error("limsup_estimate: convergent plan must be nonempty");
        const std::vector<Convergent> conv = convergents(spec.xi, n_conv);
        for (const Convergent& c : conv) {
            // p*b1 + q*b2 = b1(p - q*xi) embeds near zero at (p, -q); integer
            // multiples stay in the group and fill the windows.
            for (int mult = 1; mult <= plan.n_multiples; ++mult) {
                const GroupPoint g = spec.point(c.p * mult, -c.q * mult);
                RawSample s = measure_sample(1, [&] { return f.eval(g); });
                s.ref.is_group = true;
                s.ref.t = std::fabs(g.embedded);
                s.ref.p = g.p.str();
                s.ref.q = g.q.str();
                samples.push_back(std::move(s));
            }
        }
        deltas.reserve(conv.size());
        for (const Convergent& c : conv)
            deltas.push_back(c.gap * std::fabs(spec.b1));
    } else {
        if (plan.n_scales < 1 || plan.samples_per_scale < 1 || !(plan.t_init > 0.0))
            throw invalid_input_error("limsup_estimate: geometric plan must be nonempty");
        for (int j = 0; j < plan.n_scales; ++j) {
            const double delta = std::ldexp(plan.t_init, -j);
            deltas.push_back(delta);
            for (int i = 0; i < plan.samples_per_scale; ++i) {
                // Fractions in (1/2, 1]: scales overlap windows without gaps.
                const double frac =
                    1.0 - 0.5 * static_cast<double>(i) / plan.samples_per_scale;
                const double t = delta * frac;
                RawSample s = measure_sample(f.dim(), [&] { return f.eval(t); });
                s.ref.t = t;
                samples.push_back(std::move(s));
            }
        }
    }

    // Windowed sups over |t| <= delta; nested windows make the profile
    // nonincreasing by construction.
    std::sort(deltas.rbegin(), deltas.rend());
    for (const double delta : deltas) {
        TrichotomyWindow w;
        w.delta = delta;
        for (const RawSample& s : samples) {
            if (s.ref.t > delta)
                continue;
            ++w.n_samples;
            if (!s.ref.overflowed)
                w.sup = std::max(w.sup, s.ref.gap);
            else
                report.overflow_seen = true;
        }
        report.sup_profile.push_back(w);
    }

    // Aggregates over finite samples.
    double max_gap = 0.0;
    for (const RawSample& s : samples) {
        if (s.ref.overflowed) {
            report.overflow_seen = true;
            continue;
        }
        report.m_estimate = std::max(report.m_estimate, s.family_norm);
        max_gap = std::max(max_gap, s.ref.gap);
    }

    // l estimate: the sup of the deepest window that still has enough samples.
    const TrichotomyWindow* deepest_trusted = nullptr;
    for (const TrichotomyWindow& w : report.sup_profile)
        if (w.n_samples >= config.min_window_samples)
            deepest_trusted = &w;
    report.l_estimate = deepest_trusted          ? deepest_trusted->sup
                        : report.sup_profile.empty() ? 0.0
                                                     : report.sup_profile.back().sup;

    // Witness: deepest finite sample attaining the l estimate (or the first
    // overflowing sample for the unbounded branch).
    for (const RawSample& s : samples) {
        if (s.ref.overflowed) {
            if (!report.witness.overflowed)
                report.witness = s.ref;
            continue;
        }
        if (s.ref.gap >= report.l_estimate * (1.0 - 1e-12) && !report.witness.overflowed)
            report.witness = s.ref;
    }

    // Branch rules, most destructive first.
    bool sample_exceeds_inf = report.overflow_seen;
    for (const RawSample& s : samples)
        if (!s.ref.overflowed && s.ref.gap > config.inf_threshold) {
            sample_exceeds_inf = true;
            if (!report.witness.overflowed && report.witness.gap <= config.inf_threshold)
                report.witness = s.ref;
        }
    if (sample_exceeds_inf) {
        report.branch = Branch::Infinity;
        // Prefer a finite witness beyond the threshold when one exists.
        for (const RawSample& s : samples)
            if (!s.ref.overflowed && s.ref.gap > config.inf_threshold) {
                report.witness = s.ref;
                break;
            }
        report.l_estimate = max_gap;
        return report;
    }

    // Plateau: the deepest `plateau_windows` trustworthy windows all hold at
    // or above two_lo.
    std::vector<const TrichotomyWindow*> trusted;
    for (const TrichotomyWindow& w : report.sup_profile)
        if (w.n_samples >= config.min_window_samples)
            trusted.push_back(&w);
    bool plateau = trusted.size() >= static_cast<std::size_t>(config.plateau_windows);
    if (plateau) {
        for (std::size_t i = trusted.size() - config.plateau_windows; i < trusted.size(); ++i)
            if (trusted[i]->sup < config.two_lo)
                plateau = false;
    }
    bool any_in_two_band = false;
    for (const TrichotomyWindow& w : report.sup_profile)
        if (w.sup >= config.two_lo && w.sup <= config.two_hi)
            any_in_two_band = true;
    if (any_in_two_band && plateau) {
        report.branch = Branch::Two;
        return report;
    }

    const double final_sup = report.sup_profile.empty() ? 0.0 : report.sup_profile.back().sup;
    if (final_sup < config.zero_hi && report.l_estimate < config.zero_hi &&
        final_sup <= report.sup_profile.front().sup) {
        report.branch = Branch::Zero;
        return report;
    }

    report.branch = Branch::Inconclusive;
    return report;
}

double character_lower_bound(double t, double u, double v) {
    return std::fabs(1.0 - std::cos(t * u) * std::cosh(t * v));
}

SpectralCharacterization spectral_limsup(const Matrix& a, const std::vector<double>& t_scales) {
    SpectralCharacterization out;
    const Spectrum spec = spectrum(a);
    out.characters.reserve(spec.eigenvalues.size());
    for (const cdouble& ev : spec.eigenvalues)
        out.characters.push_back({ev, ev.real(), ev.imag()});

    const int dim = a.dim();
    const Matrix one = Matrix::identity(dim);
    for (const double t : t_scales) {
        SpectralScaleRow row;
        row.t = t;
        const Matrix ct = matrix_cos(a, t);
        const Spectrum ct_spec = spectrum(ct - one);
        row.rho_gap = ct_spec.spectral_radius();

        for (const CharacterRecord& ch : out.characters) {
            row.lower_bound = std::max(row.lower_bound,
                                       character_lower_bound(t, ch.u_chi, ch.v_chi));
            row.char_sup = std::max(row.char_sup,
                                    std::abs(std::cos(t * ch.a_chi) - cdouble(1.0, 0.0)));
        }
        row.lower_bound_ok = row.rho_gap >= row.lower_bound - 1e-8;

        // Multiset identity chi(C(t)) = cos(t a_chi) by greedy minimal-distance
        // pairing (eigenvalue order is arbitrary).
        std::vector<cdouble> predicted;
        predicted.reserve(out.characters.size());
        for (const CharacterRecord& ch : out.characters)
            predicted.push_back(std::cos(t * ch.a_chi));
        const Spectrum actual = spectrum(ct);
        std::vector<bool> used(predicted.size(), false);
        row.pairing_ok = true;
        for (const cdouble& ev : actual.eigenvalues) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < predicted.size(); ++i) {
                if (used[i])
                    continue;
                const double d = std::abs(ev - predicted[i]);
                if (d < best) {
                    best = d;
                    best_i = i;
                }
            }
            used[best_i] = true;
            row.pairing_max_dist = std::max(row.pairing_max_dist, best);
            if (best > 1e-6 * (1.0 + std::abs(out.characters[best_i].a_chi)))
                row.pairing_ok = false;
        }
        out.rows.push_back(row);
    }
    if (!out.rows.empty())
        out.final_char_sup = out.rows.back().char_sup;
    return out;
}

ZeroTwoCheckReport spectral_zero_two_check(const Matrix& a) {
    ZeroTwoCheckReport report;
    const Spectrum spec = spectrum(a);
    for (const cdouble& ev : spec.eigenvalues)
        report.max_abs_char = std::max(report.max_abs_char, std::abs(ev));
    report.bounded = true; // finitely many characters at finite dimension

    double t = 1.0;
    for (int j = 0; j < 120; ++j) {
        double sup = 0.0;
        for (const cdouble& ev : spec.eigenvalues)
            sup = std::max(sup, std::abs(std::cos(t * ev) - cdouble(1.0, 0.0)));
        report.final_sup = sup;
        report.final_scale = t;
        if (sup < 1e-8) {
            report.converged = true;
            break;
        }
        t *= 0.5;
    }
    report.note = "finite dimension: the character family is trivially bounded, so the "
                  "dichotomy is realized vacuously";
    return report;
}

double fixed_point_scan(long grid_points) {
    if (grid_points < 1)
        throw invalid_input_error("fixed_point_scan: grid must be nonempty");
    double worst_margin = std::numeric_limits<double>::infinity();
    for (long i = 1; i <= grid_points; ++i) {
        const double l = 2.0 * static_cast<double>(i) / static_cast<double>(grid_points);
        const double rhs = bound_rhs(l * 0.5);
        worst_margin = std::min(worst_margin, l - rhs);
    }
    return worst_margin;
}

} // namespace coslab
