#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coslab/cosine_family.hpp"
#include "coslab/complex_matrix.hpp"
#include "coslab/sqrt_series.hpp"

namespace coslab {

// ---------------------------------------------------------------------------
// Half-angle reconstruction: C(t/2) = sqrt(1 - (1 - C(t))/2), valid whenever
// ||C(t) - 1|| <= 2 and rho(C(t/2) - 1) < 1.
// ---------------------------------------------------------------------------

struct HalfAngleResult {
    Matrix value;
    bool flagged_slow = false;
    double tail_bound = 0.0;
};

/// Applies the series square root to (1 - C(t))/2. Checks ||C(t) - 1|| <= 2
/// (throws domain_error beyond it); the spectral precondition on C(t/2) is the
/// caller's to verify, since a pure reconstructor does not have C(t/2) yet.
HalfAngleResult half_angle_reconstruct(const Matrix& ct, double tol);

/// 1 - sqrt(1 - ||C(t) - 1||/2): the certified bound for ||C(t/2) - 1||.
double half_angle_bound(const Matrix& ct);

// ---------------------------------------------------------------------------
// The contraction envelope u_0 = 2, u_{n+1} = 1 - sqrt(1 - u_n/2).
// ---------------------------------------------------------------------------

struct ContractionSequence {
    std::optional<double> eta;  // present when measured by a refinement run
    std::vector<double> values; // u_0 .. u_n_max

    static ContractionSequence make(int n_max);
};

// ---------------------------------------------------------------------------
// Dyadic refinement trace.
// ---------------------------------------------------------------------------

struct RefinementStep {
    int n = 0;
    double t = 0.0;              // t0 / 2^n
    Matrix reconstructed;        // chained half-angle reconstruction
    Matrix ground_truth;         // eval(f, t)
    double deviation = 0.0;      // ||reconstructed - ground_truth||
    double norm_gap = 0.0;       // ||C(t) - 1||
    double envelope = 0.0;       // u_n
    double precondition_rho = 0.0; // rho(C(t/2) - 1), the hypothesis for step n+1
    bool precondition_ok = true;
    bool flagged = false;        // this step was produced under a violated hypothesis
};

struct RefinementTrace {
    double t0 = 0.0;
    double eta = 0.0; // largest pre-scanned scale below which both hypotheses held
    std::vector<RefinementStep> steps;
    bool truncated = false;
};

/// Chains half-angle reconstructions from C(t0) downward, comparing each step
/// against ground truth and against the u_n envelope. A violated hypothesis
/// produces one flagged step and truncates the trace; it never throws.
RefinementTrace dyadic_refine(const CosineFamily& f, double t0, int n_steps, double tol);

// ---------------------------------------------------------------------------
// Trichotomy classification.
// ---------------------------------------------------------------------------

enum class Branch { Zero, Two, Infinity, Inconclusive };

std::string branch_name(Branch b);

struct SampleRef {
    bool is_group = false;
    double t = 0.0;        // |t| of the sample (embedded value for group points)
    std::string p, q;      // group coordinates, empty for real samples
    double gap = 0.0;      // ||C(t) - 1||; largest finite value seen on overflow
    bool overflowed = false;
};

struct TrichotomyWindow {
    double delta = 0.0;
    long n_samples = 0;
    double sup = 0.0; // over finite samples; +overflow flag lives on the report
};

struct ClassifierConfig {
    double zero_hi = 0.1;
    double two_lo = 1.9;
    double two_hi = 2.0 + 1e-6;
    double inf_threshold = 1e6;
    int min_window_samples = 16; // windows with fewer samples are too sparse to trust
    int plateau_windows = 6;     // deepest trustworthy windows that must stay >= two_lo
};

struct SamplingPlan {
    // Geometric plan (generator / scalar realizations): t_j = t_init * 2^-j.
    double t_init = 1.0;
    int n_scales = 24;
    int samples_per_scale = 4;
    // Convergent-based plan (Hamel realizations).
    int n_convergents = 30;
    int n_multiples = 64;
};

struct TrichotomyReport {
    Branch branch = Branch::Inconclusive;
    std::vector<TrichotomyWindow> sup_profile; // nonincreasing by construction
    SampleRef witness;                         // attains l_estimate
    double m_estimate = 0.0;                   // sup ||C|| over finite samples
    double l_estimate = 0.0;
    bool overflow_seen = false;
    std::string note; // e.g. marks Hamel families as constructed witnesses
    ClassifierConfig config;
};

/// Windowed sup profile of ||C(t) - 1|| over shrinking scales with branch
/// classification. Hamel families are sampled on integer multiples of
/// continued-fraction convergent points; everything else geometrically.
TrichotomyReport limsup_estimate(const CosineFamily& f, const SamplingPlan& plan,
                                 const ClassifierConfig& config = {});

// ---------------------------------------------------------------------------
// Spectral instruments.
// ---------------------------------------------------------------------------

struct CharacterRecord {
    cdouble a_chi{0.0, 0.0};
    double u_chi = 0.0;
    double v_chi = 0.0;
};

/// |1 - cos(t u) cosh(t v)|: the per-character lower bound for rho(C(t) - 1).
double character_lower_bound(double t, double u, double v);

struct SpectralScaleRow {
    double t = 0.0;
    double rho_gap = 0.0;          // rho(C(t) - 1)
    double lower_bound = 0.0;      // max over characters of |1 - cos(tu)cosh(tv)|
    bool lower_bound_ok = false;   // rho_gap >= lower_bound - 1e-8
    double pairing_max_dist = 0.0; // worst eigenvalue-vs-cos(t a_chi) pairing distance
    bool pairing_ok = false;
    double char_sup = 0.0;         // max over characters of |cos(t a_chi) - 1|
};

struct SpectralCharacterization {
    std::vector<CharacterRecord> characters;
    std::vector<SpectralScaleRow> rows;
    double final_char_sup = 0.0;
};

/// Verifies chi(C(t)) = cos(t a_chi) as a multiset identity (greedy
/// minimal-distance pairing) and the spectral-radius lower bound, across the
/// given decreasing scales.
SpectralCharacterization spectral_limsup(const Matrix& a, const std::vector<double>& t_scales);

struct ZeroTwoCheckReport {
    bool bounded = true;     // finite dimension: always true, recorded as such
    double max_abs_char = 0.0;
    bool converged = false;  // sup_chi |cos(t a_chi) - 1| dropped below 1e-8
    double final_sup = 0.0;
    double final_scale = 0.0;
    std::string note;
};

/// Shrinks the window until sup_chi |cos(t a_chi) - 1| < 1e-8; at finite
/// dimension this realizes the dichotomy only vacuously, which the note says.
ZeroTwoCheckReport spectral_zero_two_check(const Matrix& a);

/// Scans l in (0, 2] on a uniform grid and confirms l <= 1 - sqrt(1 - l/2)
/// fails everywhere; returns the smallest margin l - rhs(l) observed.
double fixed_point_scan(long grid_points);

} // namespace coslab
