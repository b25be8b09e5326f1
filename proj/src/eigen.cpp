#include "coslab/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "coslab/errors.hpp"

namespace coslab {

std::vector<double> Spectrum::real_parts() const {
    std::vector<double> r(eigenvalues.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        r[i] = eigenvalues[i].real();
    return r;
}

std::vector<double> Spectrum::imag_parts() const {
    std::vector<double> r(eigenvalues.size());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        r[i] = eigenvalues[i].imag();
    return r;
}

double Spectrum::spectral_radius() const {
    double r = 0.0;
    for (const auto& ev : eigenvalues)
        r = std::max(r, std::abs(ev));
    return r;
}

namespace {

constexpr double kDeflateTol = 1e-12;

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(Matrix& h) {
    const int n = h.dim();
    std::vector<cdouble> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i)
            xnorm2 += std::norm(h(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0)
            continue;
        const cdouble alpha = h(k + 1, k);
        const double aabs = std::abs(alpha);
        const cdouble beta = aabs == 0.0 ? cdouble(xnorm, 0.0) : alpha / aabs * xnorm;

        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = h(i, k);
            if (i == k + 1)
                v[i] += beta;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0)
            continue;
        const double scale = 2.0 / vnorm2;

        // Left: H <- (I - scale v v^H) H on rows k+1..n-1.
        for (int j = k; j < n; ++j) {
            cdouble w(0.0, 0.0);
            for (int i = k + 1; i < n; ++i)
                w += std::conj(v[i]) * h(i, j);
            w *= scale;
            for (int i = k + 1; i < n; ++i)
                h(i, j) -= w * v[i];
        }
        // Right: H <- H (I - scale v v^H) on columns k+1..n-1.
        for (int i = 0; i < n; ++i) {
            cdouble w(0.0, 0.0);
            for (int j = k + 1; j < n; ++j)
                w += h(i, j) * v[j];
            w *= scale;
            for (int j = k + 1; j < n; ++j)
                h(i, j) -= w * std::conj(v[j]);
        }
        h(k + 1, k) = -beta;
        for (int i = k + 2; i < n; ++i)
            h(i, k) = cdouble(0.0, 0.0);
    }
}

struct GivensRotation {
    double c;   // real cosine
    cdouble s;  // complex sine; [c s; -conj(s) c]^... annihilates the second entry
};

GivensRotation make_givens(cdouble f, cdouble g) {
    if (g == cdouble(0.0, 0.0))
        return {1.0, cdouble(0.0, 0.0)};
    if (f == cdouble(0.0, 0.0)) {
        const double gabs = std::abs(g);
        return {0.0, std::conj(g) / gabs};
    }
    const double fabs2 = std::norm(f);
    const double d = std::sqrt(fabs2 + std::norm(g));
    const double fabs = std::sqrt(fabs2);
    const double c = fabs / d;
    const cdouble s = f / fabs * (std::conj(g) / d);
    return {c, s};
}

// Eigenvalues of the 2x2 block [[a,b],[c,d]].
void eig2x2(cdouble a, cdouble b, cdouble c, cdouble d, cdouble& l1, cdouble& l2) {
    const cdouble half_tr = 0.5 * (a + d);
    const cdouble delta = 0.5 * (a - d);
    const cdouble root = std::sqrt(delta * delta + b * c);
    l1 = half_tr + root;
    l2 = half_tr - root;
}

// Wilkinson shift: eigenvalue of the trailing 2x2 closest to h(hi,hi).
cdouble wilkinson_shift(const Matrix& h, int hi) {
    const cdouble a = h(hi - 1, hi - 1);
    const cdouble b = h(hi - 1, hi);
    const cdouble c = h(hi, hi - 1);
    const cdouble d = h(hi, hi);
    const cdouble delta = 0.5 * (a - d);
    cdouble root = std::sqrt(delta * delta + b * c);
    if (std::abs(delta + root) < std::abs(delta - root))
        root = -root;
    const cdouble denom = delta + root;
    if (denom == cdouble(0.0, 0.0))
        return d;
    return d - b * c / denom;
}

// One implicit single-shift QR sweep on the active block [lo, hi].
void qr_sweep(Matrix& h, int lo, int hi, cdouble shift) {
    cdouble x = h(lo, lo) - shift;
    cdouble y = h(lo + 1, lo);
    for (int k = lo; k < hi; ++k) {
        const GivensRotation g = make_givens(x, y);
        const int jlo = std::max(lo, k - 1);
        for (int j = jlo; j <= hi; ++j) {
            const cdouble t1 = h(k, j);
            const cdouble t2 = h(k + 1, j);
            h(k, j) = g.c * t1 + g.s * t2;
            h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
        }
        const int ihi = std::min(hi, k + 2);
        for (int i = lo; i <= ihi; ++i) {
            const cdouble t1 = h(i, k);
            const cdouble t2 = h(i, k + 1);
            h(i, k) = g.c * t1 + std::conj(g.s) * t2;
            h(i, k + 1) = -g.s * t1 + g.c * t2;
        }
        if (k < hi - 1) {
            x = h(k + 1, k);
            y = h(k + 2, k);
        }
    }
}

} // namespace

Spectrum spectrum(const Matrix& x) {
    if (!x.all_finite())
        throw invalid_input_error("spectrum: non-finite entries");
    const int n = x.dim();
    Spectrum result;
    result.eigenvalues.reserve(n);
    if (n == 1) {
        result.eigenvalues.push_back(x(0, 0));
        return result;
    }

    Matrix h = x;
    hessenberg_reduce(h);

    int hi = n - 1;
    int iterations = 0;
    int stalled = 0;
    const int cap = 100 * n;
    while (hi >= 0) {
        // Deflate any negligible subdiagonals below the active corner.
        for (int i = 0; i < hi; ++i) {
            const double bound = kDeflateTol * (std::abs(h(i, i)) + std::abs(h(i + 1, i + 1)));
            if (std::abs(h(i + 1, i)) <= std::max(bound, 1e-300))
                h(i + 1, i) = cdouble(0.0, 0.0);
        }
        if (hi == 0 || h(hi, hi - 1) == cdouble(0.0, 0.0)) {
            result.eigenvalues.push_back(h(hi, hi));
            --hi;
            stalled = 0;
            continue;
        }
        // Find the start of the unreduced block ending at hi.
        int lo = hi - 1;
        while (lo > 0 && h(lo, lo - 1) != cdouble(0.0, 0.0))
            --lo;
        if (hi - lo == 1) {
            cdouble l1, l2;
            eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
            result.eigenvalues.push_back(l1);
            result.eigenvalues.push_back(l2);
            hi = lo - 1;
            stalled = 0;
            continue;
        }
        if (++iterations > cap) {
            double worst = 0.0;
            for (int i = lo; i < hi; ++i)
                worst = std::max(worst, std::abs(h(i + 1, i)));
            throw numerical_failure("spectrum: QR iteration cap exceeded", worst);
        }
        cdouble shift = wilkinson_shift(h, hi);
        if (++stalled % 10 == 0) {
            // Exceptional shift to break symmetric stalls.
            shift = h(hi, hi) + cdouble(0.75 * std::abs(h(hi, hi - 1)), 0.0);
        }
        qr_sweep(h, lo, hi, shift);
    }
    return result;
}

std::vector<double> hermitian_eigenvalues(const Matrix& input) {
    const int n = input.dim();
    Matrix b = input;
    const double frob = b.frobenius_norm();
    if (frob == 0.0)
        return std::vector<double>(n, 0.0);
    const double stop = 1e-14 * frob;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += 2.0 * std::norm(b(p, q));
        if (std::sqrt(off) <= stop)
            break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble beta = b(p, q);
                const double babs = std::abs(beta);
                if (babs <= 1e-300)
                    continue;
                // diag(1, phase) turns the (p,q) pivot into the real |beta|.
                const cdouble phase = std::conj(beta) / babs;
                const double app = b(p, p).real();
                const double aqq = b(q, q).real();
                const double tau = (aqq - app) / (2.0 * babs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary U = diag(1, phase) * [[c, s], [-s, c]] acting on (p,q).
                const cdouble sp = s * phase;
                const cdouble cp = c * phase;
                for (int i = 0; i < n; ++i) {
                    const cdouble bip = b(i, p);
                    const cdouble biq = b(i, q);
                    b(i, p) = c * bip - sp * biq;
                    b(i, q) = s * bip + cp * biq;
                }
                for (int j = 0; j < n; ++j) {
                    const cdouble bpj = b(p, j);
                    const cdouble bqj = b(q, j);
                    b(p, j) = c * bpj - std::conj(sp) * bqj;
                    b(q, j) = s * bpj + std::conj(cp) * bqj;
                }
                b(p, q) = cdouble(0.0, 0.0);
                b(q, p) = cdouble(0.0, 0.0);
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i)
        eig[i] = b(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double operator_norm(const Matrix& x) {
    if (!x.all_finite())
        throw invalid_input_error("operator_norm: non-finite entries");
    const int n = x.dim();
    if (n == 1)
        return std::abs(x(0, 0));
    const double m = x.max_abs();
    if (m == 0.0)
        return 0.0;
    // Exact power-of-two prescaling: forming x^H x squares the magnitude, which
    // would underflow below ~1e-154 otherwise.
    const double scale = std::ldexp(1.0, -std::ilogb(m));
    const Matrix xs = x * cdouble(scale, 0.0);
    const Matrix gram = xs.adjoint() * xs;
    const std::vector<double> eig = hermitian_eigenvalues(gram);
    const double lmax = std::max(0.0, eig.back());
    return std::sqrt(lmax) / scale;
}

double spectral_radius_eig(const Matrix& x) { return spectrum(x).spectral_radius(); }

GelfandEstimate spectral_radius_gelfand(const Matrix& x, int k_max) {
    if (k_max < 1)
        throw invalid_input_error("spectral_radius_gelfand: k_max must be >= 1");
    if (!x.all_finite())
        throw invalid_input_error("spectral_radius_gelfand: non-finite entries");

    GelfandEstimate est;
    Matrix power = x;
    double norm = operator_norm(power);
    est.value = norm;
    est.k_used = 0;
    if (norm == 0.0)
        return est;
    for (int k = 1; k <= k_max; ++k) {
        const Matrix next = power * power;
        const double next_norm = operator_norm(next);
        if (next_norm == 0.0 && norm >= 1e-130) {
            // An exact zero reached from a moderate norm is true nilpotency,
            // not underflow: the spectral radius is exactly zero.
            est.value = 0.0;
            est.k_used = k;
            return est;
        }
        // The lower guard sits at 1e-130 so one more squaring cannot jump
        // below the denormal floor and masquerade as nilpotency.
        if (!std::isfinite(next_norm) || next_norm > 1e150 || next_norm < 1e-130) {
            est.guard_triggered = true;
            return est;
        }
        power = next;
        norm = next_norm;
        est.value = std::pow(norm, std::ldexp(1.0, -k));
        est.k_used = k;
    }
    return est;
}

} // namespace coslab
