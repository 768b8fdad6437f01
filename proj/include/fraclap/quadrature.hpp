#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"

namespace fraclap {

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    double tail_cutoff_tol = 1e-16;
    // Relative jitter of individual integrand evaluations. Zero means plain
    // floating point; integrands that are themselves quadrature results
    // (nested transforms) must declare their inner tolerance here or the
    // outer refinement chases noise it can never resolve.
    double integrand_noise = 0.0;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_cutoff_tol > 0.0))
            throw std::invalid_argument("QuadConfig: tolerances must be positive");
        if (max_subdivisions < 16)
            throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 16");
        if (integrand_noise < 0.0)
            throw std::invalid_argument("QuadConfig: integrand_noise must be >= 0");
    }

    QuadConfig with_noise(double noise) const {
        QuadConfig c = *this;
        c.integrand_noise = std::max(c.integrand_noise, noise);
        return c;
    }
};

// Vertical inversion contour Re s = abscissa, truncated to |Im s| <= height.
// A NaN abscissa requests automatic placement inside the admissible strip.
struct ContourSpec {
    double abscissa = std::numeric_limits<double>::quiet_NaN();
    double height = 60.0;
    int nodes = 4096;
    double target_tol = 1e-10;

    void validate() const {
        if (!(height > 0.0))
            throw std::invalid_argument("ContourSpec: height must be positive");
        if (nodes < 64)
            throw std::invalid_argument("ContourSpec: nodes must be >= 64");
        if (!(target_tol > 0.0))
            throw std::invalid_argument("ContourSpec: target_tol must be positive");
    }
};

template <class V>
struct QuadResult {
    V value{};
    double error = 0.0;
};

namespace detail {

// 15-point Gauss--Kronrod pair (QUADPACK dqk15 abscissae/weights).
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0,
};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999234, 0.209482141084727828012999174892,
};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816,
};

inline double abs_of(double v) { return std::abs(v); }
inline double abs_of(Complex v) { return std::abs(v); }

template <class V, class F>
void gk15(const F& f, double a, double b, V& integral, double& error, double& resabs) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V resk{}, resg{};
    resabs = 0.0;
    for (int j = 0; j < 8; ++j) {
        if (j == 7) {
            const V fc = f(c);
            if (!std::isfinite(abs_of(fc)))
                throw NumericError("quadrature: integrand returned a non-finite value");
            resk += gk15_wk[7] * fc;
            resg += gk15_wg[3] * fc;
            resabs += gk15_wk[7] * abs_of(fc);
            continue;
        }
        const double dx = h * gk15_x[j];
        const V f1 = f(c - dx), f2 = f(c + dx);
        if (!std::isfinite(abs_of(f1)) || !std::isfinite(abs_of(f2)))
            throw NumericError("quadrature: integrand returned a non-finite value");
        resk += gk15_wk[j] * (f1 + f2);
        resabs += gk15_wk[j] * (abs_of(f1) + abs_of(f2));
        if (j % 2 == 1)
            resg += gk15_wg[j / 2] * (f1 + f2);
    }
    integral = resk * h;
    const double diff = abs_of(resk - resg) * std::abs(h);
    resabs *= std::abs(h);
    // QUADPACK-style sharpened estimate
    error = diff;
    if (resabs > 0.0 && diff > 0.0) {
        const double r = std::pow(200.0 * diff / resabs, 1.5);
        error = resabs * std::min(1.0, r);
        error = std::max(error, std::numeric_limits<double>::epsilon() * 50.0 * resabs);
    }
}

template <class V>
struct Panel {
    double a, b, error, resabs;
    V value;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// Globally adaptive bisection on a finite interval. Converged when the
// error estimate drops below tolerance or below the roundoff saturation
// level of the accumulated |f| mass (cancellation-heavy integrands cannot
// do better in doubles).
template <class V, class F>
QuadResult<V> adapt(const F& f, double a, double b, const QuadConfig& cfg) {
    cfg.validate();
    std::vector<Panel<V>> heap;
    Panel<V> p0{a, b, 0.0, 0.0, V{}};
    gk15<V>(f, a, b, p0.value, p0.error, p0.resabs);
    heap.push_back(p0);
    V total = p0.value;
    double total_err = p0.error;
    double total_resabs = p0.resabs;
    int used = 1;
    auto target = [&] {
        const double saturation =
            std::max(100.0 * std::numeric_limits<double>::epsilon(), cfg.integrand_noise) *
            total_resabs;
        return std::max({cfg.abs_tol, cfg.rel_tol * abs_of(total), saturation});
    };
    while (total_err > target()) {
        if (used >= cfg.max_subdivisions)
            throw NoConvergence("quadrature: subdivision budget exhausted, error estimate " +
                                std::to_string(total_err));
        std::pop_heap(heap.begin(), heap.end());
        Panel<V> worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; accept its estimate
            total_err -= worst.error;
            worst.error = 0.0;
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            continue;
        }
        Panel<V> left{worst.a, mid, 0.0, 0.0, V{}}, right{mid, worst.b, 0.0, 0.0, V{}};
        gk15<V>(f, left.a, left.b, left.value, left.error, left.resabs);
        gk15<V>(f, right.a, right.b, right.value, right.error, right.resabs);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_resabs += left.resabs + right.resabs - worst.resabs;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        ++used;
    }
    return {total, total_err};
}

// Truncation bounds for an integrand on the whole real line: expand from
// [lo0, hi0] until |g| stays below cutoff * (observed peak) at several
// consecutive probes, or a hard cap is hit.
template <class F>
std::pair<double, double> scan_bounds(const F& g, double lo0, double hi0, double cutoff,
                                      double cap = 700.0) {
    double peak = 1e-300;
    auto probe = [&](double u) {
        const double m = detail::abs_of(g(u));
        peak = std::max(peak, m);
        return m;
    };
    for (double u = lo0; u <= hi0; u += 0.25 * (hi0 - lo0) + 1e-9)
        probe(u);
    double lo = lo0, hi = hi0;
    int quiet = 0;
    double step = 2.0;
    while (quiet < 3 && hi < cap) {
        hi += step;
        step = std::min(1.25 * step, 32.0);
        quiet = probe(hi) <= cutoff * peak ? quiet + 1 : 0;
    }
    quiet = 0;
    step = 2.0;
    while (quiet < 3 && lo > -cap) {
        lo -= step;
        step = std::min(1.25 * step, 32.0);
        quiet = probe(lo) <= cutoff * peak ? quiet + 1 : 0;
    }
    return {lo, hi};
}

} // namespace detail

// Adaptive integration over [a, b]; b may be +infinity (the tail is mapped
// through r = a + e^u). Endpoint singularities of integrable type are
// handled by bisection; the Kronrod nodes never touch the endpoints.
template <class F>
QuadResult<double> integrate(const F& f, double a, double b, const QuadConfig& cfg = {}) {
    if (std::isinf(b)) {
        // split off [a, a+1] so the log map only sees the tail
        auto head = detail::adapt<double>(f, a, a + 1.0, cfg);
        auto g = [&](double u) {
            const double r = std::exp(u);
            return f(a + r) * r;
        };
        auto [lo, hi] = detail::scan_bounds(g, 0.0, 2.0, cfg.tail_cutoff_tol);
        (void)lo; // integrand vanishes with r -> 0 only below u = 0; keep [0, hi]
        auto tail = detail::adapt<double>(g, 0.0, hi, cfg);
        return {head.value + tail.value, head.error + tail.error};
    }
    return detail::adapt<double>(f, a, b, cfg);
}

// Integral over (0, infinity) through the substitution r = e^u, which
// treats algebraic behaviour at the origin and decay at infinity on the
// same footing.
template <class F>
QuadResult<double> integrate_semiaxis(const F& f, const QuadConfig& cfg = {}) {
    auto g = [&](double u) {
        const double r = std::exp(u);
        return f(r) * r;
    };
    auto [lo, hi] = detail::scan_bounds(g, -2.0, 2.0, cfg.tail_cutoff_tol);
    auto res = detail::adapt<double>(g, lo, hi, cfg);
    return res;
}

template <class F>
QuadResult<Complex> integrate_semiaxis_complex(const F& f, const QuadConfig& cfg = {}) {
    auto g = [&](double u) {
        const double r = std::exp(u);
        return f(r) * r;
    };
    auto [lo, hi] = detail::scan_bounds(g, -2.0, 2.0, cfg.tail_cutoff_tol);
    return detail::adapt<Complex>(g, lo, hi, cfg);
}

namespace detail {

// Sum the alternating tail of an oscillatory segment series by repeated
// averaging (Euler transformation of the partial sums).
inline double euler_accelerate(const std::vector<double>& terms) {
    std::vector<double> row(terms.size());
    double s = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        s += terms[i];
        row[i] = s;
    }
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    return row[0];
}

// integral of trig(kappa r) * f(r) over (0, inf), partitioned at the zeros
// of the kernel, with Euler acceleration when the segment series decays
// slowly.
template <class F>
double oscillatory_semiaxis(const F& f, double kappa, bool cosine, const QuadConfig& cfg) {
    const double offset = cosine ? 0.5 : 1.0;
    auto kernel = [&](double r) { return (cosine ? std::cos(kappa * r) : std::sin(kappa * r)) * f(r); };
    QuadConfig seg_cfg = cfg;
    seg_cfg.max_subdivisions = std::max(64, cfg.max_subdivisions / 8);
    // Per-segment integration; segments deep in the integrand's noise floor
    // cannot satisfy the adaptive estimator, a single Kronrod pass is the
    // honest value there.
    auto segment = [&](double aa, double bb) {
        try {
            return detail::adapt<double>(kernel, aa, bb, seg_cfg).value;
        } catch (const NoConvergence&) {
            double val, err, resabs;
            detail::gk15<double>(kernel, aa, bb, val, err, resabs);
            return val;
        }
    };
    const double first_zero = offset * std::numbers::pi / kappa;
    // Walk up to the first kernel zero in octaves: one adaptive pass over a
    // head interval much wider than the integrand's support would place
    // every node past the decay and report a silent zero.
    double sum = 0.0;
    for (double left = 0.0, right = std::min(first_zero, 1.0); left < first_zero;
         left = right, right = std::min(first_zero, 2.0 * right)) {
        sum += segment(left, right);
    }
    double scale = std::abs(sum) + 1e-300;
    const double noise = std::max(1e-16, cfg.integrand_noise);
    double a = first_zero;
    const int direct_max = 96;
    int quiet = 0;
    for (int k = 0; k < direct_max; ++k) {
        const double b = a + std::numbers::pi / kappa;
        const double seg = segment(a, b);
        sum += seg;
        scale = std::max(scale, std::abs(sum));
        a = b;
        quiet = std::abs(seg) <= std::max(cfg.abs_tol, noise * scale) ? quiet + 1 : 0;
        if (quiet >= 2)
            return sum;
    }
    // tail still alive: alternating series acceleration on further segments
    const int accel_terms = 48;
    std::vector<double> terms;
    terms.reserve(accel_terms);
    for (int k = 0; k < accel_terms; ++k) {
        const double b = a + std::numbers::pi / kappa;
        terms.push_back(segment(a, b));
        a = b;
    }
    return sum + euler_accelerate(terms);
}

} // namespace detail

// Radial Fourier cosine image in one dimension: 2 * integral of
// cos(kappa r) f(r) over (0, inf).
template <class F>
double cosine_transform(const F& f, double kappa, const QuadConfig& cfg = {}) {
    if (!(kappa >= 0.0))
        throw std::invalid_argument("cosine_transform: kappa must be >= 0");
    if (kappa < 1e-12)
        return 2.0 * integrate_semiaxis(f, cfg).value;
    return 2.0 * detail::oscillatory_semiaxis(f, kappa, true, cfg);
}

// integral of sin(kappa r) f(r) over (0, inf) (no radial prefactor).
template <class F>
double sine_integral(const F& f, double kappa, const QuadConfig& cfg = {}) {
    if (!(kappa >= 0.0))
        throw std::invalid_argument("sine_integral: kappa must be >= 0");
    if (kappa < 1e-12)
        return 0.0;
    return detail::oscillatory_semiaxis(f, kappa, false, cfg);
}

template <class F>
double cosine_integral(const F& f, double kappa, const QuadConfig& cfg = {}) {
    if (!(kappa >= 0.0))
        throw std::invalid_argument("cosine_integral: kappa must be >= 0");
    if (kappa < 1e-12)
        return integrate_semiaxis(f, cfg).value;
    return detail::oscillatory_semiaxis(f, kappa, true, cfg);
}

// Cauchy principal value over (a, b) across a simple pole, by analytic
// pole subtraction: the residue R is estimated from (x - pole) f(x) with
// Richardson extrapolation, then f - R/(x - pole) is integrated and the
// exact log term added back. probe_scale seeds the residue probes; the
// result must be insensitive to it (tested).
template <class V, class F>
QuadResult<V> principal_value(const F& f, double pole, double a, double b,
                              const QuadConfig& cfg = {}, double probe_scale = 0.0) {
    if (!(a < pole && pole < b))
        throw std::invalid_argument("principal_value: pole must lie strictly inside (a, b)");
    const double reach = std::min(pole - a, b - pole);
    double h = probe_scale > 0.0 ? probe_scale : 1e-2 * reach;
    auto estimate = [&](double hh) -> V {
        return 0.5 * (hh * f(pole + hh) - hh * f(pole - hh));
    };
    V prev_rich{};
    bool have_prev = false;
    V residue{};
    bool ok = false;
    for (int it = 0; it < 24; ++it) {
        const V r1 = estimate(h), r2 = estimate(0.5 * h);
        const V rich = (4.0 * r2 - r1) / 3.0;
        if (have_prev &&
            detail::abs_of(rich - prev_rich) <= 1e-12 * (detail::abs_of(rich) + 1e-30)) {
            residue = rich;
            ok = true;
            break;
        }
        prev_rich = rich;
        have_prev = true;
        h *= 0.5;
        if (h < 1e-10 * reach)
            break;
    }
    if (!ok)
        throw NotSimplePole("principal_value: residue estimate did not stabilise");
    auto sub = [&](double x) -> V { return f(x) - residue / (x - pole); };
    // A symmetric excision of width w around the pole makes the residual
    // micro-pole (from the last digits of the residue estimate) cancel by
    // oddness instead of driving the refinement into denormals. The smooth
    // part lost over the sliver is restored by a trapezoidal correction.
    const double w = 1e-7 * reach;
    auto left = detail::adapt<V>(sub, a, pole - w, cfg);
    auto right = detail::adapt<V>(sub, pole + w, b, cfg);
    const V sliver = w * (sub(pole - w) + sub(pole + w));
    const V log_term = residue * std::log((b - pole) / (pole - a));
    return {left.value + right.value + sliver + log_term, left.error + right.error};
}

// Principal value over (a, inf): finite part [a, 2*pole - a] plus a regular
// tail integral.
template <class V, class F>
QuadResult<V> principal_value_semiaxis(const F& f, double pole, double a,
                                       const QuadConfig& cfg = {}, double probe_scale = 0.0) {
    if (!(pole > a))
        throw std::invalid_argument("principal_value_semiaxis: pole must exceed a");
    const double b = 2.0 * pole - a;
    auto finite = principal_value<V>(f, pole, a, b, cfg, probe_scale);
    auto g = [&](double u) -> V {
        const double r = std::exp(u);
        return f(b + r) * r;
    };
    auto [lo, hi] = detail::scan_bounds(
        [&](double u) { return detail::abs_of(g(u)); }, -2.0, 2.0, cfg.tail_cutoff_tol);
    auto tail = detail::adapt<V>(g, lo, hi, cfg);
    return {finite.value + tail.value, finite.error + tail.error};
}

// (1/2 pi i) * integral of g(s) along the vertical line Re s = abscissa,
// truncated where |g| falls below tail_cutoff_tol relative to its peak.
// The height doubles until the magnitude test passes.
template <class G>
Complex contour_integral(const G& g, const ContourSpec& spec, const QuadConfig& cfg = {}) {
    spec.validate();
    if (std::isnan(spec.abscissa))
        throw std::invalid_argument("contour_integral: abscissa must be set");
    const double c = spec.abscissa;
    auto along = [&](double t) { return g(Complex(c, t)); };
    double peak = 1e-300;
    for (double t : {0.0, 0.11 * spec.height, 0.31 * spec.height, 0.52 * spec.height})
        peak = std::max(peak, std::abs(along(t)));
    double H = spec.height;
    const double cutoff = cfg.tail_cutoff_tol;
    int doublings = 0;
    while (std::max({std::abs(along(H)), std::abs(along(-H)), std::abs(along(0.93 * H)),
                     std::abs(along(-0.93 * H))}) > cutoff * peak) {
        H *= 2.0;
        if (++doublings > 8)
            throw TailTooFat("contour_integral: integrand does not decay below cutoff by |Im s| = " +
                             std::to_string(H));
    }
    QuadConfig ccfg = cfg;
    ccfg.rel_tol = spec.target_tol;
    ccfg.abs_tol = std::max(cfg.abs_tol, spec.target_tol * 1e-4 * peak);
    ccfg.max_subdivisions = std::max(spec.nodes, cfg.max_subdivisions);
    auto res = detail::adapt<Complex>(along, -H, H, ccfg);
    return res.value / (2.0 * std::numbers::pi);
}

} // namespace fraclap
