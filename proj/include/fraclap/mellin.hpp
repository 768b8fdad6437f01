#pragma once

#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

inline double strip_hi_from_decay(const RadialFunction& f) {
    return f.decay.kind == Decay::Kind::Exponential ? std::numeric_limits<double>::infinity()
                                                    : f.decay.rate;
}

// Forward Mellin transform of a radial profile, integral of f(r) r^{s-1}
// over (0, inf), evaluated under the r = e^u change of variable.
inline Complex mellin_forward(const RadialFunction& f, Complex s, const QuadConfig& cfg = {}) {
    require_finite(s, "mellin_forward");
    const double lo = f.mellin ? f.mellin->strip_lo : 0.0;
    const double hi = f.mellin ? f.mellin->strip_hi : strip_hi_from_decay(f);
    if (!(s.real() > lo && s.real() < hi))
        throw OutsideStrip("mellin_forward: Re s = " + std::to_string(s.real()) +
                           " outside strip (" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    auto g = [&](double u) -> Complex { return f.profile(std::exp(u)) * std::exp(s * u); };
    auto [a, b] = detail::scan_bounds([&](double u) { return std::abs(g(u)); }, -2.0, 2.0,
                                      cfg.tail_cutoff_tol);
    return detail::adapt<Complex>(g, a, b, cfg).value;
}

// Mellin symbol of the fractional Laplacian on radial functions:
//   m(s) = -2^alpha Gamma(s/2) Gamma((n-(s-alpha))/2)
//          / ( Gamma((n-s)/2) Gamma((s-alpha)/2) ),
// acting as M(Lf)(s) = m(s) M f(s - alpha).
inline Complex laplacian_multiplier(Complex s, const FracOrder& ord) {
    require_finite(s, "laplacian_multiplier");
    const double n = static_cast<double>(ord.n);
    if (s == Complex(0.0, 0.0) || !(s.real() > 0.0 && s.real() < n))
        throw std::invalid_argument("laplacian_multiplier: need s != 0 and 0 < Re s < n");
    const double a = ord.alpha;
    const Complex ratio = gamma_ratio({0.5 * s, 0.5 * (n - (s - a))},
                                      {0.5 * (n - s), 0.5 * (s - a)});
    return -std::pow(2.0, a) * ratio;
}

// One-dimensional form of the same symbol, for the Riesz derivative on
// symmetric functions:
//   -Gamma(s) cos(pi s/2) / ( Gamma(s - alpha) cos(pi (s - alpha)/2) ).
inline Complex riesz_multiplier(Complex s, double alpha) {
    require_finite(s, "riesz_multiplier");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("riesz_multiplier: alpha must lie in (0,2]");
    if (s == Complex(0.0, 0.0) || !(s.real() > 0.0 && s.real() < 1.0))
        throw std::invalid_argument("riesz_multiplier: need s != 0 and 0 < Re s < 1");
    const Complex sa = s - alpha;
    if (sa.imag() == 0.0) {
        const double r = sa.real();
        if (std::abs(r - std::round(r)) < 1e-12 && std::fmod(std::abs(std::round(r)), 2.0) == 1.0)
            throw CosineZero("riesz_multiplier: s - alpha hit an odd integer");
    }
    const double half_pi = 0.5 * std::numbers::pi;
    const Complex num = std::cos(half_pi * s);
    const Complex den = std::cos(half_pi * sa);
    return -gamma_ratio({s}, {sa}) * num / den;
}

// Trigonometric factor -sin(pi (s-alpha)/2) / sin(pi s/2) linking the
// Mellin transform of the Riesz derivative to those of the Caputo and
// Riemann--Liouville derivatives.
inline Complex caputo_rl_bridge_factor(Complex s, double alpha) {
    require_finite(s, "caputo_rl_bridge_factor");
    const Complex den = detail::sin_pi(0.5 * s);
    if (std::abs(den) == 0.0)
        throw PoleError("caputo_rl_bridge_factor: sin(pi s/2) vanishes");
    return -detail::sin_pi(0.5 * (s - alpha)) / den;
}

// Mellin multiplier of the Caputo derivative on the half line (boundary
// terms assumed to vanish):
//   M(D^alpha f)(s) = -sin(pi s)/sin(pi (alpha - s)) * Gamma(s)/Gamma(s-alpha)
//                     * M f(s - alpha).
inline Complex caputo_mellin_multiplier(Complex s, double alpha) {
    require_finite(s, "caputo_mellin_multiplier");
    const Complex den = detail::sin_pi(alpha - s);
    if (std::abs(den) == 0.0)
        throw PoleError("caputo_mellin_multiplier: sin(pi (alpha - s)) vanishes");
    return -detail::sin_pi(s) / den * gamma_ratio({s}, {s - alpha});
}

namespace detail {

// Default inversion abscissa: midpoint of the intersection of (0, n) with
// the alpha-shifted image strip. When that intersection is empty the image
// must be analytically continued; numeric-only images raise StripConflict.
// The candidate is probed and nudged off any multiplier/image pole.
template <class Integrand>
double choose_abscissa(const MellinImage& img, const FracOrder& ord, const Integrand& g) {
    const double n = static_cast<double>(ord.n);
    const double lo = std::max(0.0, img.strip_lo + ord.alpha);
    const double hi = std::min(n, img.strip_hi + ord.alpha);
    double c;
    if (hi - lo > 1e-9) {
        c = 0.5 * (lo + hi);
    } else if (img.continued) {
        c = 0.5 * std::min(n, 1.0);
    } else {
        throw StripConflict("mellin inversion: no admissible abscissa without analytic continuation");
    }
    if (ord.alpha < n && std::abs(c - ord.alpha) < 0.05)
        c += c + 0.1 < n ? 0.1 : -0.1;
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            for (double t : {0.0, 0.37})
                if (!is_finite(g(Complex(c, t))))
                    throw NumericError("probe");
            return c;
        } catch (const NumericError&) {
            c += c + 0.11 < n ? 0.11 : -0.11;
        }
    }
    throw StripConflict("mellin inversion: could not place abscissa off the pole set");
}

} // namespace detail

// (L f)(r) by Mellin--Barnes inversion of m(s) M f(s - alpha) along the
// contour Re s = c. At r = 0 the contour is pushed left of the origin and
// only the Gamma(s/2) pole contributes, so the value reduces to the
// residue 2 (-2^alpha) Gamma((n+alpha)/2) / (Gamma(n/2) Gamma(-alpha/2))
// * M f(-alpha).
inline double apply_multiplier_and_invert(const RadialFunction& f, const FracOrder& ord, double r,
                                          const ContourSpec& spec = {}, const QuadConfig& cfg = {}) {
    if (!f.mellin)
        throw StripConflict("mellin inversion: radial function carries no Mellin image");
    f.mellin->validate();
    const MellinImage& img = *f.mellin;
    const double a = ord.alpha;
    const double n = static_cast<double>(ord.n);

    if (r == 0.0) {
        if (!img.continued && !(img.strip_lo < -a))
            throw StripConflict("mellin inversion at r = 0 needs the image at s = -alpha");
        const Complex res0 = 2.0 * -std::pow(2.0, a) *
                             gamma_ratio({0.5 * (n + a)}, {0.5 * n, Complex(-0.5 * a)}) *
                             img.eval(Complex(-a, 0.0));
        if (!is_finite(res0))
            throw NumericError("mellin inversion: residue at the origin is not finite");
        if (std::abs(res0.imag()) > 1e-8 * std::max(std::abs(res0.real()), 1e-6))
            throw ResidualImaginary("mellin inversion: imaginary residue " +
                                    std::to_string(res0.imag()));
        return res0.real();
    }

    auto integrand = [&](Complex s) -> Complex {
        return laplacian_multiplier(s, ord) * img.eval(s - a) * std::exp(-s * std::log(r));
    };
    ContourSpec cspec = spec;
    if (std::isnan(cspec.abscissa)) {
        cspec.abscissa = detail::choose_abscissa(img, ord, integrand);
    } else {
        if (!(cspec.abscissa > 0.0 && cspec.abscissa < n))
            throw std::invalid_argument("mellin inversion: abscissa must lie in (0, n)");
        const bool shifted_ok = img.strip_lo < cspec.abscissa - a && cspec.abscissa - a < img.strip_hi;
        if (!shifted_ok && !img.continued)
            throw StripConflict("mellin inversion: abscissa needs analytic continuation of the image");
    }
    const Complex val = contour_integral(integrand, cspec, cfg);
    if (std::abs(val.imag()) > 1e-8 * std::max(std::abs(val.real()), 1e-6))
        throw ResidualImaginary("mellin inversion: imaginary residue " + std::to_string(val.imag()) +
                                " against real part " + std::to_string(val.real()));
    return val.real();
}

} // namespace fraclap
