#pragma once

#include <cmath>
#include <numbers>

#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

namespace detail {

// 1/Gamma(y), zero at the poles.
inline double reciprocal_gamma(double y) {
    if (y <= 0.0 && y == std::floor(y))
        return 0.0;
    return 1.0 / std::tgamma(y);
}

inline bool near_integer(double a, double tol = 1e-12) {
    return std::abs(a - std::round(a)) < tol;
}

} // namespace detail

// Riemann--Liouville fractional integral
//   J^alpha f(t) = (1/Gamma(alpha)) * integral of (t-tau)^{alpha-1} f(tau)
// over (0, t). The kernel singularity sits at tau = t; integrating in
// v = t - tau keeps it at an endpoint the Kronrod nodes never touch.
inline double rl_integral(const HalfLineFunction& f, double alpha, double t,
                          const QuadConfig& cfg = {}) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("rl_integral: alpha must be positive");
    if (!(t > 0.0))
        throw std::invalid_argument("rl_integral: t must be positive");
    const double norm = std::tgamma(alpha);
    const double support = f.tail_negligible_beyond;
    if (t > support + 1.0) {
        // kernel is smooth over the surviving support
        auto g = [&](double tau) { return std::pow(t - tau, alpha - 1.0) * f.profile(tau); };
        return detail::adapt<double>(g, 0.0, support, cfg).value / norm;
    }
    auto g = [&](double v) { return std::pow(v, alpha - 1.0) * f.profile(t - v); };
    return detail::adapt<double>(g, 0.0, t, cfg).value / norm;
}

inline double rl_integral_of(const std::function<double(double)>& profile, double alpha, double t,
                             const QuadConfig& cfg = {},
                             double support = std::numeric_limits<double>::infinity()) {
    HalfLineFunction f;
    f.profile = profile;
    f.tail_negligible_beyond = support;
    return rl_integral(f, alpha, t, cfg);
}

// Caputo derivative of order alpha with m = ceil(alpha):
// J^{m-alpha} applied to the m-th derivative. Integer orders reduce to the
// plain derivative.
inline double caputo(const HalfLineFunction& f, double alpha, double t, const QuadConfig& cfg = {}) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("caputo: alpha must be positive");
    if (!(t > 0.0))
        throw std::invalid_argument("caputo: t must be positive");
    if (detail::near_integer(alpha))
        return f.derivative(static_cast<int>(std::round(alpha)))(t);
    const int m = static_cast<int>(std::ceil(alpha));
    HalfLineFunction dm;
    dm.profile = f.derivative(m);
    dm.tail_negligible_beyond = f.tail_negligible_beyond;
    return rl_integral(dm, m - alpha, t, cfg);
}

// Riemann--Liouville derivative through the exact relation
//   D^alpha f = Caputo^alpha f + sum_{j<m} f^(j)(0+) t^{j-alpha}/Gamma(j-alpha+1),
// avoiding the outer numerical differentiation of a quadrature result.
inline double riemann_liouville(const HalfLineFunction& f, double alpha, double t,
                                const QuadConfig& cfg = {}) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("riemann_liouville: alpha must be positive");
    if (!(t > 0.0))
        throw std::invalid_argument("riemann_liouville: t must be positive");
    const int m = static_cast<int>(std::ceil(alpha));
    if (f.initial_values.size() < static_cast<std::size_t>(m) && !detail::near_integer(alpha))
        throw std::invalid_argument("riemann_liouville: initial values up to order m-1 required");
    double value = caputo(f, alpha, t, cfg);
    for (int j = 0; j < m && static_cast<std::size_t>(j) < f.initial_values.size(); ++j)
        value += f.initial_values[j] * std::pow(t, j - alpha) *
                 detail::reciprocal_gamma(j - alpha + 1.0);
    return value;
}

// Distributional kernel bridging one-sided derivatives on the half line to
// the symmetric Riesz derivative:
//   E(xi) = (2/pi) sin(pi alpha/2)/(1 - xi^2) - cos(pi alpha/2) xi delta(xi-1).
// Its Mellin transform is sin(pi (alpha - s)/2) / sin(pi s/2) on 0 < Re s < 1.
struct EKernel {
    double alpha;

    explicit EKernel(double alpha_) : alpha(alpha_) {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw std::invalid_argument("EKernel: alpha must lie in (0,2]");
    }

    double smooth_part(double xi) const {
        return 2.0 / std::numbers::pi * std::sin(0.5 * std::numbers::pi * alpha) /
               (1.0 - xi * xi);
    }
    double delta_weight() const { return -std::cos(0.5 * std::numbers::pi * alpha); }
    Complex mellin(Complex s) const {
        return detail::sin_pi(0.5 * (alpha - s)) / detail::sin_pi(0.5 * s);
    }
};

// Convolution of a one-sided derivative g(xi) against the E kernel,
//   integral of g(xi) E(|x|/xi) dxi/xi over (0, inf).
// The delta part reduces to the point value -cos(pi alpha/2) g(|x|); the
// smooth part is a principal-value integral with the pole at xi = |x|,
// taken in the variable u = log(xi).
inline double ekernel_convolution(const std::function<double(double)>& g, double alpha, double x,
                                  const QuadConfig& cfg = {}, double probe_scale = 0.0) {
    const EKernel kernel(alpha);
    const double ax = std::abs(x);
    const double sin_half = std::sin(0.5 * std::numbers::pi * alpha);
    const double coeff = 2.0 / std::numbers::pi * sin_half;

    double delta_part = 0.0;
    if (ax > 0.0)
        delta_part = kernel.delta_weight() * g(ax);

    if (std::abs(sin_half) < 1e-14)
        return delta_part; // alpha = 2: kernel degenerates to the delta term

    if (ax == 0.0) {
        auto h = [&](double u) { return g(std::exp(u)); };
        auto [lo, hi] =
            detail::scan_bounds([&](double u) { return std::abs(h(u)); }, -2.0, 2.0,
                                cfg.tail_cutoff_tol);
        return coeff * detail::adapt<double>(h, lo, hi, cfg).value + delta_part;
    }

    const double u0 = std::log(ax);
    auto integrand = [&](double u) {
        return g(std::exp(u)) / (1.0 - ax * ax * std::exp(-2.0 * u));
    };
    // damp the pole when scanning for truncation bounds
    auto scan_mag = [&](double u) {
        const double d = std::abs(u - u0);
        return std::abs(integrand(u)) * d / (1.0 + d);
    };
    auto [lo, hi] = detail::scan_bounds(scan_mag, u0 - 4.0, u0 + 4.0, cfg.tail_cutoff_tol);
    const double smooth =
        principal_value<double>(integrand, u0, lo, hi, cfg, probe_scale).value;
    return coeff * smooth + delta_part;
}

// Feller--Hilbert form of the order-one Riesz derivative on symmetric
// functions: -(1/pi) d/dx of the principal-value integral of
// phi(|y|)/(x - y). The outer derivative is a central difference with
// Richardson extrapolation over three step halvings.
inline double hilbert_derivative(const RadialFunction& f, double x, const QuadConfig& cfg = {}) {
    auto hilbert = [&](double y0) {
        auto integrand = [&](double y) { return f.profile(std::abs(y)) / (y0 - y); };
        const double big = std::max(8.0, 2.0 * std::abs(y0) + 8.0);
        const double a = y0 - big, b = y0 + big;
        const double finite = principal_value<double>(integrand, y0, a, b, cfg).value;
        auto right = [&](double u) {
            const double y = b + std::exp(u);
            return integrand(y) * std::exp(u);
        };
        auto left = [&](double u) {
            const double y = a - std::exp(u);
            return integrand(y) * std::exp(u);
        };
        auto [rlo, rhi] = detail::scan_bounds([&](double u) { return std::abs(right(u)); }, -4.0,
                                              2.0, cfg.tail_cutoff_tol);
        auto [llo, lhi] = detail::scan_bounds([&](double u) { return std::abs(left(u)); }, -4.0,
                                              2.0, cfg.tail_cutoff_tol);
        const double tail_r = detail::adapt<double>(right, rlo, rhi, cfg).value;
        const double tail_l = detail::adapt<double>(left, llo, lhi, cfg).value;
        return finite + tail_r + tail_l;
    };

    const double h0 = 0.1 * std::max(1.0, std::abs(x));
    double table[3][3];
    for (int i = 0; i < 3; ++i) {
        const double h = h0 / (1 << i);
        table[i][0] = (hilbert(x + h) - hilbert(x - h)) / (2.0 * h);
    }
    for (int j = 1; j < 3; ++j)
        for (int i = j; i < 3; ++i) {
            const double w = std::pow(4.0, j);
            table[i][j] = (w * table[i][j - 1] - table[i - 1][j - 1]) / (w - 1.0);
        }
    return -table[2][2] / std::numbers::pi;
}

} // namespace fraclap
