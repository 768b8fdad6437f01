#pragma once

#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "fraclap/mellin.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

enum class RouteId {
    HeatSemigroup,
    FourierMultiplier,
    SingularIntegral,
    MellinContour,
    RieszPotentialInverseCheck,
};

inline const char* route_name(RouteId r) {
    switch (r) {
    case RouteId::HeatSemigroup: return "heat";
    case RouteId::FourierMultiplier: return "fourier";
    case RouteId::SingularIntegral: return "singular";
    case RouteId::MellinContour: return "mellin";
    case RouteId::RieszPotentialInverseCheck: return "riesz-check";
    }
    return "?";
}

inline RouteId parse_route(const std::string& s) {
    if (s == "heat") return RouteId::HeatSemigroup;
    if (s == "fourier") return RouteId::FourierMultiplier;
    if (s == "singular") return RouteId::SingularIntegral;
    if (s == "mellin") return RouteId::MellinContour;
    if (s == "riesz-check") return RouteId::RieszPotentialInverseCheck;
    throw std::invalid_argument("unknown route '" + s + "'");
}

// Bochner / heat semi-group form,
//   L u = (-1/Gamma(-alpha/2)) * integral of (e^{t Delta}u - u) t^{-1-alpha/2} dt.
// The propagator acts on the even extension by Gaussian convolution. Below
// t_c the integrand is replaced by its heat expansion t u'' + t^2 u''''/2,
// integrated in closed form; otherwise roundoff in e^{t Delta}u - u would
// dominate the t -> 0 region.
inline double heat_semigroup_route(const RadialFunction& f, const FracOrder& ord, double x,
                                   const QuadConfig& cfg = {}) {
    if (ord.n != 1)
        throw DimensionUnsupported("heat route: implemented for n = 1 only");
    if (f.decay.kind == Decay::Kind::Power && f.decay.rate <= 1.0)
        throw ParameterOutOfRange("heat route: profile is not integrable on the line");
    if (!f.d2)
        throw std::invalid_argument("heat route: second derivative evaluator required");
    const double a = ord.alpha;
    const double ax = std::abs(x);
    const double ux = f.profile(ax);

    QuadConfig inner = cfg;
    inner.rel_tol = 1e-11;
    inner.abs_tol = 1e-14;
    inner.max_subdivisions = 400;
    auto heat_u = [&](double t) {
        const double w = 2.0 * std::sqrt(t);
        auto g = [&](double v) {
            return std::exp(-v * v) *
                   (f.profile(std::abs(ax - w * v)) + f.profile(std::abs(ax + w * v)));
        };
        // For w >> 1 the profile squeezes all structure into v = O(1/w);
        // walk up in octaves from that scale so no feature is skipped.
        double sum = 0.0;
        const double start = w > 1.0 ? 1.0 / w : 9.0;
        for (double left = 0.0, right = std::min(9.0, start); left < 9.0;
             left = right, right = std::min(9.0, 2.0 * right))
            sum += detail::adapt<double>(g, left, right, inner).value;
        return sum / std::sqrt(std::numbers::pi);
    };

    const double t_c = 1e-6;
    const double h = 1e-3 * std::max(1.0, ax);
    const double u2 = f.d2(ax);
    const double u4 = (f.d2(std::abs(ax + h)) - 2.0 * u2 + f.d2(std::abs(ax - h))) / (h * h);
    const double local = u2 * std::pow(t_c, 1.0 - 0.5 * a) / (1.0 - 0.5 * a) +
                         0.5 * u4 * std::pow(t_c, 2.0 - 0.5 * a) / (2.0 - 0.5 * a);

    auto outer = [&](double tau) {
        const double t = std::exp(tau);
        return (heat_u(t) - ux) * std::exp(-0.5 * a * tau);
    };
    const double tau_lo = std::log(t_c);
    auto [lo, hi] = detail::scan_bounds([&](double tau) { return std::abs(outer(tau)); }, tau_lo,
                                        tau_lo + 6.0, cfg.tail_cutoff_tol);
    (void)lo;
    QuadConfig ocfg = cfg;
    ocfg.rel_tol = std::max(cfg.rel_tol, 1e-9);
    const double tail = detail::adapt<double>(outer, tau_lo, hi, ocfg).value;

    // -1/Gamma(-alpha/2) = sin(pi alpha/2) Gamma(1 + alpha/2) / pi
    const double prefactor =
        std::sin(0.5 * std::numbers::pi * a) * std::tgamma(1.0 + 0.5 * a) / std::numbers::pi;
    return prefactor * (local + tail);
}

// Fourier multiplier form: invert -|kappa|^alpha F f(kappa) through the
// radial inverse transform (cosine kernel at n = 1, sine kernel at n = 3).
inline double fourier_route(const RadialFunction& f, const FracOrder& ord, double x,
                            const QuadConfig& cfg = {}) {
    const double a = ord.alpha;
    const double r = std::abs(x);
    if (ord.n == 1) {
        std::function<double(double)> image = f.fourier_profile;
        QuadConfig outer = cfg;
        if (!image) {
            image = [&f, cfg](double k) { return cosine_transform(f.profile, k, cfg); };
            outer = cfg.with_noise(10.0 * cfg.rel_tol);
        }
        auto g = [&](double k) { return std::pow(k, a) * image(k); };
        return -cosine_integral(g, r, outer) / std::numbers::pi;
    }
    if (ord.n == 3) {
        std::function<double(double)> image = f.fourier_profile;
        QuadConfig outer = cfg;
        if (!image) {
            image = [&f, cfg](double k) {
                if (k < 1e-12) {
                    return 4.0 * std::numbers::pi *
                           integrate_semiaxis([&](double rr) { return rr * rr * f.profile(rr); }, cfg)
                               .value;
                }
                return 4.0 * std::numbers::pi / k *
                       sine_integral([&](double rr) { return rr * f.profile(rr); }, k, cfg);
            };
            outer = cfg.with_noise(10.0 * cfg.rel_tol);
        }
        const double norm = 2.0 * std::numbers::pi * std::numbers::pi;
        if (r < 1e-12) {
            auto g = [&](double k) { return std::pow(k, 2.0 + a) * image(k); };
            return -integrate_semiaxis(g, outer).value / norm;
        }
        auto g = [&](double k) { return std::pow(k, 1.0 + a) * image(k); };
        return -sine_integral(g, r, outer) / (norm * r);
    }
    throw DimensionUnsupported("fourier route: implemented for n in {1, 3}");
}

// Regularised hypersingular integral,
//   (Gamma(1+alpha)/pi) sin(pi alpha/2)
//     * integral of (f(x+z) - 2 f(x) + f(x-z)) z^{-1-alpha} over (0, inf).
// On (0, delta] the integrand is replaced by its second-order expansion
// f''(x) z^{1-alpha}; the constant term's tail beyond Z is integrated in
// closed form so the quadrature never sees the cancellation.
inline double singular_integral_route(const RadialFunction& f, const FracOrder& ord, double x,
                                      const QuadConfig& cfg = {}) {
    if (ord.n != 1)
        throw DimensionUnsupported("singular route: implemented for n = 1 only");
    if (!f.d2)
        throw std::invalid_argument("singular route: second derivative evaluator required");
    const double a = ord.alpha;
    const double ax = std::abs(x);
    const double fx = f.profile(ax);

    const double delta = 1e-3 * std::max(1.0, ax);
    const double local = f.d2(ax) * std::pow(delta, 2.0 - a) / (2.0 - a);

    const double big = std::max(8.0, 2.0 * ax + 8.0);
    auto second_diff = [&](double z) {
        return (f.profile(std::abs(ax + z)) - 2.0 * fx + f.profile(std::abs(ax - z))) *
               std::pow(z, -1.0 - a);
    };
    const double mid = detail::adapt<double>(second_diff, delta, big, cfg).value;

    auto far = [&](double u) {
        const double z = big + std::exp(u);
        return (f.profile(ax + z) + f.profile(z - ax)) * std::pow(z, -1.0 - a) * std::exp(u);
    };
    auto [lo, hi] = detail::scan_bounds([&](double u) { return std::abs(far(u)); }, -8.0, 2.0,
                                        cfg.tail_cutoff_tol);
    const double tail_f = detail::adapt<double>(far, lo, hi, cfg).value;
    const double tail_c = -2.0 * fx * std::pow(big, -a) / a;

    const double prefactor =
        std::tgamma(1.0 + a) / std::numbers::pi * std::sin(0.5 * std::numbers::pi * a);
    return prefactor * (local + mid + tail_f + tail_c);
}

// Mellin functional-equation route.
inline double mellin_route(const RadialFunction& f, const FracOrder& ord, double x,
                           const ContourSpec& spec = {}, const QuadConfig& cfg = {}) {
    return apply_multiplier_and_invert(f, ord, std::abs(x), spec, cfg);
}

// Riesz potential I^alpha u(x) = (1/gamma_n(alpha)) * integral of
// u(x+z) |z|^{-n+alpha} dz, convergent for 0 < alpha < n. One-dimensional
// implementation.
inline double riesz_potential(const RadialFunction& f, double alpha, double x,
                              const QuadConfig& cfg = {}) {
    if (f.n != 1)
        throw DimensionUnsupported("riesz_potential: implemented for n = 1 only");
    if (!(alpha > 0.0) || alpha >= 1.0)
        throw ParameterOutOfRange("riesz_potential: need 0 < alpha < n = 1");
    // below any representable panel structure the kernel is even in x
    const double ax = std::abs(x) < 1e-100 ? 0.0 : std::abs(x);

    // integral over w > 0 of h(w) w^{alpha-1}; the substitution w = v^{1/alpha}
    // flattens the kernel exactly on the first panel, octaves plus a scanned
    // log-map tail cover the rest.
    // feature_at_cap marks integrands whose mass sits against the upper end
    // (the profile's bump seen through w = ax - y); the walk then closes in
    // on the cap from the right as well.
    auto weighted_halfline = [&](auto&& h, double cap, bool feature_at_cap) {
        const bool infinite = std::isinf(cap);
        const bool two_sided = !infinite && feature_at_cap && cap > 2.0;
        const double octave_end = infinite ? 4.0 : (two_sided ? 0.5 * cap : cap);
        const double w0 = std::min(1.0, octave_end);
        auto flat = [&](double v) { return h(std::pow(v, 1.0 / alpha)) / alpha; };
        double total = detail::adapt<double>(flat, 0.0, std::pow(w0, alpha), cfg).value;
        auto weighted = [&](double w) { return h(w) * std::pow(w, alpha - 1.0); };
        for (double left = w0, right = std::min(octave_end, 2.0 * w0); left < octave_end;
             left = right, right = std::min(octave_end, 2.0 * right))
            total += detail::adapt<double>(weighted, left, right, cfg).value;
        if (two_sided) {
            for (double d = 0.5 * cap; d > 1.0; d *= 0.5)
                total += detail::adapt<double>(weighted, cap - d, cap - std::max(1.0, 0.5 * d),
                                               cfg).value;
            total += detail::adapt<double>(weighted, cap - 1.0, cap, cfg).value;
        }
        if (infinite) {
            auto tail = [&](double u) {
                const double w = octave_end + std::exp(u);
                return weighted(w) * std::exp(u);
            };
            auto [lo, hi] = detail::scan_bounds([&](double u) { return std::abs(tail(u)); }, -4.0,
                                                2.0, cfg.tail_cutoff_tol);
            total += detail::adapt<double>(tail, lo, hi, cfg).value;
        }
        return total;
    };
    const double inf = std::numeric_limits<double>::infinity();

    // |x-y| branch below y = ax; the profile's own mass sits at w = ax.
    // For large ax the kernel is evaluated in the y variable over the mass
    // (w = ax - y would be sub-ulp there) and in w only near the
    // singularity, where the profile has died off.
    double total = 0.0;
    if (ax > 0.0 && ax <= 4.0) {
        total += weighted_halfline([&](double w) { return f.profile(std::abs(ax - w)); },
                                   std::nextafter(ax, 0.0), true);
    } else if (ax > 4.0) {
        auto gy = [&](double y) { return f.profile(y) * std::pow(ax - y, alpha - 1.0); };
        const double half = 0.5 * ax;
        for (double left = 0.0, right = 1.0; left < half;
             left = right, right = std::min(half, 2.0 * right))
            total += detail::adapt<double>(gy, left, right, cfg).value;
        total += weighted_halfline([&](double w) { return f.profile(std::abs(ax - w)); }, half,
                                   false);
    }
    // |x-y| branch above y = ax
    total += weighted_halfline([&](double w) { return f.profile(ax + w); }, inf, false);
    // (x+y) branch: smooth for ax > 0, same singular structure at ax = 0
    if (ax > 0.0) {
        auto g = [&](double y) { return f.profile(y) * std::pow(ax + y, alpha - 1.0); };
        for (double left = 0.0, right = 1.0; left < 4.0;
             left = right, right = std::min(4.0, 2.0 * right))
            total += detail::adapt<double>(g, left, right, cfg).value;
        auto tail = [&](double u) {
            const double y = 4.0 + std::exp(u);
            return g(y) * std::exp(u);
        };
        auto [lo, hi] = detail::scan_bounds([&](double u) { return std::abs(tail(u)); }, -4.0, 2.0,
                                            cfg.tail_cutoff_tol);
        total += detail::adapt<double>(tail, lo, hi, cfg).value;
    } else {
        total += weighted_halfline([&](double w) { return f.profile(w); }, inf, false);
    }

    // Classical normalisation 2^alpha pi^{n/2} Gamma(alpha/2)/Gamma((n-alpha)/2),
    // the one under which I^alpha has Fourier symbol |kappa|^{-alpha} and the
    // fractional Laplacian is its left inverse.
    const double gamma_n = std::pow(2.0, alpha) * std::sqrt(std::numbers::pi) *
                           std::tgamma(0.5 * alpha) / std::tgamma(0.5 * (1.0 - alpha));
    return total / gamma_n;
}

// Closed-form Mellin image of I^alpha f, obtained from the same functional
// equation with symbol |kappa|^{-alpha}.
inline RadialFunction riesz_potential_function(const RadialFunction& f, double alpha,
                                               const QuadConfig& cfg = {}) {
    if (!f.mellin)
        throw StripConflict("riesz_potential_function: base function carries no Mellin image");
    if (!(alpha > 0.0) || alpha >= 1.0)
        throw ParameterOutOfRange("riesz_potential_function: need 0 < alpha < 1");
    RadialFunction g;
    g.name = f.name + "-riesz-potential";
    g.n = f.n;
    RadialFunction base = f;
    g.profile = [base, alpha, cfg](double r) { return riesz_potential(base, alpha, r, cfg); };
    const MellinImage inner = *f.mellin;
    const double n = static_cast<double>(f.n);
    g.mellin = MellinImage{
        [inner, alpha, n](Complex s) {
            return std::pow(2.0, -alpha) *
                   gamma_ratio({0.5 * s, 0.5 * (n - (s + alpha))}, {0.5 * (n - s), 0.5 * (s + alpha)}) *
                   inner.eval(s + alpha);
        },
        std::max(0.0, inner.strip_lo - alpha), 1.0 - alpha, inner.continued};
    g.decay = Decay{Decay::Kind::Power, 1.0 - alpha};
    return g;
}

// Per-point values from each requested route plus pairwise discrepancy.
struct EvalReport {
    std::vector<double> points;
    std::map<RouteId, std::vector<double>> values;

    // Recomputed from the stored values; the floor keeps zeros of (L f)(x)
    // from blowing up the ratio.
    double pairwise_max_rel_err() const {
        double worst = 0.0;
        for (auto it = values.begin(); it != values.end(); ++it)
            for (auto jt = std::next(it); jt != values.end(); ++jt)
                for (std::size_t k = 0; k < points.size(); ++k) {
                    const double a = it->second[k], b = jt->second[k];
                    worst = std::max(worst,
                                     std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}));
                }
        return worst;
    }

    double point_max_rel_err(std::size_t k) const {
        double worst = 0.0;
        for (auto it = values.begin(); it != values.end(); ++it)
            for (auto jt = std::next(it); jt != values.end(); ++jt) {
                const double a = it->second[k], b = jt->second[k];
                worst = std::max(worst,
                                 std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}));
            }
        return worst;
    }
};

inline double evaluate_route(const RadialFunction& f, const FracOrder& ord, RouteId route, double x,
                             const QuadConfig& cfg = {}, const ContourSpec& spec = {}) {
    switch (route) {
    case RouteId::HeatSemigroup: return heat_semigroup_route(f, ord, x, cfg);
    case RouteId::FourierMultiplier: return fourier_route(f, ord, x, cfg);
    case RouteId::SingularIntegral: return singular_integral_route(f, ord, x, cfg);
    case RouteId::MellinContour: return mellin_route(f, ord, x, spec, cfg);
    case RouteId::RieszPotentialInverseCheck:
        throw std::invalid_argument(
            "riesz-check is a verification procedure, not a pointwise evaluator; "
            "see riesz_left_inverse_deviation");
    }
    throw std::invalid_argument("evaluate_route: bad route id");
}

inline EvalReport equivalence_report(const RadialFunction& f, const FracOrder& ord,
                                     const std::vector<double>& points,
                                     const std::vector<RouteId>& routes, const QuadConfig& cfg = {},
                                     const ContourSpec& spec = {}) {
    EvalReport report;
    report.points = points;
    for (RouteId route : routes) {
        std::vector<double> row;
        row.reserve(points.size());
        for (double x : points) {
            try {
                row.push_back(evaluate_route(f, ord, route, x, cfg, spec));
            } catch (const NumericError& e) {
                throw NumericError(std::string(route_name(route)) + " route failed at x = " +
                                   std::to_string(x) + ": " + e.what());
            }
        }
        report.values[route] = std::move(row);
    }
    return report;
}

// Left-inverse verification: applying the fractional Laplacian of the same
// order to I^alpha f must return -f. Reports the worst absolute deviation
// |(-L I^alpha f)(x) - f(x)| over the points.
inline double riesz_left_inverse_deviation(const RadialFunction& f, double alpha,
                                           const std::vector<double>& points,
                                           const ContourSpec& spec = {}, const QuadConfig& cfg = {}) {
    const RadialFunction g = riesz_potential_function(f, alpha, cfg);
    const FracOrder ord(alpha, f.n);
    double worst = 0.0;
    for (double x : points) {
        const double reconstructed = -mellin_route(g, ord, x, spec, cfg);
        worst = std::max(worst, std::abs(reconstructed - f.profile(std::abs(x))));
    }
    return worst;
}

} // namespace fraclap
