#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fraclap/mellin.hpp"
#include "fraclap/test_functions.hpp"

using namespace fraclap;
using Catch::Approx;

namespace {
const double pi = std::numbers::pi;

RadialFunction corpus_radial(const std::string& name, int n = 1) {
    return to_radial(find_test_function(name), n);
}
} // namespace

TEST_CASE("forward transform reproduces closed forms", "[mellin]") {
    CHECK(mellin_forward(corpus_radial("exponential"), Complex(3.0, 0.0)).real() ==
          Approx(2.0).epsilon(1e-10));
    CHECK(mellin_forward(corpus_radial("gaussian"), Complex(1.0, 0.0)).real() ==
          Approx(0.5 * std::sqrt(pi)).epsilon(1e-10));
    // lorentz at s = 0.5 + 10i: magnitude ~ 2 pi e^{-5 pi}, tests cancellation
    const Complex s(0.5, 10.0);
    const Complex got = mellin_forward(corpus_radial("lorentz"), s);
    const Complex expected = 0.5 * pi / detail::sin_pi(0.5 * s);
    CHECK(std::abs(got - expected) / std::abs(expected) < 1e-6);
}

TEST_CASE("forward transform outside the strip is rejected", "[mellin]") {
    CHECK_THROWS_AS(mellin_forward(corpus_radial("lorentz"), Complex(2.5, 0.0)), OutsideStrip);
    CHECK_THROWS_AS(mellin_forward(corpus_radial("gaussian"), Complex(-0.5, 0.0)), OutsideStrip);
}

TEST_CASE("corpus images match forward quadrature on the mid-strip line", "[mellin][property]") {
    for (const auto& tf : test_corpus()) {
        const RadialFunction rf = to_radial(tf);
        const MellinImage& img = *rf.mellin;
        const double lo = img.strip_lo;
        const double mid = std::isinf(img.strip_hi) ? lo + 1.0 : 0.5 * (lo + img.strip_hi);
        for (int k = 0; k < 20; ++k) {
            const Complex s(mid, -2.85 + 0.3 * k);
            const Complex numeric = mellin_forward(rf, s);
            const Complex closed = img.eval(s);
            INFO(tf.name << " at s = " << s.real() << " + " << s.imag() << "i");
            CHECK(std::abs(numeric - closed) <= 1e-10 * std::max(std::abs(closed), 1e-4));
        }
    }
}

TEST_CASE("Laplacian multiplier anchor values", "[mellin]") {
    // n=1, alpha=1, s=1/2: -2 Gamma(0.75)/Gamma(-0.25) = 1/2
    const Complex m1 = laplacian_multiplier(Complex(0.5, 0.0), FracOrder(1.0, 1));
    CHECK(m1.real() == Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(m1.imag()) < 1e-13);
    // matches the one-dimensional form at the same point
    const Complex r1 = riesz_multiplier(Complex(0.5, 0.0), 1.0);
    CHECK(std::abs(m1 - r1) < 1e-13);
    // n=3, alpha=3/2, s=1: -2^{3/2} Gamma(1/2) Gamma(7/4) / (Gamma(1) Gamma(-1/4))
    const Complex m3 = laplacian_multiplier(Complex(1.0, 0.0), FracOrder(1.5, 3));
    CHECK(m3.real() == Approx(0.9399856029866252).epsilon(1e-12));
    CHECK_THROWS_AS(laplacian_multiplier(Complex(1.5, 0.0), FracOrder(1.0, 1)),
                    std::invalid_argument);
}

TEST_CASE("Riesz multiplier anchors and error paths", "[mellin]") {
    CHECK(riesz_multiplier(Complex(0.5, 0.0), 1.0).real() == Approx(0.5).epsilon(1e-13));
    // alpha = 2 reduces to the second-derivative multiplier (s-1)(s-2)
    const Complex s(0.7, 0.0);
    const Complex m = riesz_multiplier(s, 2.0);
    const Complex poly = (s - 1.0) * (s - 2.0);
    CHECK(std::abs(m - poly) < 1e-12);
    // ... which reproduces M(f'') for the Gaussian through the shift rule
    const auto& tf = find_test_function("gaussian");
    RadialFunction d2_profile;
    d2_profile.profile = tf.second_derivative;
    d2_profile.n = 1;
    d2_profile.decay = tf.decay;
    const Complex lhs = mellin_forward(d2_profile, s);
    const Complex rhs = m * tf.mellin_image->eval(s - 2.0);
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK_THROWS_AS(riesz_multiplier(Complex(0.5, 0.0), 1.5), CosineZero);
    CHECK_THROWS_AS(riesz_multiplier(Complex(1.5, 0.0), 0.5), std::invalid_argument);
}

TEST_CASE("bridge factor anchors", "[mellin]") {
    CHECK(caputo_rl_bridge_factor(Complex(0.5, 0.0), 2.0).real() == Approx(1.0).epsilon(1e-13));
    CHECK(caputo_rl_bridge_factor(Complex(0.5, 0.0), 1.0).real() == Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(caputo_rl_bridge_factor(Complex(0.5, 0.0), 0.5)) < 1e-15);
    CHECK_THROWS_AS(caputo_rl_bridge_factor(Complex(2.0, 0.0), 0.5), PoleError);
}

TEST_CASE("multiplier equality on 500 random samples", "[mellin][property]") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> re(0.02, 0.98), im(-20.0, 20.0), al(0.05, 1.95);
    for (int i = 0; i < 500; ++i) {
        const Complex s(re(rng), im(rng));
        const double alpha = al(rng);
        const Complex a = laplacian_multiplier(s, FracOrder(alpha, 1));
        const Complex b = riesz_multiplier(s, alpha);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
}

TEST_CASE("bridge consistency with the Caputo Mellin multiplier", "[mellin][property]") {
    std::mt19937 rng(1717);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-10.0, 10.0), al(0.1, 1.9);
    for (int i = 0; i < 200; ++i) {
        const Complex s(re(rng), im(rng));
        const double alpha = al(rng);
        const Complex lhs = riesz_multiplier(s, alpha);
        const Complex rhs =
            caputo_rl_bridge_factor(s, alpha) * caputo_mellin_multiplier(s, alpha);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("inversion anchors for the Gaussian and the Cauchy density", "[mellin][contour]") {
    const FracOrder ord(1.0, 1);
    // Fourier-route oracle value: -2/sqrt(pi)
    CHECK(apply_multiplier_and_invert(corpus_radial("gaussian"), ord, 0.0) ==
          Approx(-1.1283791670955126).epsilon(1e-9));
    CHECK(apply_multiplier_and_invert(corpus_radial("cauchy"), ord, 0.0) ==
          Approx(-1.0 / pi).epsilon(1e-9));
    // classical limit: alpha -> 2 recovers the Laplacian of e^{-x^2} at 0
    CHECK(apply_multiplier_and_invert(corpus_radial("gaussian"), FracOrder(1.999, 1), 0.0) ==
          Approx(-2.0).epsilon(1e-2));
}

TEST_CASE("alpha -> 2 continuity is first order for the Gaussian", "[mellin][contour]") {
    const auto classical = [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); };
    for (double x : {0.0, 1.0}) {
        for (double eps : {0.02, 0.01}) {
            const double v =
                apply_multiplier_and_invert(corpus_radial("gaussian"), FracOrder(2.0 - eps, 1), x);
            CHECK(std::abs(v - classical(x)) <= 10.0 * eps);
        }
    }
}

TEST_CASE("contour abscissa independence inside the admissible strip", "[mellin][contour]") {
    const FracOrder ord(1.0, 1);
    ContourSpec s1, s2;
    s1.abscissa = 0.4;
    s2.abscissa = 0.6;
    const double v1 = apply_multiplier_and_invert(corpus_radial("gaussian"), ord, 1.0, s1);
    const double v2 = apply_multiplier_and_invert(corpus_radial("gaussian"), ord, 1.0, s2);
    CHECK(std::abs(v1 - v2) <= 1e-8);
}

TEST_CASE("numeric-only image raises StripConflict when continuation is needed",
          "[mellin][contour]") {
    RadialFunction f = corpus_radial("lorentz");
    f.mellin->continued = false; // pretend the image is purely numerical
    CHECK_THROWS_AS(apply_multiplier_and_invert(f, FracOrder(1.5, 1), 1.0), StripConflict);
    // with an admissible strip it still works without continuation
    CHECK_NOTHROW(apply_multiplier_and_invert(f, FracOrder(0.5, 1), 1.0));
}

TEST_CASE("missing image raises StripConflict", "[mellin][contour]") {
    RadialFunction f = corpus_radial("gaussian");
    f.mellin.reset();
    CHECK_THROWS_AS(apply_multiplier_and_invert(f, FracOrder(1.0, 1), 1.0), StripConflict);
}

TEST_CASE("asymmetric integrand raises ResidualImaginary", "[mellin][contour]") {
    RadialFunction f = corpus_radial("gaussian");
    const MellinImage base = *f.mellin;
    f.mellin = MellinImage{
        [base](Complex s) { return base.eval(s) * (1.0 + 0.3 * s.imag()); }, base.strip_lo,
        base.strip_hi, true};
    CHECK_THROWS_AS(apply_multiplier_and_invert(f, FracOrder(1.0, 1), 1.0), ResidualImaginary);
}
