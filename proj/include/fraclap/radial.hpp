#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/gamma.hpp"

namespace fraclap {

// Mellin image s -> M f(s) with its strip of convergence lo < Re s < hi.
// `continued` marks a closed form valid beyond the strip (away from its
// poles), which inversion contours are allowed to exploit.
struct MellinImage {
    std::function<Complex(Complex)> eval;
    double strip_lo = 0.0;
    double strip_hi = std::numeric_limits<double>::infinity();
    bool continued = false;

    void validate() const {
        if (!eval)
            throw std::invalid_argument("MellinImage: missing evaluator");
        if (!(strip_lo < strip_hi))
            throw std::invalid_argument("MellinImage: empty strip");
    }
};

// Fractional order alpha in (0,2) together with the ambient dimension and
// the integer ceiling m used by one-sided derivatives.
struct FracOrder {
    double alpha;
    int n = 1;
    int m;

    FracOrder(double alpha_, int n_ = 1) : alpha(alpha_), n(n_), m(static_cast<int>(std::ceil(alpha_))) {
        if (!(alpha > 0.0 && alpha < 2.0))
            throw std::invalid_argument("FracOrder: alpha must lie in (0,2)");
        if (n < 1)
            throw std::invalid_argument("FracOrder: dimension must be >= 1");
    }
};

struct Decay {
    enum class Kind { Exponential, Power } kind = Kind::Exponential;
    double rate = 1.0; // e^{-rate * r^p} style for Exponential, r^{-rate} for Power
};

// Function on the half line t > 0 with the derivatives and initial values
// the one-sided fractional derivatives consume. derivative(0) is the
// profile itself; initial_values[j] = phi^(j)(0+).
struct HalfLineFunction {
    std::function<double(double)> profile;
    std::vector<std::function<double(double)>> derivatives; // index = order, starting at 1
    std::vector<double> initial_values;
    double tail_negligible_beyond = std::numeric_limits<double>::infinity();

    const std::function<double(double)>& derivative(int order) const {
        if (order == 0)
            return profile;
        if (order < 1 || static_cast<std::size_t>(order) > derivatives.size() ||
            !derivatives[order - 1])
            throw std::invalid_argument("HalfLineFunction: derivative of order " +
                                        std::to_string(order) + " not available");
        return derivatives[order - 1];
    }
};

// Radial profile r -> f(r) in dimension n with the metadata the operator
// routes need. The even extension f(|x|) is implicit.
struct RadialFunction {
    std::string name;
    std::function<double(double)> profile;
    int n = 1;
    std::optional<MellinImage> mellin;
    std::function<double(double)> fourier_profile; // kappa -> F f(kappa) in dimension n, may be empty
    std::function<double(double)> d2;              // second derivative of the profile, may be empty
    Decay decay;

    double operator()(double r) const { return profile(r); }
};

} // namespace fraclap
