#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

// Base class for failures of the numerical machinery (as opposed to
// plain precondition violations, which throw std::invalid_argument).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Subdivision budget exhausted with the error estimate above tolerance.
struct NoConvergence : NumericError {
    using NumericError::NumericError;
};

// Gamma function evaluated at a non-positive integer, or an uncancelled
// pole in a Gamma ratio.
struct PoleError : NumericError {
    using NumericError::NumericError;
};

// Cosine factor of the one-dimensional multiplier vanishes ((s - alpha)
// hit an odd integer).
struct CosineZero : NumericError {
    using NumericError::NumericError;
};

// Mellin evaluation requested outside the convergence strip.
struct OutsideStrip : NumericError {
    using NumericError::NumericError;
};

// No admissible inversion abscissa exists without analytic continuation,
// and the image is not flagged as continued.
struct StripConflict : NumericError {
    using NumericError::NumericError;
};

// Contour inversion of a nominally real quantity left an imaginary
// residue above tolerance.
struct ResidualImaginary : NumericError {
    using NumericError::NumericError;
};

// Contour integrand does not decay below the cutoff at any affordable
// truncation height.
struct TailTooFat : NumericError {
    using NumericError::NumericError;
};

// Residue estimate at a principal-value pole does not stabilise.
struct NotSimplePole : NumericError {
    using NumericError::NumericError;
};

// Operator route not implemented for the requested dimension.
struct DimensionUnsupported : NumericError {
    using NumericError::NumericError;
};

// Parameter outside the operator's convergence range (e.g. Riesz
// potential with alpha >= n).
struct ParameterOutOfRange : NumericError {
    using NumericError::NumericError;
};

} // namespace fraclap
