#pragma once

#include <stdexcept>
#include <string>

namespace hfrac {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gamma evaluated at (or too near) a nonpositive integer.
struct PoleError : Error {
  using Error::Error;
};

/// Result magnitude exceeds double range.
struct OverflowError : Error {
  using Error::Error;
};

/// An argument z counts as a gamma pole when it is within this distance of a
/// nonpositive integer. Grid arithmetic like a/h produces near-integers with
/// accumulated floating error, so exact comparison would be wrong.
inline constexpr double kPoleTol = 1e-9;

/// True if z is within kPoleTol of a nonpositive integer.
bool at_pole(double z);

/// Euler gamma function. Throws PoleError at nonpositive integers and
/// OverflowError when the result exceeds double range. Relative accuracy is
/// better than 1e-12 for |x| <= 50 away from poles.
double gamma_fn(double x);

/// Gamma(num)/Gamma(den) with the pole conventions used throughout:
///  - den at a pole, num not: returns exactly 0 ("division at a pole yields
///    zero").
///  - both at poles: returns the limit of the ratio,
///    (-1)^(den-num) * Gamma(1-den) / Gamma(1-num). This extends the
///    denominator-pole rule to the indeterminate case; the limit follows from
///    Gamma(-m+eps) ~ (-1)^m/(m! eps).
///  - num at a pole, den not: the ratio is infinite; throws PoleError.
/// Computed through log-gamma with explicit sign tracking, so large arguments
/// do not overflow intermediate terms.
double gamma_ratio(double num, double den);

/// The h-factorial x_h^(y) = h^y * Gamma(x/h + 1) / Gamma(x/h + 1 - y),
/// with gamma_ratio's pole conventions. Requires h > 0.
double h_factorial(double x, double y, double h);

/// Same value, taking the already-divided argument x/h. Operator kernels use
/// this form so that integer index arithmetic stays exact.
double h_factorial_scaled(double x_over_h, double y, double h);

/// Generalized polynomial H_k(t, s) = (t - s)_h^(k) / k! on the step-h grid.
/// H_0 is identically 1. Requires h > 0 and k >= 0.
double generalized_polynomial(int k, double t, double s, double h);

}  // namespace hfrac
