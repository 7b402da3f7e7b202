#include "hfrac/special.hpp"

#include <cmath>
#include <cstdint>

namespace hfrac {

namespace {

constexpr double kLogDblMax = 709.0;

// Sign of Gamma(x) away from poles: positive for x > 0, alternating on the
// negative axis ((-1,0) negative, (-2,-1) positive, ...).
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  const auto f = static_cast<std::int64_t>(std::floor(x));
  return (f % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

bool at_pole(double z) {
  const double r = std::round(z);
  return std::abs(z - r) < kPoleTol && r <= 0.0;
}

double gamma_fn(double x) {
  if (at_pole(x)) {
    throw PoleError("gamma: argument " + std::to_string(x) +
                    " is at a nonpositive-integer pole");
  }
  if (x > 171.62) {
    throw OverflowError("gamma: argument " + std::to_string(x) +
                        " overflows double range");
  }
  return std::tgamma(x);
}

double gamma_ratio(double num, double den) {
  const bool pn = at_pole(num);
  const bool pd = at_pole(den);
  if (pd && !pn) return 0.0;
  if (pn && pd) {
    // Limit of Gamma(num+eps)/Gamma(den+eps) as eps -> 0 for nonpositive
    // integers num, den.
    const auto m = static_cast<std::int64_t>(std::llround(-num));
    const auto n = static_cast<std::int64_t>(std::llround(-den));
    const double sign = ((m - n) % 2 == 0) ? 1.0 : -1.0;
    const double lg = std::lgamma(1.0 + static_cast<double>(n)) -
                      std::lgamma(1.0 + static_cast<double>(m));
    if (lg > kLogDblMax) {
      throw OverflowError("gamma_ratio: pole-limit ratio overflows");
    }
    return sign * std::exp(lg);
  }
  if (pn) {
    throw PoleError("gamma_ratio: numerator " + std::to_string(num) +
                    " at a pole, denominator " + std::to_string(den) +
                    " is not; ratio is infinite");
  }
  // Small positive arguments: the direct quotient is exact on integer cases.
  if (num > 0.0 && den > 0.0 && num < 30.0 && den < 30.0) {
    return std::tgamma(num) / std::tgamma(den);
  }
  const double sign = gamma_sign(num) * gamma_sign(den);
  const double lg = std::lgamma(num) - std::lgamma(den);
  if (lg > kLogDblMax) {
    throw OverflowError("gamma_ratio: ratio overflows double range");
  }
  return sign * std::exp(lg);
}

double h_factorial(double x, double y, double h) {
  if (!(h > 0.0)) throw Error("h_factorial: step h must be positive");
  return h_factorial_scaled(x / h, y, h);
}

double h_factorial_scaled(double x_over_h, double y, double h) {
  if (!(h > 0.0)) throw Error("h_factorial: step h must be positive");
  return std::pow(h, y) * gamma_ratio(x_over_h + 1.0, x_over_h + 1.0 - y);
}

double generalized_polynomial(int k, double t, double s, double h) {
  if (k < 0) throw Error("generalized_polynomial: k must be nonnegative");
  if (k == 0) return 1.0;
  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  return h_factorial(t - s, static_cast<double>(k), h) / kfact;
}

}  // namespace hfrac
