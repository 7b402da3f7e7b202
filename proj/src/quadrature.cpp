#include "hfrac/quadrature.hpp"

#include <cmath>

namespace hfrac {

double tanh_sinh_integrate(const std::function<double(double)>& f, double lo,
                           double hi, double abs_tol) {
  // x = c + r*tanh((pi/2) sinh(u)); nodes symmetric in u, |u| <= umax.
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  const double umax = 4.0;
  const double half_pi = 1.5707963267948966;

  auto node = [&](double u, double& x, double& wt) {
    const double s = std::sinh(u);
    const double t = std::tanh(half_pi * s);
    x = c + r * t;
    const double ch = std::cosh(half_pi * s);
    wt = r * half_pi * std::cosh(u) / (ch * ch);
  };

  auto sample = [&](double u) {
    double x, wt;
    node(u, x, wt);
    if (x <= lo || x >= hi || wt == 0.0 || !std::isfinite(wt)) return 0.0;
    const double y = f(x);
    return std::isfinite(y) ? wt * y : 0.0;
  };

  double step = 1.0;
  double total = step * sample(0.0);
  for (int i = 1; i * step <= umax; ++i) {
    total += step * (sample(i * step) + sample(-i * step));
  }
  for (int level = 1; level <= 12; ++level) {
    step *= 0.5;
    double added = 0.0;
    for (int i = 1; i * step <= umax; i += 2) {
      added += sample(i * step) + sample(-i * step);
    }
    const double refined = 0.5 * total + step * added;
    const double change = std::abs(refined - total);
    total = refined;
    if (level >= 3 && change <= abs_tol) return total;
  }
  throw QuadratureError("tanh_sinh_integrate: did not reach tolerance");
}

double reference_quadrature_ex1(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw Error("reference_quadrature_ex1: t must lie in (0, 1]");
  }
  const auto f = [t](double x) {
    return std::pow((1.0 - x) * (t - x), -0.25);
  };
  return 0.5 * tanh_sinh_integrate(f, 0.0, t, 1e-10);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw QuadratureError("adaptive_simpson: depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  const double child_tol = std::max(0.5 * tol, 5e-15);
  return adaptive_simpson(f, a, m, fa, flm, fm, child_tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, child_tol, depth - 1);
}

}  // namespace

double reference_quadrature_ex1_alt(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw Error("reference_quadrature_ex1_alt: t must lie in (0, 1]");
  }
  // x = t - q^(4/3) removes the x -> t endpoint singularity, and the second
  // substitution q = r^3 leaves a smooth integrand on [0, t^(1/4)]:
  //   y(t) = (1/2) * int_0^(t^(1/4)) 4 r^2 (1 - t + r^4)^(-1/4) dr,
  // which at t = 1 degenerates to the plain linear integrand 4r.
  const auto f = [t](double r) {
    if (r <= 0.0) return 0.0;
    return 4.0 * r * r * std::pow(1.0 - t + r * r * r * r, -0.25);
  };
  const double hi = std::pow(t, 0.25);
  const double fa = f(0.0);
  const double fm = f(0.5 * hi);
  const double fb = f(hi);
  return 0.5 * adaptive_simpson(f, 0.0, hi, fa, fm, fb, 1e-10, 48);
}

}  // namespace hfrac
