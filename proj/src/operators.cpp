#include "hfrac/operators.hpp"

#include <cmath>
#include <vector>

namespace hfrac {

int GridFunction::index_of(double t) const {
  const double x = (t - grid.a - offset) / grid.h;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 || r < 0.0 || r > grid.k) {
    throw GridError("point " + std::to_string(t) + " is not on the grid");
  }
  return static_cast<int>(r);
}

GridFunction delta_derivative(const GridFunction& f) {
  if (f.grid.k < 1) {
    throw GridError("delta_derivative: domain has fewer than 2 points");
  }
  const int n = f.grid.k;
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = (f.values[i + 1] - f.values[i]) / f.grid.h;
  }
  return GridFunction(f.grid.kappa(), f.offset, std::move(out));
}

double h_integral(const GridFunction& f, double lo, double hi) {
  const int iLo = f.index_of(lo);
  const int iHi = f.index_of(hi);
  if (iLo > iHi) throw GridError("h_integral: lo must not exceed hi");
  KahanSum s;
  for (int i = iLo; i < iHi; ++i) s.add(f.values[i]);
  return s.value() * f.grid.h;
}

namespace {

// Kernel (d - 1 + nu)h in h-factorial form, order nu - 1, for lag d >= 0.
std::vector<double> sum_kernel(int kmax, double nu, double h) {
  std::vector<double> ker(kmax + 1);
  for (int d = 0; d <= kmax; ++d) {
    ker[d] = h_factorial_scaled(d - 1.0 + nu, nu - 1.0, h);
  }
  return ker;
}

}  // namespace

GridFunction left_fractional_sum(const GridFunction& f, double nu) {
  if (!(nu > 0.0)) throw Error("left_fractional_sum: order nu must be > 0");
  const int k = f.grid.k;
  const double h = f.grid.h;
  const auto ker = sum_kernel(k, nu, h);
  const double c = 1.0 / gamma_fn(nu);
  Vector out(k + 1);
  for (int i = 0; i <= k; ++i) {
    KahanSum s;
    for (int j = 0; j <= i; ++j) s.add(ker[i - j] * f.values[j]);
    out[i] = c * s.value() * h;
  }
  return GridFunction(f.grid, f.offset + nu * h, std::move(out));
}

GridFunction right_fractional_sum(const GridFunction& f, double nu) {
  if (!(nu > 0.0)) throw Error("right_fractional_sum: order nu must be > 0");
  const int k = f.grid.k;
  const double h = f.grid.h;
  const auto ker = sum_kernel(k, nu, h);
  const double c = 1.0 / gamma_fn(nu);
  Vector out(k + 1);
  for (int i = 0; i <= k; ++i) {
    KahanSum s;
    for (int j = i; j <= k; ++j) s.add(ker[j - i] * f.values[j]);
    out[i] = c * s.value() * h;
  }
  return GridFunction(f.grid, f.offset - nu * h, std::move(out));
}

GridFunction left_fractional_difference(const GridFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error("left_fractional_difference: alpha must lie in (0, 1]");
  }
  if (alpha == 1.0) return delta_derivative(f);
  GridFunction g = left_fractional_sum(f, 1.0 - alpha);
  GridFunction d = delta_derivative(g);
  d.offset = f.offset;  // the difference lives back on the base grid
  return d;
}

GridFunction right_fractional_difference(const GridFunction& f, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error("right_fractional_difference: beta must lie in (0, 1]");
  }
  GridFunction d = beta == 1.0
                       ? delta_derivative(f)
                       : delta_derivative(right_fractional_sum(f, 1.0 - beta));
  d.values = -d.values;
  d.offset = f.offset;
  return d;
}

double left_shift_identity_residual(const GridFunction& f, double nu) {
  if (nu < 0.0) throw Error("left_shift_identity_residual: nu must be >= 0");
  if (nu == 0.0) return 0.0;  // both sides collapse to f^Delta
  const double h = f.grid.h;
  const GridFunction lhs = left_fractional_sum(delta_derivative(f), nu);
  const GridFunction G = left_fractional_sum(f, nu);
  const double c = nu / gamma_fn(nu + 1.0);
  double worst = 0.0;
  for (int i = 0; i < f.grid.k; ++i) {
    const double dG = (G.values[i + 1] - G.values[i]) / h;
    const double bnd = c * h_factorial_scaled(i + nu, nu - 1.0, h) * f.values[0];
    worst = std::max(worst, std::abs(lhs.values[i] - (dG - bnd)));
  }
  return worst;
}

double right_shift_identity_residual(const GridFunction& f, double nu) {
  if (nu < 0.0) throw Error("right_shift_identity_residual: nu must be >= 0");
  if (nu == 0.0) return 0.0;
  const int k = f.grid.k;
  const double h = f.grid.h;
  const GridFunction lhs = right_fractional_sum(delta_derivative(f), nu);
  const GridFunction H = right_fractional_sum(f, nu);
  const double c = nu / gamma_fn(nu + 1.0);
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    const double dH = (H.values[i + 1] - H.values[i]) / h;
    const double bnd =
        c * h_factorial_scaled(k - i - 1.0 + nu, nu - 1.0, h) * f.values[k];
    worst = std::max(worst, std::abs(lhs.values[i] - (bnd + dH)));
  }
  return worst;
}

double exchange_lemma_residual(const GridFunction& f, const GridFunction& k,
                               const std::function<double(double, double)>& g) {
  if (k.grid.k != f.grid.k - 1 || k.grid.a != f.grid.a ||
      k.grid.h != f.grid.h) {
    throw GridError("exchange_lemma_residual: k must live on f's truncation");
  }
  const int K = f.grid.k;  // f has points t_0..t_K
  const double h = f.grid.h;
  KahanSum lhs;
  for (int i = 0; i <= K; ++i) {
    KahanSum inner;
    for (int j = 0; j < i; ++j) {
      inner.add(g(f.point(i), f.point(j)) * k.values[j]);
    }
    lhs.add(f.values[i] * inner.value());
  }
  KahanSum rhs;
  for (int i = 0; i < K; ++i) {
    KahanSum inner;
    for (int j = i + 1; j <= K; ++j) {
      inner.add(g(f.point(j), f.point(i)) * f.values[j]);
    }
    rhs.add(k.values[i] * inner.value());
  }
  return std::abs(lhs.value() - rhs.value()) * h * h;
}

}  // namespace hfrac
