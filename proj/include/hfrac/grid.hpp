#pragma once

#include <Eigen/Core>

#include "hfrac/special.hpp"

namespace hfrac {

using Vector = Eigen::VectorXd;

/// A point is off the grid or a grid parameter is invalid.
struct GridError : Error {
  using Error::Error;
};

/// The discrete interval [a, a + k*h] on the step-h lattice anchored at a.
/// Points are always index*h offsets from a, never accumulated sums.
/// Variational problems need k >= 2 (so the double truncation is nonempty);
/// operator outputs may live on grids with smaller k.
struct GridSpec {
  double a = 0.0;
  double h = 1.0;
  int k = 1;

  GridSpec() = default;
  GridSpec(double a_, double h_, int k_) : a(a_), h(h_), k(k_) {
    if (!(h > 0.0)) throw GridError("GridSpec: step h must be positive");
    if (k < 0) throw GridError("GridSpec: k must be nonnegative");
  }

  double b() const { return a + k * h; }
  int npoints() const { return k + 1; }
  double point(int i) const { return a + i * h; }

  /// Grid with the last point dropped.
  GridSpec kappa() const {
    if (k < 1) throw GridError("GridSpec: kappa of a single-point grid");
    return GridSpec(a, h, k - 1);
  }

  bool operator==(const GridSpec& o) const {
    return a == o.a && h == o.h && k == o.k;
  }
};

/// Real values sampled on a GridSpec, possibly on a nu-shifted copy of it:
/// domain point i sits at a + offset + i*h. The offset records the shift of
/// the fractional-sum image domains {t +- nu*h : t in T}.
struct GridFunction {
  GridSpec grid;
  double offset = 0.0;
  Vector values;

  GridFunction() = default;
  GridFunction(GridSpec g, Vector v) : GridFunction(g, 0.0, std::move(v)) {}
  GridFunction(GridSpec g, double off, Vector v)
      : grid(g), offset(off), values(std::move(v)) {
    if (values.size() != grid.npoints()) {
      throw GridError("GridFunction: value count does not match grid");
    }
  }

  int size() const { return static_cast<int>(values.size()); }
  double point(int i) const { return grid.a + offset + i * grid.h; }
  double operator[](int i) const { return values[i]; }

  /// Index of the domain point at time t; throws if t is off the grid.
  int index_of(double t) const;
};

/// Fractional orders (alpha, beta) of the variational problem, both in (0,1],
/// with the derived sum orders gamma = 1 - alpha and nu = 1 - beta.
struct FractionalOrders {
  double alpha = 1.0;
  double beta = 1.0;

  FractionalOrders() = default;
  FractionalOrders(double a_, double b_) : alpha(a_), beta(b_) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw GridError("FractionalOrders: alpha must lie in (0, 1]");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
      throw GridError("FractionalOrders: beta must lie in (0, 1]");
    }
  }

  double gamma_order() const { return 1.0 - alpha; }
  double nu_order() const { return 1.0 - beta; }
};

/// Compensated (Kahan) accumulator; operator kernels vary over orders of
/// magnitude for small nu, so plain summation loses digits.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace hfrac
