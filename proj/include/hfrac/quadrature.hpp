#pragma once

#include <functional>

#include "hfrac/special.hpp"

namespace hfrac {

/// Quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
  using Error::Error;
};

/// Double-exponential (tanh-sinh) quadrature of f over (lo, hi); handles
/// integrable endpoint singularities. abs_tol is the absolute error target.
double tanh_sinh_integrate(const std::function<double(double)>& f, double lo,
                           double hi, double abs_tol);

/// Reference extremal of the order-3/4 quadratic-cost problem on [0,1]:
/// y(t) = (1/2) * integral over (0,t) of [(1-x)(t-x)]^(-1/4) dx, for
/// t in (0,1]. Main path is tanh-sinh quadrature; absolute error <= 1e-8.
double reference_quadrature_ex1(double t);

/// Same value by an independent scheme (adaptive Simpson after the
/// singularity-removing substitution x = t - q^(4/3)); used to cross-check.
double reference_quadrature_ex1_alt(double t);

}  // namespace hfrac
