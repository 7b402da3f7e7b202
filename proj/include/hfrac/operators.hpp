#pragma once

#include <functional>

#include "hfrac/grid.hpp"

namespace hfrac {

/// Forward h-difference (f(t+h) - f(t))/h on the kappa-truncated domain.
/// Throws GridError if the domain has fewer than 2 points.
GridFunction delta_derivative(const GridFunction& f);

/// Left-endpoint h-sum of f over [lo, hi): sum of f(t)*h for grid points
/// lo <= t < hi. Returns 0 when lo == hi. lo and hi must be domain points.
double h_integral(const GridFunction& f, double lo, double hi);

/// Left fractional h-sum of order nu > 0. The result lives on the shifted
/// domain {t + nu*h : t in dom f}; value i is
///   (1/Gamma(nu)) * sum_{j=0..i} (t_i + nu*h - sigma(t_j))_h^(nu-1) f_j h.
GridFunction left_fractional_sum(const GridFunction& f, double nu);

/// Right fractional h-sum of order nu > 0, on {t - nu*h : t in dom f}.
GridFunction right_fractional_sum(const GridFunction& f, double nu);

/// Left fractional h-difference of order alpha in (0,1]: the forward
/// difference of the order-(1-alpha) left sum pulled back to the base grid.
/// alpha = 1 is exactly delta_derivative.
GridFunction left_fractional_difference(const GridFunction& f, double alpha);

/// Right fractional h-difference of order beta in (0,1]:
/// minus the forward difference of the order-(1-beta) right sum. beta = 1
/// gives -delta_derivative.
GridFunction right_fractional_difference(const GridFunction& f, double beta);

/// Max-abs residual over the truncated domain of the left shift identity:
/// the left sum of f^Delta versus the differenced left sum of f minus its
/// boundary term. Zero (exactly) for nu = 0; a correctness self-check.
double left_shift_identity_residual(const GridFunction& f, double nu);

/// Mirror self-check for the right shift identity, with the right sum of
/// f^Delta taken on the interval ending at rho(b).
double right_shift_identity_residual(const GridFunction& f, double nu);

/// |LHS - RHS| of the double-sum exchange identity
///   int_a^b f(t) int_a^t g(t,s) k(s) ds dt
///     = int_a^rho(b) k(t) int_sigma(t)^b g(s,t) f(s) ds dt,
/// where f lives on the once-truncated grid and k on the twice-truncated one.
double exchange_lemma_residual(const GridFunction& f, const GridFunction& k,
                               const std::function<double(double, double)>& g);

}  // namespace hfrac
