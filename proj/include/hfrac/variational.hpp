#pragma once

#include <optional>

#include "hfrac/expr.hpp"
#include "hfrac/grid.hpp"
#include "hfrac/operators.hpp"

namespace hfrac {

/// A Lagrangian evaluation failed somewhere along a trajectory; carries the
/// grid point at which it happened.
struct FunctionalDomainError : Error {
  FunctionalDomainError(const std::string& msg, double t_)
      : Error(msg + " at grid point t = " + std::to_string(t_)), t(t_) {}
  double t;
};

/// Full trajectory on the problem grid, endpoints included.
using Trajectory = GridFunction;

/// The discrete fractional variational problem: minimize the h-integral of
/// L(t, y^sigma, left alpha-difference of y, right beta-difference of y)
/// subject to optional pinned boundary values. An absent boundary value means
/// the corresponding natural boundary condition applies.
struct VariationalProblem {
  GridSpec grid;
  FractionalOrders orders;
  expr::Ast lagrangian;
  std::optional<double> left_bc;
  std::optional<double> right_bc;

  VariationalProblem(GridSpec g, FractionalOrders ord, expr::Ast L,
                     std::optional<double> A, std::optional<double> B)
      : grid(g), orders(ord), lagrangian(std::move(L)), left_bc(A),
        right_bc(B) {
    if (grid.k < 2) {
      throw GridError("VariationalProblem: need k >= 2 grid intervals");
    }
  }
};

/// First and second Lagrangian partials along a trajectory, one entry per
/// point of the once-truncated grid.
struct TrajectoryJets {
  Vector value, Lu, Lv, Lw, Luu, Luv, Luw, Lvv, Lvw, Lww;
  Vector v, w;  // the fractional differences themselves
};

TrajectoryJets jets_along(const VariationalProblem& p, const Trajectory& y);

/// The functional: h-integral over the once-truncated grid of the Lagrangian
/// along y.
double evaluate_functional(const VariationalProblem& p, const Trajectory& y);

/// Pointwise residual of the stationarity equation
///   L_u + (right alpha-difference of L_v) + (left beta-difference of L_w)
/// on the twice-truncated grid.
GridFunction euler_lagrange_residual(const VariationalProblem& p,
                                     const Trajectory& y);

/// Stationarity residual in the free left endpoint; equals the partial
/// derivative of the functional with respect to y(a). Requires left_bc to be
/// absent.
double natural_bc_left_residual(const VariationalProblem& p,
                                const Trajectory& y);

/// Mirror condition at the free right endpoint (the partial derivative of
/// the functional with respect to y(b)). Requires right_bc to be absent.
double natural_bc_right_residual(const VariationalProblem& p,
                                 const Trajectory& y);

/// Left-hand side of the second-order (Legendre-type) necessary condition at
/// each point of the twice-truncated grid; a local minimum needs every entry
/// nonnegative. h times each entry equals the second derivative of the
/// functional under the canonical single-point variation at that point.
GridFunction legendre_lhs(const VariationalProblem& p, const Trajectory& y);

/// max|f^sigma| + max|left alpha-difference| + max|right beta-difference|
/// over the once-truncated grid.
double trajectory_norm(const VariationalProblem& p, const Trajectory& f);

/// |LHS - RHS| of the fractional summation-by-parts identity for f on the
/// once-truncated grid and g on the full grid; a correctness self-check.
double summation_by_parts_residual(const GridFunction& f,
                                   const GridFunction& g, double alpha);

/// Values >= -tol count as nonnegative in the Legendre screen; matches the
/// solver's residual tolerance scale.
inline constexpr double kLegendreTol = 1e-9;
inline constexpr double kResidualTol = 1e-9;

/// A stationary trajectory with its diagnostics.
struct ExtremalCandidate {
  Trajectory trajectory;
  double functional_value = 0.0;
  double el_residual_norm = 0.0;
  Vector legendre_values;
  bool legendre_verified = false;
};

}  // namespace hfrac
