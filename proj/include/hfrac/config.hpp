#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hfrac/solver.hpp"

namespace hfrac {

/// Bad key, bad value, or an inconsistent problem description.
struct ConfigError : Error {
  using Error::Error;
};

/// Flat key = value problem description. Recognized keys:
///   a, b, h, k, alpha, beta, lagrangian, left_bc, right_bc,
///   n_starts, seed, init_lo, init_hi
/// '#' starts a comment; blank lines are ignored. The grid is given either
/// as (a, b, h) with (b - a)/h an integer to within 1e-9 (then snapped), or
/// as (a, h, k). beta may be omitted only when the lagrangian does not use w;
/// the right difference order then defaults to 1 and never enters the cost.
/// left_bc / right_bc omitted means the corresponding endpoint is free.
struct ProblemConfig {
  double a = 0.0;
  double h = 0.0;
  int k = 0;
  double alpha = 0.0;
  std::optional<double> beta;
  std::string lagrangian;
  std::optional<double> left_bc;
  std::optional<double> right_bc;
  // Solver overrides:
  std::optional<int> n_starts;
  std::optional<std::uint64_t> seed;
  std::optional<double> init_lo;
  std::optional<double> init_hi;

  VariationalProblem problem() const;
  SolverConfig solver_config() const;
};

ProblemConfig parse_config(std::istream& in);
ProblemConfig parse_config_file(const std::string& path);

/// Decimal rendering used for every CSV cell: shortest round-trip-exact form
/// via 17 significant digits.
std::string format_cell(double x);

}  // namespace hfrac
