#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hfrac/variational.hpp"

namespace hfrac {

/// No start converged; distinct from an empty post-dedupe set (which cannot
/// happen: dedupe never removes every candidate).
struct SolveNoConvergence : Error {
  using Error::Error;
};

struct SolverConfig {
  int n_starts = 200;
  double init_lo = -5.0;
  double init_hi = 5.0;
  int max_iters = 100;
  double step_tol = 1e-12;
  double residual_tol = kResidualTol;
  double dedupe_tol = 1e-6;
  std::uint64_t seed = 0;
};

struct SolveReport {
  std::vector<ExtremalCandidate> candidates;  // sorted by functional value
  int n_starts_converged = 0;
  int n_duplicates_merged = 0;
};

/// Deterministic uniform generator (SplitMix64 core); identical seeds give
/// identical streams on every platform, unlike the standard distributions.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = (next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

using ResidualMap = std::function<Vector(const Vector&)>;
using JacobianMap = std::function<Eigen::MatrixXd(const Vector&)>;

/// Central finite-difference Jacobian of r, step 1e-7 * (1 + |x_i|) per
/// coordinate.
Eigen::MatrixXd fd_jacobian(const ResidualMap& r, const Vector& x);

struct NewtonStepResult {
  Vector x;
  bool improved = false;   // residual norm decreased
  bool singular = false;   // Jacobian was singular even after a retry
};

/// One damped Newton update: solve J d = r(x) and backtrack
/// lambda in {1, 1/2, 1/4, ...} until the max-norm residual decreases or
/// lambda < 1e-4 (not improved). A singular Jacobian is retried once from a
/// perturbed point.
NewtonStepResult newton_step(const ResidualMap& r, const JacobianMap& jac,
                             const Vector& x, UniformRng& rng);

/// Greedy dedupe by max-norm distance <= tol; each cluster keeps the entry
/// with the smallest residual norm. Returns indices of survivors in first-seen
/// cluster order.
std::vector<int> dedupe_clusters(const std::vector<Vector>& xs,
                                 const std::vector<double>& residual_norms,
                                 double tol);

/// Multi-start damped Newton over the stationarity system (interior values
/// plus any free endpoints; free endpoints append their natural-boundary
/// residuals). Deterministic for a given (problem, config) pair.
SolveReport solve(const VariationalProblem& p, const SolverConfig& cfg);

}  // namespace hfrac
