#include "hfrac/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hfrac {

namespace {

double max_norm(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

// Unknown layout: interior values, then the free left endpoint (if any),
// then the free right endpoint (if any).
struct UnknownLayout {
  int n_interior;
  bool free_left;
  bool free_right;
  int size() const {
    return n_interior + (free_left ? 1 : 0) + (free_right ? 1 : 0);
  }
};

Trajectory assemble(const VariationalProblem& p, const UnknownLayout& lay,
                    const Vector& x) {
  Vector y(p.grid.npoints());
  y[0] = lay.free_left ? x[lay.n_interior] : *p.left_bc;
  y[p.grid.k] = lay.free_right ? x[lay.size() - 1] : *p.right_bc;
  y.segment(1, lay.n_interior) = x.head(lay.n_interior);
  return Trajectory(p.grid, std::move(y));
}

ResidualMap make_residual(const VariationalProblem& p,
                          const UnknownLayout& lay) {
  return [&p, lay](const Vector& x) {
    const Trajectory y = assemble(p, lay, x);
    const GridFunction el = euler_lagrange_residual(p, y);
    Vector r(lay.size());
    r.head(lay.n_interior) = el.values;
    int at = lay.n_interior;
    if (lay.free_left) r[at++] = natural_bc_left_residual(p, y);
    if (lay.free_right) r[at++] = natural_bc_right_residual(p, y);
    return r;
  };
}

}  // namespace

Eigen::MatrixXd fd_jacobian(const ResidualMap& r, const Vector& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd J(n, n);
  for (int i = 0; i < n; ++i) {
    const double step = 1e-7 * (1.0 + std::abs(x[i]));
    Vector xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    J.col(i) = (r(xp) - r(xm)) / (2.0 * step);
  }
  return J;
}

NewtonStepResult newton_step(const ResidualMap& r, const JacobianMap& jac,
                             const Vector& x, UniformRng& rng) {
  NewtonStepResult out;
  out.x = x;
  Vector x0 = x;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Vector r0 = r(x0);
    const double n0 = max_norm(r0);
    if (n0 == 0.0) {
      out.x = x0;
      out.improved = true;
      return out;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac(x0));
    if (!lu.isInvertible()) {
      if (attempt == 0) {
        // Perturb once and retry from there.
        for (int i = 0; i < x0.size(); ++i) {
          x0[i] += 1e-8 * (1.0 + std::abs(x0[i])) * (rng.uniform(0, 2) - 1.0);
        }
        continue;
      }
      out.singular = true;
      return out;
    }
    const Vector d = lu.solve(r0);
    for (double lambda = 1.0; lambda >= 1e-4; lambda *= 0.5) {
      const Vector trial = x0 - lambda * d;
      if (max_norm(r(trial)) < n0) {
        out.x = trial;
        out.improved = true;
        return out;
      }
    }
    out.x = x0;
    return out;  // stalled
  }
  return out;
}

std::vector<int> dedupe_clusters(const std::vector<Vector>& xs,
                                 const std::vector<double>& residual_norms,
                                 double tol) {
  std::vector<int> reps;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
    bool merged = false;
    for (int& rep : reps) {
      if (max_norm(xs[i] - xs[rep]) <= tol) {
        if (residual_norms[i] < residual_norms[rep]) rep = i;
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(i);
  }
  return reps;
}

SolveReport solve(const VariationalProblem& p, const SolverConfig& cfg) {
  const UnknownLayout lay{p.grid.k - 1, !p.left_bc.has_value(),
                          !p.right_bc.has_value()};
  if (lay.size() < 1) throw Error("solve: problem has no unknowns");
  const ResidualMap residual = make_residual(p, lay);
  const JacobianMap jac = [&residual](const Vector& x) {
    return fd_jacobian(residual, x);
  };

  UniformRng rng(cfg.seed);
  std::vector<Vector> starts;
  starts.emplace_back(Vector::Zero(lay.size()));
  {
    // Linear interpolant of the boundary data (zero stands in for a free end).
    const double A = p.left_bc.value_or(0.0);
    const double B = p.right_bc.value_or(0.0);
    Vector s(lay.size());
    for (int i = 0; i < lay.n_interior; ++i) {
      s[i] = A + (B - A) * (i + 1.0) / p.grid.k;
    }
    int at = lay.n_interior;
    if (lay.free_left) s[at++] = A;
    if (lay.free_right) s[at++] = B;
    starts.push_back(std::move(s));
  }
  for (int i = 0; i < cfg.n_starts; ++i) {
    Vector s(lay.size());
    for (int j = 0; j < lay.size(); ++j) {
      s[j] = rng.uniform(cfg.init_lo, cfg.init_hi);
    }
    starts.push_back(std::move(s));
  }

  std::vector<Vector> roots;
  std::vector<double> root_norms;
  int converged = 0;
  for (const Vector& start : starts) {
    Vector x = start;
    bool ok = false;
    for (int it = 0; it < cfg.max_iters; ++it) {
      const double rn = max_norm(residual(x));
      if (rn <= cfg.residual_tol) {
        ok = true;
        break;
      }
      const NewtonStepResult st = newton_step(residual, jac, x, rng);
      if (st.singular || !st.improved) break;  // failed or stalled start
      const double moved = max_norm(st.x - x);
      x = st.x;
      if (moved < cfg.step_tol * (1.0 + max_norm(x))) {
        ok = max_norm(residual(x)) <= cfg.residual_tol;
        break;
      }
    }
    if (!ok) continue;
    ++converged;
    roots.push_back(x);
    root_norms.push_back(max_norm(residual(x)));
  }
  if (roots.empty()) {
    throw SolveNoConvergence("solve: no start converged to a stationary point");
  }

  const std::vector<int> reps =
      dedupe_clusters(roots, root_norms, cfg.dedupe_tol);

  SolveReport report;
  report.n_starts_converged = converged;
  report.n_duplicates_merged = converged - static_cast<int>(reps.size());
  for (int idx : reps) {
    const Trajectory y = assemble(p, lay, roots[idx]);
    ExtremalCandidate c;
    c.trajectory = y;
    c.functional_value = evaluate_functional(p, y);
    c.el_residual_norm = max_norm(euler_lagrange_residual(p, y).values);
    const GridFunction lc = legendre_lhs(p, y);
    c.legendre_values = lc.values;
    c.legendre_verified = (lc.values.array() >= -kLegendreTol).all();
    report.candidates.push_back(std::move(c));
  }
  std::sort(report.candidates.begin(), report.candidates.end(),
            [](const ExtremalCandidate& a, const ExtremalCandidate& b) {
              if (a.functional_value != b.functional_value) {
                return a.functional_value < b.functional_value;
              }
              const auto& av = a.trajectory.values;
              const auto& bv = b.trajectory.values;
              for (int i = 0; i < av.size(); ++i) {
                if (av[i] != bv[i]) return av[i] < bv[i];
              }
              return false;
            });
  return report;
}

}  // namespace hfrac
