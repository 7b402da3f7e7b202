#include "hfrac/variational.hpp"

#include <cmath>

namespace hfrac {

namespace {

void check_domain(const VariationalProblem& p, const Trajectory& y) {
  if (!(y.grid == p.grid) || y.offset != 0.0) {
    throw GridError("trajectory does not live on the problem grid");
  }
}

}  // namespace

TrajectoryJets jets_along(const VariationalProblem& p, const Trajectory& y) {
  check_domain(p, y);
  const int n = p.grid.k;  // points of the once-truncated grid
  const GridFunction v = left_fractional_difference(y, p.orders.alpha);
  const GridFunction w = right_fractional_difference(y, p.orders.beta);
  TrajectoryJets J;
  for (Vector* m : {&J.value, &J.Lu, &J.Lv, &J.Lw, &J.Luu, &J.Luv, &J.Luw,
                    &J.Lvv, &J.Lvw, &J.Lww}) {
    m->resize(n);
  }
  J.v = v.values;
  J.w = w.values;
  for (int i = 0; i < n; ++i) {
    const double t = p.grid.point(i);
    try {
      const expr::LagrangianJet j =
          expr::eval_jet(p.lagrangian, t, y.values[i + 1], v.values[i],
                         w.values[i]);
      J.value[i] = j.value;
      J.Lu[i] = j.Lu;
      J.Lv[i] = j.Lv;
      J.Lw[i] = j.Lw;
      J.Luu[i] = j.Luu;
      J.Luv[i] = j.Luv;
      J.Luw[i] = j.Luw;
      J.Lvv[i] = j.Lvv;
      J.Lvw[i] = j.Lvw;
      J.Lww[i] = j.Lww;
    } catch (const expr::EvalDomainError& e) {
      throw FunctionalDomainError(e.what(), t);
    }
  }
  return J;
}

double evaluate_functional(const VariationalProblem& p, const Trajectory& y) {
  check_domain(p, y);
  const int n = p.grid.k;
  const GridFunction v = left_fractional_difference(y, p.orders.alpha);
  const GridFunction w = right_fractional_difference(y, p.orders.beta);
  KahanSum s;
  for (int i = 0; i < n; ++i) {
    const double t = p.grid.point(i);
    try {
      s.add(expr::eval(p.lagrangian, t, y.values[i + 1], v.values[i],
                       w.values[i]));
    } catch (const expr::EvalDomainError& e) {
      throw FunctionalDomainError(e.what(), t);
    }
  }
  return s.value() * p.grid.h;
}

GridFunction euler_lagrange_residual(const VariationalProblem& p,
                                     const Trajectory& y) {
  const TrajectoryJets J = jets_along(p, y);
  const GridSpec trunc = p.grid.kappa();
  const GridFunction Lv(trunc, J.Lv);
  const GridFunction Lw(trunc, J.Lw);
  const GridFunction rv = right_fractional_difference(Lv, p.orders.alpha);
  const GridFunction lw = left_fractional_difference(Lw, p.orders.beta);
  Vector out(trunc.k);
  for (int m = 0; m < trunc.k; ++m) {
    out[m] = J.Lu[m] + rv.values[m] + lw.values[m];
  }
  return GridFunction(trunc.kappa(), std::move(out));
}

double natural_bc_left_residual(const VariationalProblem& p,
                                const Trajectory& y) {
  if (p.left_bc.has_value()) {
    throw Error("natural_bc_left_residual: left endpoint is pinned");
  }
  const TrajectoryJets J = jets_along(p, y);
  const double h = p.grid.h;
  const double g = p.orders.gamma_order();
  const double nu = p.orders.nu_order();
  double acc = -std::pow(h, g) * J.Lv[0] + std::pow(h, nu) * J.Lw[0];
  if (g > 0.0) {
    KahanSum s;
    for (int i = 0; i < p.grid.k; ++i) {
      double ker = h_factorial_scaled(i + g, g - 1.0, h);
      if (i >= 1) ker -= h_factorial_scaled(i - 1.0 + g, g - 1.0, h);
      s.add(ker * J.Lv[i]);
    }
    acc += g / gamma_fn(g + 1.0) * s.value() * h;
  }
  return acc;
}

double natural_bc_right_residual(const VariationalProblem& p,
                                 const Trajectory& y) {
  if (p.right_bc.has_value()) {
    throw Error("natural_bc_right_residual: right endpoint is pinned");
  }
  const TrajectoryJets J = jets_along(p, y);
  const int k = p.grid.k;
  const double h = p.grid.h;
  const double g = p.orders.gamma_order();
  const double nu = p.orders.nu_order();
  double acc = h * J.Lu[k - 1] + std::pow(h, g) * J.Lv[k - 1] -
               std::pow(h, nu) * J.Lw[k - 1];
  if (nu > 0.0) {
    KahanSum s;
    for (int i = 0; i < k; ++i) {
      double ker = h_factorial_scaled(k - i - 1.0 + nu, nu - 1.0, h);
      if (i <= k - 2) ker -= h_factorial_scaled(k - i - 2.0 + nu, nu - 1.0, h);
      s.add(ker * J.Lw[i]);
    }
    acc += nu / gamma_fn(nu + 1.0) * s.value() * h;
  }
  return acc;
}

GridFunction legendre_lhs(const VariationalProblem& p, const Trajectory& y) {
  const TrajectoryJets J = jets_along(p, y);
  const int k = p.grid.k;
  const double h = p.grid.h;
  const double g = p.orders.gamma_order();
  const double nu = p.orders.nu_order();
  const double cw = nu > 0.0 ? nu * (1.0 - nu) / gamma_fn(nu + 1.0) : 0.0;
  const double cv = g > 0.0 ? g * (g - 1.0) / gamma_fn(g + 1.0) : 0.0;
  Vector out(k - 1);
  for (int m = 0; m + 1 < k; ++m) {
    KahanSum s;
    s.add(h * h * J.Luu[m]);
    s.add(2.0 * std::pow(h, g + 1.0) * J.Luv[m]);
    s.add(2.0 * std::pow(h, nu + 1.0) * (nu - 1.0) * J.Luw[m]);
    s.add(std::pow(h, 2.0 * g) * (g - 1.0) * (g - 1.0) * J.Lvv[m + 1]);
    s.add(2.0 * std::pow(h, nu + g) * (g - 1.0) * J.Lvw[m + 1]);
    s.add(2.0 * std::pow(h, nu + g) * (nu - 1.0) * J.Lvw[m]);
    s.add(std::pow(h, 2.0 * nu) * (nu - 1.0) * (nu - 1.0) * J.Lww[m]);
    s.add(std::pow(h, 2.0 * nu) * J.Lww[m + 1]);
    s.add(std::pow(h, 2.0 * g) * J.Lvv[m]);
    if (cw != 0.0) {
      for (int j = 0; j < m; ++j) {
        const double ker =
            cw * h_factorial_scaled(m - j - 1.0 + nu, nu - 2.0, h);
        s.add(h * h * h * J.Lww[j] * ker * ker * h);
      }
    }
    if (cv != 0.0) {
      for (int j = m + 2; j < k; ++j) {
        const double ker =
            cv * h_factorial_scaled(j - m - 2.0 + g, g - 2.0, h);
        s.add(h * h * h * J.Lvv[j] * ker * ker * h);
      }
    }
    out[m] = s.value();
  }
  return GridFunction(p.grid.kappa().kappa(), std::move(out));
}

double trajectory_norm(const VariationalProblem& p, const Trajectory& f) {
  check_domain(p, f);
  const GridFunction v = left_fractional_difference(f, p.orders.alpha);
  const GridFunction w = right_fractional_difference(f, p.orders.beta);
  double msig = 0.0;
  for (int i = 0; i < p.grid.k; ++i) {
    msig = std::max(msig, std::abs(f.values[i + 1]));
  }
  return msig + v.values.cwiseAbs().maxCoeff() + w.values.cwiseAbs().maxCoeff();
}

double summation_by_parts_residual(const GridFunction& f,
                                   const GridFunction& g, double alpha) {
  if (f.grid.k != g.grid.k - 1 || f.grid.a != g.grid.a ||
      f.grid.h != g.grid.h) {
    throw GridError("summation_by_parts_residual: f must live on g's truncation");
  }
  const int K = g.grid.k;  // g has points t_0..t_K, f has t_0..t_{K-1}
  const double h = g.grid.h;
  const double ga = 1.0 - alpha;

  const GridFunction dg = left_fractional_difference(g, alpha);
  KahanSum lhs;
  for (int i = 0; i < K; ++i) lhs.add(f.values[i] * dg.values[i]);

  const GridFunction df = right_fractional_difference(f, alpha);
  KahanSum rhs;
  for (int m = 0; m + 1 < K; ++m) rhs.add(df.values[m] * g.values[m + 1]);
  double right = rhs.value() * h +
                 std::pow(h, ga) * (f.values[K - 1] * g.values[K] -
                                    f.values[0] * g.values[0]);
  if (ga > 0.0) {
    KahanSum tail;
    for (int i = 0; i < K; ++i) {
      double ker = h_factorial_scaled(i + ga, ga - 1.0, h);
      if (i >= 1) ker -= h_factorial_scaled(i - 1.0 + ga, ga - 1.0, h);
      tail.add(ker * f.values[i]);
    }
    right += ga / gamma_fn(ga + 1.0) * g.values[0] * tail.value() * h;
  }
  return std::abs(lhs.value() * h - right);
}

}  // namespace hfrac
