#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hfrac/config.hpp"
#include "hfrac/quadrature.hpp"
#include "hfrac/solver.hpp"

namespace {

constexpr int kExitSolveFailed = 2;
constexpr int kExitUsage = 64;

using namespace hfrac;

// ----------------------------------------------------------------- solve

void write_candidates_csv(const std::string& path, const GridSpec& grid,
                          const std::vector<ExtremalCandidate>& cands) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "t";
  for (std::size_t c = 0; c < cands.size(); ++c) out << ",y" << c + 1;
  out << "\n";
  for (int i = 0; i <= grid.k; ++i) {
    out << format_cell(grid.point(i));
    for (const auto& c : cands) out << "," << format_cell(c.trajectory.values[i]);
    out << "\n";
  }
}

int cmd_solve(const std::string& config_path, const std::string& output_path,
              std::optional<std::uint64_t> seed_override,
              std::optional<int> starts_override) {
  ProblemConfig pc;
  VariationalProblem* ptr = nullptr;
  try {
    pc = parse_config_file(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  VariationalProblem p = pc.problem();
  (void)ptr;
  SolverConfig cfg = pc.solver_config();
  if (seed_override) cfg.seed = *seed_override;
  if (starts_override) cfg.n_starts = *starts_override;

  SolveReport report;
  try {
    report = solve(p, cfg);
  } catch (const SolveNoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolveFailed;
  }

  std::printf("# %-4s", "id");
  for (int i = 1; i < p.grid.k; ++i) {
    char label[32];
    std::snprintf(label, sizeof label, "y(%.6g)", p.grid.point(i));
    std::printf(" %14s", label);
  }
  std::printf(" %16s  %s\n", "functional", "legendre");
  for (std::size_t c = 0; c < report.candidates.size(); ++c) {
    const auto& cand = report.candidates[c];
    std::printf("  %-4zu", c + 1);
    for (int i = 1; i < p.grid.k; ++i) {
      std::printf(" %14.7f", cand.trajectory.values[i]);
    }
    std::printf(" %16.7f  %s\n", cand.functional_value,
                cand.legendre_verified ? "verified" : "not-verified");
  }
  std::printf("# starts converged: %d, duplicates merged: %d\n",
              report.n_starts_converged, report.n_duplicates_merged);
  if (!output_path.empty()) {
    write_candidates_csv(output_path, p.grid, report.candidates);
  }
  return report.candidates.empty() ? kExitSolveFailed : 0;
}

// ----------------------------------------------------------------- check

struct CheckOutcome {
  std::string name;
  double residual;
  double tol;
};

int cmd_check(std::uint64_t seed, int trials, int kmax, bool inject_error) {
  UniformRng rng(seed);
  auto rand_grid = [&](int kmin) {
    const double hs[] = {0.1, 0.25, 1.0};
    const double h = hs[rng.next_u64() % 3];
    const int k = kmin + static_cast<int>(rng.next_u64() %
                                          static_cast<std::uint64_t>(
                                              std::max(1, kmax - kmin + 1)));
    return GridSpec(rng.uniform(-1.0, 1.0), h, k);
  };
  auto rand_values = [&](int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(-2.0, 2.0);
    return v;
  };

  std::vector<CheckOutcome> results;
  const double corrupt = inject_error ? 1e-6 : 0.0;

  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const GridSpec grid = rand_grid(3);
    const GridFunction f(grid.kappa(), rand_values(grid.k));
    const GridFunction g(grid, rand_values(grid.npoints()));
    const double alpha = rng.uniform(0.02, 1.0);
    worst = std::max(worst,
                     summation_by_parts_residual(f, g, alpha) + corrupt);
  }
  results.push_back({"summation-by-parts", worst, 1e-10});

  double wl = 0.0, wr = 0.0;
  for (int i = 0; i < trials; ++i) {
    const GridSpec grid = rand_grid(2);
    const GridFunction f(grid, rand_values(grid.npoints()));
    const double nu = rng.uniform(0.0, 1.0);
    wl = std::max(wl, left_shift_identity_residual(f, nu));
    wr = std::max(wr, right_shift_identity_residual(f, nu));
  }
  results.push_back({"left-shift-identity", wl, 1e-10});
  results.push_back({"right-shift-identity", wr, 1e-10});

  double we = 0.0;
  for (int i = 0; i < trials; ++i) {
    const GridSpec grid = rand_grid(3);
    const GridFunction f(grid.kappa(), rand_values(grid.k));
    const GridFunction kf(grid.kappa().kappa(), rand_values(grid.k - 1));
    double c[6];
    for (double& x : c) x = rng.uniform(-1.0, 1.0);
    const auto g2 = [&c](double t, double s) {
      return c[0] + c[1] * t + c[2] * s + c[3] * t * s + c[4] * t * t +
             c[5] * s * s;
    };
    we = std::max(we, exchange_lemma_residual(f, kf, g2));
  }
  results.push_back({"exchange-lemma", we, 1e-12});

  // Gradient and curvature consistency of the variational assembly against
  // finite differences of the plain functional.
  double wg = 0.0, wh = 0.0;
  for (int i = 0; i < trials / 2 + 1; ++i) {
    const GridSpec grid = rand_grid(3);
    const double alpha = rng.uniform(0.05, 1.0);
    const double beta = rng.uniform(0.05, 1.0);
    std::ostringstream L;
    L << format_cell(rng.uniform(-1.0, 1.0)) << "*u^2 + "
      << format_cell(rng.uniform(-1.0, 1.0)) << "*u*v + "
      << format_cell(rng.uniform(-1.0, 1.0)) << "*v^2 + "
      << format_cell(rng.uniform(-1.0, 1.0)) << "*w^2 + "
      << format_cell(rng.uniform(-1.0, 1.0)) << "*v^3 + "
      << format_cell(rng.uniform(-1.0, 1.0)) << "*v*w + "
      << format_cell(rng.uniform(-1.0, 1.0)) << "*u";
    const VariationalProblem p(grid, FractionalOrders(alpha, beta),
                               expr::parse(L.str()), 0.0, 0.0);
    Trajectory y(grid, rand_values(grid.npoints()));
    const GridFunction R = euler_lagrange_residual(p, y);
    const GridFunction LC = legendre_lhs(p, y);
    for (int m = 0; m + 1 < grid.k; ++m) {
      {
        const double eps = 1e-6;
        Trajectory yp = y, ym = y;
        yp.values[m + 1] += eps;
        ym.values[m + 1] -= eps;
        const double fd = (evaluate_functional(p, yp) -
                           evaluate_functional(p, ym)) / (2.0 * eps);
        const double want = grid.h * R.values[m];
        wg = std::max(wg, std::abs(fd - want) / (1.0 + std::abs(want)));
      }
      {
        const double eps = 1e-4;
        Trajectory yp = y, ym = y;
        yp.values[m + 1] += eps * grid.h;
        ym.values[m + 1] -= eps * grid.h;
        const double f0 = evaluate_functional(p, y);
        const double phi2 = (evaluate_functional(p, yp) - 2.0 * f0 +
                             evaluate_functional(p, ym)) / (eps * eps);
        const double want = grid.h * LC.values[m];
        wh = std::max(wh, std::abs(phi2 - want) / (1.0 + std::abs(want)));
      }
    }
  }
  results.push_back({"gradient-consistency", wg, 1e-5});
  results.push_back({"hessian-consistency", wh, 1e-3});

  bool all_ok = true;
  for (const auto& r : results) {
    const bool ok = r.residual < r.tol;
    all_ok = all_ok && ok;
    std::printf("%-22s max residual %.3e  (tolerance %.0e)  %s\n",
                r.name.c_str(), r.residual, r.tol, ok ? "ok" : "FAIL");
  }
  return all_ok ? 0 : 1;
}

// ----------------------------------------------------------------- sweep

struct SweepCase {
  std::string lagrangian;
  double alpha = 0.75;
  std::optional<double> beta;
  double a = 0.0, b = 1.0;
  double left = 0.0, right = 1.0;
  bool has_reference = false;
  std::function<double(double)> reference;
};

SweepCase sweep_case(const std::string& example) {
  SweepCase sc;
  if (example == "ex1") {
    sc.lagrangian = "0.5*v^2";
    sc.alpha = 0.75;
    sc.left = 0.0;
    sc.right = 1.0;
    sc.has_reference = true;
    sc.reference = [](double t) {
      return t <= 0.0 ? 0.0 : reference_quadrature_ex1(t);
    };
    return sc;
  }
  if (example == "ex2") {
    sc.lagrangian = "0.5*v^2 - u";
    sc.alpha = 1.0;
    sc.left = 0.0;
    sc.right = 0.0;
    sc.has_reference = true;
    sc.reference = [](double t) { return 0.5 * t * (1.0 - t); };
    return sc;
  }
  if (example == "ex3") {
    sc.lagrangian = "v^3 + 1*w^2";
    sc.alpha = 0.8;
    sc.beta = 0.5;
    sc.left = 0.0;
    sc.right = 1.0;
    return sc;
  }
  throw ConfigError("unknown example id '" + example + "'");
}

// Picks the trajectory to report for a sweep point: the least-functional
// candidate that passes the second-order screen, else the least-functional
// one overall.
const ExtremalCandidate& sweep_pick(const SolveReport& r) {
  for (const auto& c : r.candidates) {
    if (c.legendre_verified) return c;
  }
  return r.candidates.front();
}

int cmd_sweep(const std::string& example, std::vector<double> h_list,
              std::vector<double> alpha_list, const std::string& output_path,
              std::uint64_t seed, int starts) {
  SweepCase sc;
  try {
    sc = sweep_case(example);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (h_list.empty() == alpha_list.empty()) {
    std::cerr << "error: give exactly one of --h-list / --alpha-list\n";
    return kExitUsage;
  }
  const bool over_h = !h_list.empty();
  const std::vector<double>& sweep = over_h ? h_list : alpha_list;
  const double fixed_h = over_h ? 0.0 : 0.05;

  struct Column {
    std::string label;
    GridSpec grid;
    Vector y;
    double max_dev = 0.0;
  };
  std::vector<Column> cols;
  for (double s : sweep) {
    const double h = over_h ? s : fixed_h;
    const double alpha = over_h ? sc.alpha : s;
    const double ratio = (sc.b - sc.a) / h;
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
      std::cerr << "error: (b - a)/h is not an integer for h = " << h << "\n";
      return kExitUsage;
    }
    GridSpec grid(sc.a, h, static_cast<int>(std::round(ratio)));
    VariationalProblem p(grid,
                         FractionalOrders(alpha, sc.beta.value_or(1.0)),
                         expr::parse(sc.lagrangian), sc.left, sc.right);
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.n_starts = starts;
    SolveReport report;
    try {
      report = solve(p, cfg);
    } catch (const SolveNoConvergence& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitSolveFailed;
    }
    Column col;
    col.label = over_h ? ("h=" + format_cell(h)) : ("alpha=" + format_cell(alpha));
    col.grid = grid;
    col.y = sweep_pick(report).trajectory.values;
    if (sc.has_reference) {
      try {
        for (int i = 0; i <= grid.k; ++i) {
          col.max_dev = std::max(
              col.max_dev, std::abs(col.y[i] - sc.reference(grid.point(i))));
        }
      } catch (const QuadratureError& e) {
        std::cerr << "error: reference quadrature failed: " << e.what() << "\n";
        return kExitSolveFailed;
      }
    }
    cols.push_back(std::move(col));
  }

  // Row grid: the finest h (largest k over a shared [a, b]).
  const Column* finest =
      &*std::max_element(cols.begin(), cols.end(),
                         [](const Column& x, const Column& y) {
                           return x.grid.k < y.grid.k;
                         });
  std::ofstream out(output_path);
  if (!out) {
    std::cerr << "error: cannot write '" << output_path << "'\n";
    return kExitUsage;
  }
  out << "t";
  for (const auto& c : cols) out << ",y[" << c.label << "]";
  if (sc.has_reference) {
    for (const auto& c : cols) out << ",dev[" << c.label << "]";
    out << ",reference";
  }
  out << "\n";
  for (int i = 0; i <= finest->grid.k; ++i) {
    const double t = finest->grid.point(i);
    out << format_cell(t);
    auto cell_index = [t](const Column& c) -> int {
      const double x = (t - c.grid.a) / c.grid.h;
      const double r = std::round(x);
      if (std::abs(x - r) > 1e-9 || r < 0 || r > c.grid.k) return -1;
      return static_cast<int>(r);
    };
    for (const auto& c : cols) {
      const int j = cell_index(c);
      out << ",";
      if (j >= 0) out << format_cell(c.y[j]);
    }
    if (sc.has_reference) {
      const double ref = sc.reference(t);
      for (const auto& c : cols) {
        const int j = cell_index(c);
        out << ",";
        if (j >= 0) out << format_cell(std::abs(c.y[j] - ref));
      }
      out << "," << format_cell(ref);
    }
    out << "\n";
  }
  for (const auto& c : cols) {
    if (sc.has_reference) {
      std::printf("%s max_deviation=%.12e\n", c.label.c_str(), c.max_dev);
    } else {
      std::printf("%s solved\n", c.label.c_str());
    }
  }
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete fractional variational problems on the step-h lattice"};
  app.require_subcommand(1);

  std::string config_path, output_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<int> starts_override;
  auto* s_solve = app.add_subcommand(
      "solve", "Find all stationary trajectories of a configured problem");
  s_solve->add_option("--config", config_path, "problem config file")
      ->required();
  s_solve->add_option("--output", output_path, "trajectory CSV path")
      ->required();
  std::uint64_t seed_val = 0;
  int starts_val = 0;
  auto* opt_seed = s_solve->add_option("--seed", seed_val, "RNG seed override");
  auto* opt_starts =
      s_solve->add_option("--starts", starts_val, "random start count override");

  std::uint64_t check_seed = 20250809;
  int check_trials = 100;
  int check_kmax = 16;
  bool inject_error = false;
  auto* s_check = app.add_subcommand(
      "check", "Run randomized self-checks of the operator identities");
  s_check->add_option("--seed", check_seed, "RNG seed");
  s_check->add_option("--trials", check_trials, "instances per identity");
  s_check->add_option("--kmax", check_kmax, "largest grid interval count");
  s_check->add_flag("--inject-error", inject_error,
                    "perturb one identity to prove the check detects it");

  std::string example, h_list_text, alpha_list_text, sweep_output;
  std::uint64_t sweep_seed = 1;
  int sweep_starts = 60;
  auto* s_sweep = app.add_subcommand(
      "sweep", "Solve a shipped example across h or alpha values");
  s_sweep->add_option("--example", example, "ex1, ex2 or ex3")->required();
  s_sweep->add_option("--h-list", h_list_text, "comma-separated h values");
  s_sweep->add_option("--alpha-list", alpha_list_text,
                      "comma-separated alpha values");
  s_sweep->add_option("--output", sweep_output, "CSV path")->required();
  s_sweep->add_option("--seed", sweep_seed, "RNG seed");
  s_sweep->add_option("--starts", sweep_starts, "random start count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (s_solve->parsed()) {
      if (opt_seed->count() > 0) seed_override = seed_val;
      if (opt_starts->count() > 0) starts_override = starts_val;
      return cmd_solve(config_path, output_path, seed_override,
                       starts_override);
    }
    if (s_check->parsed()) {
      return cmd_check(check_seed, check_trials, check_kmax, inject_error);
    }
    if (s_sweep->parsed()) {
      return cmd_sweep(example, parse_list(h_list_text),
                       parse_list(alpha_list_text), sweep_output, sweep_seed,
                       sweep_starts);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolveFailed;
  }
  return kExitUsage;
}
