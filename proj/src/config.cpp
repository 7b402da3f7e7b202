#include "hfrac/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace hfrac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& val) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(val, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                      val + "'");
  }
  if (used != val.size()) {
    throw ConfigError("config: trailing characters in value for '" + key + "'");
  }
  return x;
}

}  // namespace

ProblemConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    }
    if (!kv.emplace(key, val).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
  }

  static const char* known[] = {"a", "b", "h", "k", "alpha", "beta",
                                "lagrangian", "left_bc", "right_bc",
                                "n_starts", "seed", "init_lo", "init_hi"};
  for (const auto& [key, val] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("config: unknown key '" + key + "'");
  }

  auto get = [&kv](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  ProblemConfig c;
  const auto ha = get("a"), hb = get("b"), hh = get("h"), hk = get("k");
  if (!ha || !hh) throw ConfigError("config: keys 'a' and 'h' are required");
  c.a = parse_number("a", *ha);
  c.h = parse_number("h", *hh);
  if (!(c.h > 0.0)) throw ConfigError("config: h must be positive");
  if (hb && hk) throw ConfigError("config: give either 'b' or 'k', not both");
  if (hb) {
    const double ratio = (parse_number("b", *hb) - c.a) / c.h;
    const double r = std::round(ratio);
    if (!(r >= 1.0) || std::abs(ratio - r) > 1e-9) {
      throw ConfigError("config: (b - a)/h must be a positive integer");
    }
    c.k = static_cast<int>(r);
  } else if (hk) {
    const double r = parse_number("k", *hk);
    if (r != std::round(r) || r < 1.0) {
      throw ConfigError("config: k must be a positive integer");
    }
    c.k = static_cast<int>(r);
  } else {
    throw ConfigError("config: one of 'b' or 'k' is required");
  }

  const auto hal = get("alpha");
  if (!hal) throw ConfigError("config: key 'alpha' is required");
  c.alpha = parse_number("alpha", *hal);
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
    throw ConfigError("config: alpha must lie in (0, 1]");
  }
  if (const auto v = get("beta")) {
    c.beta = parse_number("beta", *v);
    if (!(*c.beta > 0.0 && *c.beta <= 1.0)) {
      throw ConfigError("config: beta must lie in (0, 1]");
    }
  }

  const auto hl = get("lagrangian");
  if (!hl) throw ConfigError("config: key 'lagrangian' is required");
  c.lagrangian = *hl;
  try {
    const expr::Ast ast = expr::parse(c.lagrangian);
    if (!c.beta.has_value() && ast.uses(expr::VarId::W)) {
      throw ConfigError("config: 'beta' is required when the lagrangian uses w");
    }
  } catch (const expr::ParseError& e) {
    throw ConfigError(std::string("config: bad lagrangian: ") + e.what());
  }

  if (const auto v = get("left_bc")) c.left_bc = parse_number("left_bc", *v);
  if (const auto v = get("right_bc")) c.right_bc = parse_number("right_bc", *v);
  if (const auto v = get("n_starts")) {
    const double n = parse_number("n_starts", *v);
    if (n != std::round(n) || n < 1.0) {
      throw ConfigError("config: n_starts must be a positive integer");
    }
    c.n_starts = static_cast<int>(n);
  }
  if (const auto v = get("seed")) {
    const double s = parse_number("seed", *v);
    if (s != std::round(s) || s < 0.0) {
      throw ConfigError("config: seed must be a nonnegative integer");
    }
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (const auto v = get("init_lo")) c.init_lo = parse_number("init_lo", *v);
  if (const auto v = get("init_hi")) c.init_hi = parse_number("init_hi", *v);
  if (c.init_lo && c.init_hi && !(*c.init_lo < *c.init_hi)) {
    throw ConfigError("config: init_lo must be below init_hi");
  }
  return c;
}

ProblemConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  return parse_config(in);
}

VariationalProblem ProblemConfig::problem() const {
  return VariationalProblem(GridSpec(a, h, k),
                            FractionalOrders(alpha, beta.value_or(1.0)),
                            expr::parse(lagrangian), left_bc, right_bc);
}

SolverConfig ProblemConfig::solver_config() const {
  SolverConfig cfg;
  if (n_starts) cfg.n_starts = *n_starts;
  if (seed) cfg.seed = *seed;
  if (init_lo) cfg.init_lo = *init_lo;
  if (init_hi) cfg.init_hi = *init_hi;
  return cfg;
}

std::string format_cell(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace hfrac
