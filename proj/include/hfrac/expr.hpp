#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "hfrac/special.hpp"

namespace hfrac {
namespace expr {

/// Parse failure; pos is the byte offset into the source text.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos_)
      : Error(msg + " (at position " + std::to_string(pos_) + ")"),
        pos(pos_) {}
  std::size_t pos;
};

/// Evaluation hit a point outside the expression's domain (log of a
/// nonpositive number, division by zero, ...). Carries the offending
/// subexpression in printed form.
struct EvalDomainError : Error {
  EvalDomainError(const std::string& msg, std::string subexpr_)
      : Error(msg + " in subexpression `" + subexpr_ + "`"),
        subexpr(std::move(subexpr_)) {}
  std::string subexpr;
};

enum class NodeKind { Number, Variable, Unary, Binary, Call };
enum class VarId { T, U, V, W };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class FuncId { Sin, Cos, Exp, Log, Sqrt, Abs };

struct Node {
  NodeKind kind;
  double number = 0.0;
  VarId var = VarId::T;
  BinOp op = BinOp::Add;
  FuncId fn = FuncId::Sin;
  std::shared_ptr<const Node> lhs, rhs;  // rhs only for Binary
};

/// Immutable expression tree over variables {t, u, v, w}. Shareable across
/// threads without synchronization.
class Ast {
 public:
  Ast() = default;
  explicit Ast(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  const Node* root() const { return root_.get(); }
  bool empty() const { return root_ == nullptr; }

  /// True if the variable occurs anywhere in the tree.
  bool uses(VarId v) const;

 private:
  std::shared_ptr<const Node> root_;
};

/// Grammar: identifiers [a-z]+, decimal literals with optional exponent,
/// operators + - * / ^ (with ^ right-associative and binding tighter than
/// unary minus), parentheses, and single-argument calls of
/// sin, cos, exp, log, sqrt, abs. Variables are exactly {t, u, v, w}.
Ast parse(const std::string& src);

/// Minimal-parenthesis rendering; parse(print(a)) is structurally equal to a.
std::string print(const Ast& ast);
std::string print(const Node* n);

bool structurally_equal(const Ast& a, const Ast& b);

/// Value with exact first and second partials in (u, v, w); t is passive.
/// Only the upper Hessian triangle is stored; symmetry is by construction.
struct LagrangianJet {
  double value = 0.0;
  double Lu = 0.0, Lv = 0.0, Lw = 0.0;
  double Luu = 0.0, Luv = 0.0, Luw = 0.0, Lvv = 0.0, Lvw = 0.0, Lww = 0.0;
};

/// Plain evaluation, no derivatives.
double eval(const Ast& ast, double t, double u, double v, double w);

/// One forward pass carrying value, three first-order and six second-order
/// coefficients through the tree. abs is differentiated with subgradient 0
/// at the kink. Non-integer powers require a positive base; integer
/// exponents are specialized and accept any base.
LagrangianJet eval_jet(const Ast& ast, double t, double u, double v, double w);

}  // namespace expr
}  // namespace hfrac
