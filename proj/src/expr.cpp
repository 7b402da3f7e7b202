#include "hfrac/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace hfrac {
namespace expr {

namespace {

// ---------------------------------------------------------------- tokenizer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen,
                 RParen, Comma, End };

struct Token {
  Tok kind;
  double number = 0.0;
  std::string ident;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[i_];
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++i_; return;
      case '-': tok_.kind = Tok::Minus; ++i_; return;
      case '*': tok_.kind = Tok::Star; ++i_; return;
      case '/': tok_.kind = Tok::Slash; ++i_; return;
      case '^': tok_.kind = Tok::Caret; ++i_; return;
      case '(': tok_.kind = Tok::LParen; ++i_; return;
      case ')': tok_.kind = Tok::RParen; ++i_; return;
      case ',': tok_.kind = Tok::Comma; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = src_.c_str() + i_;
      char* end = nullptr;
      const double val = std::strtod(start, &end);
      if (end == start) throw ParseError("invalid numeric literal", i_);
      tok_.kind = Tok::Number;
      tok_.number = val;
      i_ += static_cast<std::size_t>(end - start);
      return;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i_;
      while (j < src_.size() && src_[j] >= 'a' && src_[j] <= 'z') ++j;
      tok_.kind = Tok::Ident;
      tok_.ident = src_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token tok_;
};

// ------------------------------------------------------------------ parser

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

NodePtr make_var(VarId v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->var = v;
  return n;
}

NodePtr make_unary(NodePtr inner) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Unary;
  n->lhs = std::move(inner);
  return n;
}

NodePtr make_binary(BinOp op, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

NodePtr make_call(FuncId fn, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->fn = fn;
  n->lhs = std::move(arg);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  NodePtr parse_all() {
    NodePtr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) throw ParseError("unexpected trailing input", t.pos);
    return e;
  }

 private:
  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      lex_.take();
      NodePtr rhs = parse_product();
      lhs = make_binary(k == Tok::Plus ? BinOp::Add : BinOp::Sub,
                        std::move(lhs), std::move(rhs));
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      lex_.take();
      NodePtr rhs = parse_unary();
      lhs = make_binary(k == Tok::Star ? BinOp::Mul : BinOp::Div,
                        std::move(lhs), std::move(rhs));
    }
  }

  NodePtr parse_unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return make_unary(parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      // Right-associative; the exponent may start with a unary minus.
      NodePtr exp = parse_unary_in_power();
      return make_binary(BinOp::Pow, std::move(base), std::move(exp));
    }
    return base;
  }

  NodePtr parse_unary_in_power() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return make_unary(parse_unary_in_power());
    }
    return parse_power();
  }

  NodePtr parse_primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number:
        return make_number(t.number);
      case Tok::LParen: {
        NodePtr e = parse_sum();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      case Tok::Ident:
        return parse_ident(std::move(t));
      default:
        throw ParseError("expected a number, variable, function call or '('",
                         t.pos);
    }
  }

  NodePtr parse_ident(Token t) {
    static const std::array<std::pair<const char*, FuncId>, 6> kFuncs = {{
        {"sin", FuncId::Sin}, {"cos", FuncId::Cos}, {"exp", FuncId::Exp},
        {"log", FuncId::Log}, {"sqrt", FuncId::Sqrt}, {"abs", FuncId::Abs},
    }};
    if (lex_.peek().kind == Tok::LParen) {
      for (const auto& [name, id] : kFuncs) {
        if (t.ident == name) {
          lex_.take();  // '('
          NodePtr arg = parse_sum();
          if (lex_.peek().kind == Tok::Comma) {
            throw ParseError("function '" + t.ident + "' takes one argument",
                             lex_.peek().pos);
          }
          expect(Tok::RParen, "expected ')' after function argument");
          return make_call(id, std::move(arg));
        }
      }
      throw ParseError("unknown function '" + t.ident + "'", t.pos);
    }
    if (t.ident == "t") return make_var(VarId::T);
    if (t.ident == "u") return make_var(VarId::U);
    if (t.ident == "v") return make_var(VarId::V);
    if (t.ident == "w") return make_var(VarId::W);
    throw ParseError("unknown identifier '" + t.ident + "'", t.pos);
  }

  void expect(Tok k, const char* msg) {
    const Token& t = lex_.peek();
    if (t.kind != k) throw ParseError(msg, t.pos);
    lex_.take();
  }

  Lexer lex_;
};

// ----------------------------------------------------------------- printing

int precedence(const Node* n) {
  switch (n->kind) {
    case NodeKind::Binary:
      switch (n->op) {
        case BinOp::Add:
        case BinOp::Sub: return 1;
        case BinOp::Mul:
        case BinOp::Div: return 2;
        case BinOp::Pow: return 4;
      }
      return 0;
    case NodeKind::Unary: return 3;
    default: return 5;  // atoms never need parentheses
  }
}

const char* fn_name(FuncId f) {
  switch (f) {
    case FuncId::Sin: return "sin";
    case FuncId::Cos: return "cos";
    case FuncId::Exp: return "exp";
    case FuncId::Log: return "log";
    case FuncId::Sqrt: return "sqrt";
    case FuncId::Abs: return "abs";
  }
  return "?";
}

void print_rec(const Node* n, std::string& out) {
  auto wrap = [&out](const Node* child, bool need) {
    if (need) out += '(';
    print_rec(child, out);
    if (need) out += ')';
  };
  switch (n->kind) {
    case NodeKind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n->number);
      out += buf;
      return;
    }
    case NodeKind::Variable:
      out += "tuvw"[static_cast<int>(n->var)];
      return;
    case NodeKind::Unary:
      out += '-';
      wrap(n->lhs.get(), precedence(n->lhs.get()) < 3);
      return;
    case NodeKind::Call:
      out += fn_name(n->fn);
      out += '(';
      print_rec(n->lhs.get(), out);
      out += ')';
      return;
    case NodeKind::Binary: {
      const int p = precedence(n);
      const char* ops[] = {"+", "-", "*", "/", "^"};
      // Left child of a left-assoc op keeps equal precedence unwrapped;
      // right child needs a wrap on ties (a-(b-c), a/(b/c)). Pow is the
      // mirror case.
      const bool powOp = n->op == BinOp::Pow;
      wrap(n->lhs.get(), precedence(n->lhs.get()) < p + (powOp ? 1 : 0));
      out += ops[static_cast<int>(n->op)];
      wrap(n->rhs.get(), precedence(n->rhs.get()) < p + (powOp ? 0 : 1));
      return;
    }
  }
}

// --------------------------------------------------------- jet arithmetic

struct Jet {
  double v = 0.0;
  std::array<double, 3> g{};   // d/du, d/dv, d/dw
  std::array<double, 6> H{};   // uu, uv, uw, vv, vw, ww
};

Jet constant(double c) {
  Jet j;
  j.v = c;
  return j;
}

Jet seed(VarId var, double value) {
  Jet j;
  j.v = value;
  switch (var) {
    case VarId::U: j.g[0] = 1.0; break;
    case VarId::V: j.g[1] = 1.0; break;
    case VarId::W: j.g[2] = 1.0; break;
    case VarId::T: break;
  }
  return j;
}

constexpr int kPairI[6] = {0, 0, 0, 1, 1, 2};
constexpr int kPairJ[6] = {0, 1, 2, 1, 2, 2};

Jet add(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v + b.v;
  for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int i = 0; i < 6; ++i) r.H[i] = a.H[i] + b.H[i];
  return r;
}

Jet sub(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v - b.v;
  for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] - b.g[i];
  for (int i = 0; i < 6; ++i) r.H[i] = a.H[i] - b.H[i];
  return r;
}

Jet neg(const Jet& a) {
  Jet r;
  r.v = -a.v;
  for (int i = 0; i < 3; ++i) r.g[i] = -a.g[i];
  for (int i = 0; i < 6; ++i) r.H[i] = -a.H[i];
  return r;
}

Jet mul(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int p = 0; p < 6; ++p) {
    const int i = kPairI[p], j = kPairJ[p];
    r.H[p] = a.H[p] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.H[p];
  }
  return r;
}

// phi applied to a: value f0, first derivative f1, second derivative f2.
Jet chain(const Jet& a, double f0, double f1, double f2) {
  Jet r;
  r.v = f0;
  for (int i = 0; i < 3; ++i) r.g[i] = f1 * a.g[i];
  for (int p = 0; p < 6; ++p) {
    const int i = kPairI[p], j = kPairJ[p];
    r.H[p] = f2 * a.g[i] * a.g[j] + f1 * a.H[p];
  }
  return r;
}

bool is_constant(const Jet& a) {
  for (double x : a.g) if (x != 0.0) return false;
  for (double x : a.H) if (x != 0.0) return false;
  return true;
}

// ------------------------------------------------------------ evaluation

struct Point {
  double t, u, v, w;
};

[[noreturn]] void domain_fail(const char* msg, const Node* n) {
  throw EvalDomainError(msg, print(n));
}

Jet powi(const Jet& a, long n, const Node* site) {
  if (n == 0) return constant(1.0);
  if (a.v == 0.0 && n < 0) domain_fail("zero raised to a negative power", site);
  const double f0 = std::pow(a.v, static_cast<double>(n));
  const double f1 = n * std::pow(a.v, static_cast<double>(n - 1));
  const double f2 = (n - 1) == 0
                        ? 0.0
                        : static_cast<double>(n) * (n - 1) *
                              std::pow(a.v, static_cast<double>(n - 2));
  return chain(a, f0, f1, f2);
}

Jet eval_node(const Node* n, const Point& p) {
  switch (n->kind) {
    case NodeKind::Number:
      return constant(n->number);
    case NodeKind::Variable:
      switch (n->var) {
        case VarId::T: return constant(p.t);
        case VarId::U: return seed(VarId::U, p.u);
        case VarId::V: return seed(VarId::V, p.v);
        case VarId::W: return seed(VarId::W, p.w);
      }
      return constant(0.0);
    case NodeKind::Unary:
      return neg(eval_node(n->lhs.get(), p));
    case NodeKind::Call: {
      const Jet a = eval_node(n->lhs.get(), p);
      switch (n->fn) {
        case FuncId::Sin: return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
        case FuncId::Cos: return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
        case FuncId::Exp: {
          const double e = std::exp(a.v);
          return chain(a, e, e, e);
        }
        case FuncId::Log:
          if (a.v <= 0.0) domain_fail("log of a nonpositive value", n);
          return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
        case FuncId::Sqrt: {
          if (a.v < 0.0) domain_fail("sqrt of a negative value", n);
          if (a.v == 0.0 && !is_constant(a)) {
            domain_fail("sqrt derivative is singular at zero", n);
          }
          const double s = std::sqrt(a.v);
          return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
        }
        case FuncId::Abs: {
          // Subgradient 0 at the kink.
          const double sg = a.v > 0.0 ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0);
          return chain(a, std::abs(a.v), sg, 0.0);
        }
      }
      return constant(0.0);
    }
    case NodeKind::Binary: {
      const Jet a = eval_node(n->lhs.get(), p);
      const Jet b = eval_node(n->rhs.get(), p);
      switch (n->op) {
        case BinOp::Add: return add(a, b);
        case BinOp::Sub: return sub(a, b);
        case BinOp::Mul: return mul(a, b);
        case BinOp::Div: {
          if (b.v == 0.0) domain_fail("division by zero", n);
          const double iv = 1.0 / b.v;
          return mul(a, chain(b, iv, -iv * iv, 2.0 * iv * iv * iv));
        }
        case BinOp::Pow: {
          if (is_constant(b)) {
            const double c = b.v;
            const double rc = std::round(c);
            if (std::abs(c - rc) < 1e-9 && std::abs(rc) < 1e9) {
              return powi(a, static_cast<long>(rc), n);
            }
            if (a.v <= 0.0) {
              domain_fail("non-integer power needs a positive base", n);
            }
            const double f0 = std::pow(a.v, c);
            return chain(a, f0, c * f0 / a.v, c * (c - 1.0) * f0 / (a.v * a.v));
          }
          if (a.v <= 0.0) {
            domain_fail("variable exponent needs a positive base", n);
          }
          // a^b = exp(b log a)
          const Jet la = chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
          const Jet prod = mul(b, la);
          const double e = std::exp(prod.v);
          return chain(prod, e, e, e);
        }
      }
      return constant(0.0);
    }
  }
  return constant(0.0);
}

bool equal_rec(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number: return a->number == b->number;
    case NodeKind::Variable: return a->var == b->var;
    case NodeKind::Unary: return equal_rec(a->lhs.get(), b->lhs.get());
    case NodeKind::Call:
      return a->fn == b->fn && equal_rec(a->lhs.get(), b->lhs.get());
    case NodeKind::Binary:
      return a->op == b->op && equal_rec(a->lhs.get(), b->lhs.get()) &&
             equal_rec(a->rhs.get(), b->rhs.get());
  }
  return false;
}

bool uses_rec(const Node* n, VarId v) {
  if (n == nullptr) return false;
  if (n->kind == NodeKind::Variable) return n->var == v;
  return uses_rec(n->lhs.get(), v) || uses_rec(n->rhs.get(), v);
}

}  // namespace

bool Ast::uses(VarId v) const { return uses_rec(root_.get(), v); }

Ast parse(const std::string& src) {
  Parser p(src);
  return Ast(p.parse_all());
}

std::string print(const Node* n) {
  std::string out;
  if (n != nullptr) print_rec(n, out);
  return out;
}

std::string print(const Ast& ast) { return print(ast.root()); }

bool structurally_equal(const Ast& a, const Ast& b) {
  return equal_rec(a.root(), b.root());
}

double eval(const Ast& ast, double t, double u, double v, double w) {
  return eval_node(ast.root(), Point{t, u, v, w}).v;
}

LagrangianJet eval_jet(const Ast& ast, double t, double u, double v,
                       double w) {
  const Jet j = eval_node(ast.root(), Point{t, u, v, w});
  LagrangianJet out;
  out.value = j.v;
  out.Lu = j.g[0];
  out.Lv = j.g[1];
  out.Lw = j.g[2];
  out.Luu = j.H[0];
  out.Luv = j.H[1];
  out.Luw = j.H[2];
  out.Lvv = j.H[3];
  out.Lvw = j.H[4];
  out.Lww = j.H[5];
  return out;
}

}  // namespace expr
}  // namespace hfrac
