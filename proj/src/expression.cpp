#include "wrightstab/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace wrightstab {

namespace detail {

enum class Op {
  kConstant,
  kParameter,
  kVariable,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kExp,
  kExpm1,
  kLog,
  kLog1p,
  kPow,
  kSqrt,
  kTanh,
  kAtan,
};

struct Node {
  Op op;
  double value = 0.0;  // constant, parameter value or exponent
  std::string name;    // parameter name
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0,
             std::string name = {}) {
  return std::make_shared<const Node>(Node{op, value, std::move(name), std::move(lhs),
                                           std::move(rhs)});
}

const char* op_name(Op op) {
  switch (op) {
    case Op::kConstant: return "constant";
    case Op::kParameter: return "parameter";
    case Op::kVariable: return "x";
    case Op::kAdd: return "+";
    case Op::kSub: return "-";
    case Op::kMul: return "*";
    case Op::kDiv: return "/";
    case Op::kNeg: return "neg";
    case Op::kExp: return "exp";
    case Op::kExpm1: return "expm1";
    case Op::kLog: return "ln";
    case Op::kLog1p: return "log1p";
    case Op::kPow: return "pow";
    case Op::kSqrt: return "sqrt";
    case Op::kTanh: return "tanh";
    case Op::kAtan: return "atan";
  }
  return "?";
}

[[noreturn]] void domain_fail(Op op, double arg, double x) {
  throw DomainError(fmt::format("{} evaluated outside its domain (argument {:.17g}) at x = {:.17g}",
                                op_name(op), arg, x));
}

// T is double or Jet3. `x` is the plain evaluation point, kept for messages.
template <typename T>
T eval(const Node& n, const T& var, double x) {
  using std::atan;
  using std::exp;
  using std::expm1;
  using std::log;
  using std::log1p;
  using std::pow;
  using std::sqrt;
  using std::tanh;
  switch (n.op) {
    case Op::kConstant:
    case Op::kParameter:
      return T(n.value);
    case Op::kVariable:
      return var;
    case Op::kAdd:
      return eval(*n.lhs, var, x) + eval(*n.rhs, var, x);
    case Op::kSub:
      return eval(*n.lhs, var, x) - eval(*n.rhs, var, x);
    case Op::kMul:
      return eval(*n.lhs, var, x) * eval(*n.rhs, var, x);
    case Op::kDiv: {
      const T den = eval(*n.rhs, var, x);
      if (value_of(den) == 0.0) domain_fail(n.op, 0.0, x);
      return eval(*n.lhs, var, x) / den;
    }
    case Op::kNeg:
      return -eval(*n.lhs, var, x);
    case Op::kExp:
      return exp(eval(*n.lhs, var, x));
    case Op::kExpm1:
      return expm1(eval(*n.lhs, var, x));
    case Op::kLog: {
      const T u = eval(*n.lhs, var, x);
      if (!(value_of(u) > 0.0)) domain_fail(n.op, value_of(u), x);
      return log(u);
    }
    case Op::kLog1p: {
      const T u = eval(*n.lhs, var, x);
      if (!(value_of(u) > -1.0)) domain_fail(n.op, value_of(u), x);
      return log1p(u);
    }
    case Op::kPow: {
      const T u = eval(*n.lhs, var, x);
      const double c = n.value;
      const double uv = value_of(u);
      if ((c != std::round(c) && !(uv > 0.0)) || (uv == 0.0 && c < 0.0)) {
        domain_fail(n.op, uv, x);
      }
      return pow(u, c);
    }
    case Op::kSqrt: {
      const T u = eval(*n.lhs, var, x);
      if (!(value_of(u) > 0.0)) domain_fail(n.op, value_of(u), x);
      return sqrt(u);
    }
    case Op::kTanh:
      return tanh(eval(*n.lhs, var, x));
    case Op::kAtan:
      return atan(eval(*n.lhs, var, x));
  }
  throw EvaluationError("corrupt expression node");
}

NodePtr substitute(const NodePtr& n, const NodePtr& inner) {
  if (n->op == Op::kVariable) return inner;
  if (!n->lhs) return n;
  NodePtr lhs = substitute(n->lhs, inner);
  NodePtr rhs = n->rhs ? substitute(n->rhs, inner) : nullptr;
  return make(n->op, std::move(lhs), std::move(rhs), n->value, n->name);
}

void collect_parameters(const Node& n, std::map<std::string, double>& out) {
  if (n.op == Op::kParameter) out.emplace(n.name, n.value);
  if (n.lhs) collect_parameters(*n.lhs, out);
  if (n.rhs) collect_parameters(*n.rhs, out);
}

void render(const Node& n, std::ostringstream& os) {
  switch (n.op) {
    case Op::kConstant:
      os << fmt::format("{:.17g}", n.value);
      return;
    case Op::kParameter:
      os << n.name;
      return;
    case Op::kVariable:
      os << 'x';
      return;
    case Op::kAdd:
    case Op::kSub:
    case Op::kMul:
    case Op::kDiv:
      os << '(';
      render(*n.lhs, os);
      os << ' ' << op_name(n.op) << ' ';
      render(*n.rhs, os);
      os << ')';
      return;
    case Op::kNeg:
      os << "(-";
      render(*n.lhs, os);
      os << ')';
      return;
    case Op::kPow:
      os << '(';
      render(*n.lhs, os);
      os << fmt::format(")^{:.17g}", n.value);
      return;
    default:
      os << op_name(n.op) << '(';
      render(*n.lhs, os);
      os << ')';
      return;
  }
}

}  // namespace
}  // namespace detail

using detail::Op;

SmoothFunction::SmoothFunction() : root_(detail::make(Op::kVariable)) {}
SmoothFunction::SmoothFunction(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}

SmoothFunction SmoothFunction::identity() { return SmoothFunction(); }

SmoothFunction SmoothFunction::constant(double c) {
  return SmoothFunction(detail::make(Op::kConstant, nullptr, nullptr, c));
}

SmoothFunction SmoothFunction::parameter(std::string name, double value) {
  return SmoothFunction(detail::make(Op::kParameter, nullptr, nullptr, value, std::move(name)));
}

double SmoothFunction::operator()(double x) const {
  const double y = detail::eval<double>(*root_, x, x);
  if (!std::isfinite(y)) {
    throw EvaluationError(fmt::format("non-finite value {} of {} at x = {:.17g}", y, to_string(), x));
  }
  return y;
}

Jet3 SmoothFunction::jet(double x) const {
  const Jet3 j = detail::eval<Jet3>(*root_, Jet3::variable(x), x);
  if (!j.finite()) {
    throw EvaluationError(fmt::format("non-finite jet of {} at x = {:.17g}", to_string(), x));
  }
  return j;
}

SmoothFunction SmoothFunction::compose(const SmoothFunction& inner) const {
  return SmoothFunction(detail::substitute(root_, inner.root_));
}

SmoothFunction SmoothFunction::reflected() const { return -compose(-identity()); }

std::map<std::string, double> SmoothFunction::parameters() const {
  std::map<std::string, double> out;
  detail::collect_parameters(*root_, out);
  return out;
}

std::string SmoothFunction::to_string() const {
  std::ostringstream os;
  detail::render(*root_, os);
  return os.str();
}

SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction(detail::make(Op::kAdd, a.root_, b.root_));
}
SmoothFunction operator-(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction(detail::make(Op::kSub, a.root_, b.root_));
}
SmoothFunction operator*(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction(detail::make(Op::kMul, a.root_, b.root_));
}
SmoothFunction operator/(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction(detail::make(Op::kDiv, a.root_, b.root_));
}
SmoothFunction operator-(const SmoothFunction& a) {
  return SmoothFunction(detail::make(Op::kNeg, a.root_));
}
SmoothFunction exp(const SmoothFunction& u) { return SmoothFunction(detail::make(Op::kExp, u.root_)); }
SmoothFunction expm1(const SmoothFunction& u) {
  return SmoothFunction(detail::make(Op::kExpm1, u.root_));
}
SmoothFunction log(const SmoothFunction& u) { return SmoothFunction(detail::make(Op::kLog, u.root_)); }
SmoothFunction log1p(const SmoothFunction& u) {
  return SmoothFunction(detail::make(Op::kLog1p, u.root_));
}
SmoothFunction pow(const SmoothFunction& u, double exponent) {
  return SmoothFunction(detail::make(Op::kPow, u.root_, nullptr, exponent));
}
SmoothFunction sqrt(const SmoothFunction& u) {
  return SmoothFunction(detail::make(Op::kSqrt, u.root_));
}
SmoothFunction tanh(const SmoothFunction& u) {
  return SmoothFunction(detail::make(Op::kTanh, u.root_));
}
SmoothFunction atan(const SmoothFunction& u) {
  return SmoothFunction(detail::make(Op::kAtan, u.root_));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::map<std::string, double>& params)
      : text_(text), params_(params) {}

  SmoothFunction parse() {
    SmoothFunction f = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(fmt::format("{} at offset {} in \"{}\"", what, pos_, text_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SmoothFunction expression() {
    SmoothFunction lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  SmoothFunction term() {
    SmoothFunction lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  SmoothFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SmoothFunction power() {
    SmoothFunction base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      SmoothFunction exponent = unary();
      // The exponent must not depend on x: compare values at two points.
      double c0 = 0.0;
      double c1 = 0.0;
      try {
        c0 = exponent(0.0);
        c1 = exponent(1.0);
      } catch (const Error&) {
        pos_ = at;
        fail("exponent must be a constant");
      }
      if (c0 != c1) {
        pos_ = at;
        fail("exponent must be a constant");
      }
      return pow(base, c0);
    }
    return base;
  }

  SmoothFunction primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SmoothFunction inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(fmt::format("unexpected character '{}'", c));
  }

  SmoothFunction number() {
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return SmoothFunction::constant(v);
  }

  SmoothFunction identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return SmoothFunction::identity();
    if (name == "pi") return SmoothFunction::constant(std::numbers::pi);
    if (name == "e") return SmoothFunction::constant(std::numbers::e);
    if (auto it = params_.find(name); it != params_.end()) {
      return SmoothFunction::parameter(name, it->second);
    }
    using Unary = SmoothFunction (*)(const SmoothFunction&);
    static const std::map<std::string, Unary> functions = {
        {"exp", [](const SmoothFunction& u) { return exp(u); }},
        {"expm1", [](const SmoothFunction& u) { return expm1(u); }},
        {"ln", [](const SmoothFunction& u) { return log(u); }},
        {"log", [](const SmoothFunction& u) { return log(u); }},
        {"log1p", [](const SmoothFunction& u) { return log1p(u); }},
        {"sqrt", [](const SmoothFunction& u) { return sqrt(u); }},
        {"tanh", [](const SmoothFunction& u) { return tanh(u); }},
        {"atan", [](const SmoothFunction& u) { return atan(u); }},
        {"arctan", [](const SmoothFunction& u) { return atan(u); }},
    };
    const auto fn = functions.find(name);
    if (fn == functions.end()) {
      pos_ = start;
      fail(fmt::format("unknown identifier '{}'", name));
    }
    if (!accept('(')) fail(fmt::format("expected '(' after {}", name));
    SmoothFunction arg = expression();
    if (!accept(')')) fail("expected ')'");
    return fn->second(arg);
  }

  std::string_view text_;
  const std::map<std::string, double>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

SmoothFunction parse_expression(std::string_view text,
                                const std::map<std::string, double>& parameters) {
  return Parser(text, parameters).parse();
}

}  // namespace wrightstab
