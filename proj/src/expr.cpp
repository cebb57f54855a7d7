#include "tunnelshift/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

namespace tunnelshift::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Function>, 8> kFunctions{{
    {"exp", Function::exp},
    {"log", Function::log},
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"sinh", Function::sinh},
    {"cosh", Function::cosh},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
}};

std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

Expr make(NodeKind kind, double value, Function f, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = value;
  n->function = f;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool is_const(const Expr& e) { return e->kind == NodeKind::constant; }
bool is_const(const Expr& e, double v) { return is_const(e) && e->value == v; }

// Integers up to 2^53 in magnitude: sums, differences, products of these are
// exact whenever the result stays in range.
bool is_exact_int(double v) { return std::isfinite(v) && std::trunc(v) == v && std::fabs(v) <= 9007199254740992.0; }

std::optional<double> fold_exact(NodeKind kind, double a, double b) {
  if (!is_exact_int(a) || !is_exact_int(b)) return std::nullopt;
  double r = 0.0;
  switch (kind) {
    case NodeKind::add: r = a + b; break;
    case NodeKind::subtract: r = a - b; break;
    case NodeKind::multiply: r = a * b; break;
    case NodeKind::divide:
      if (b == 0.0 || std::fmod(a, b) != 0.0) return std::nullopt;
      r = a / b;
      break;
    case NodeKind::power:
      if (b < 0.0 || b > 64.0) return std::nullopt;
      r = std::pow(a, b);
      break;
    default: return std::nullopt;
  }
  if (!is_exact_int(r)) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------- lexer/parser

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end, bad };

struct Token {
  Tok kind = Tok::end;
  std::size_t offset = 0;
  std::string_view text;
  double number = 0.0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  Expr parse_all() {
    Expr e = parse_expr(0);
    if (tok_.kind != Tok::end)
      fail("unexpected token", {"operator", "end of input"});
    return e;
  }

 private:
  static constexpr int kAddBp = 10;
  static constexpr int kMulBp = 20;
  static constexpr int kUnaryBp = 30;
  static constexpr int kPowBp = 40;

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    std::ostringstream msg;
    msg << what << " at offset " << tok_.offset;
    if (tok_.kind != Tok::end) msg << " ('" << tok_.text << "')";
    if (!expected.empty()) {
      msg << "; expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? ", " : "") << expected[i];
    }
    throw ParseError(msg.str(), std::string(src_), tok_.offset, std::move(expected));
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::end;
      return;
    }
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = src_.substr(pos_, 1);
      ++pos_;
    };
    switch (c) {
      case '+': return single(Tok::plus);
      case '-': return single(Tok::minus);
      case '*': return single(Tok::star);
      case '/': return single(Tok::slash);
      case '^': return single(Tok::caret);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      bool digits = false;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end, digits = true;
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end, digits = true;
      }
      if (digits && end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
        if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
          while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
          end = e;
        }
      }
      tok_.text = src_.substr(pos_, end - pos_);
      if (!digits) {
        tok_.kind = Tok::bad;
        pos_ = end;
        return;
      }
      const auto res = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), tok_.number);
      tok_.kind = (res.ec == std::errc{} && std::isfinite(tok_.number)) ? Tok::number : Tok::bad;
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) ++end;
      tok_.kind = Tok::ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    tok_.kind = Tok::bad;
    tok_.text = src_.substr(pos_, 1);
    ++pos_;
  }

  Expr parse_prefix() {
    static const std::vector<std::string> kOperand{"number", "'x'", "function call", "'('", "'-'"};
    switch (tok_.kind) {
      case Tok::number: {
        const double v = tok_.number;
        advance();
        return constant(v);
      }
      case Tok::minus: {
        advance();
        return raw_unary(NodeKind::negate, parse_expr(kUnaryBp));
      }
      case Tok::lparen: {
        advance();
        Expr inner = parse_expr(0);
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: {
        const std::string_view name = tok_.text;
        if (name == "x") {
          advance();
          return variable();
        }
        const auto f = lookup_function(name);
        if (!f) fail("unknown identifier '" + std::string(name) + "'", {"'x'", "exp", "log", "sin", "cos", "sinh", "cosh", "sqrt", "abs"});
        advance();
        expect(Tok::lparen, "'('");
        Expr arg = parse_expr(0);
        expect(Tok::rparen, "')'");
        return raw_unary(NodeKind::call, std::move(arg), *f);
      }
      case Tok::bad: fail("invalid token", kOperand);
      case Tok::end: fail("unexpected end of input", kOperand);
      default: fail("unexpected token", kOperand);
    }
  }

  Expr parse_expr(int min_bp) {
    Expr lhs = parse_prefix();
    for (;;) {
      NodeKind kind;
      int bp;
      bool right_assoc = false;
      switch (tok_.kind) {
        case Tok::plus: kind = NodeKind::add, bp = kAddBp; break;
        case Tok::minus: kind = NodeKind::subtract, bp = kAddBp; break;
        case Tok::star: kind = NodeKind::multiply, bp = kMulBp; break;
        case Tok::slash: kind = NodeKind::divide, bp = kMulBp; break;
        case Tok::caret: kind = NodeKind::power, bp = kPowBp, right_assoc = true; break;
        case Tok::end:
        case Tok::rparen: return lhs;
        default: fail("unexpected token", {"'+'", "'-'", "'*'", "'/'", "'^'", "')'", "end of input"});
      }
      if (bp < min_bp) return lhs;
      advance();
      Expr rhs = parse_expr(right_assoc ? bp : bp + 1);
      lhs = raw_binary(kind, std::move(lhs), std::move(rhs));
    }
  }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what, {what});
    advance();
  }

  Expr raw_unary(NodeKind kind, Expr a, Function f = Function::exp) { return make(kind, 0.0, f, std::move(a), nullptr); }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// --------------------------------------------------------------- printing

int level(const Expr& e) {
  switch (e->kind) {
    case NodeKind::add:
    case NodeKind::subtract: return 1;
    case NodeKind::multiply:
    case NodeKind::divide: return 2;
    case NodeKind::negate: return 3;
    case NodeKind::power: return 4;
    case NodeKind::constant: return e->value < 0.0 ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e->kind) {
    case NodeKind::constant: out += format_number(e->value); return;
    case NodeKind::variable: out += 'x'; return;
    case NodeKind::negate:
      out += '-';
      print_at(e->lhs, 4, out);
      return;
    case NodeKind::call:
      out += function_name(e->function);
      out += '(';
      print(e->lhs, out);
      out += ')';
      return;
    case NodeKind::add:
    case NodeKind::subtract:
      print_at(e->lhs, 1, out);
      out += e->kind == NodeKind::add ? " + " : " - ";
      print_at(e->rhs, 2, out);
      return;
    case NodeKind::multiply:
    case NodeKind::divide:
      print_at(e->lhs, 2, out);
      out += e->kind == NodeKind::multiply ? "*" : "/";
      print_at(e->rhs, 3, out);
      return;
    case NodeKind::power:
      print_at(e->lhs, 5, out);
      out += '^';
      print_at(e->rhs, 3, out);
      return;
  }
}

// --------------------------------------------------------------- evaluation

double eval_node(const Expr& e, double x) {
  auto check = [&](double r) {
    if (!std::isfinite(r)) throw EvalError("non-finite result in '" + to_string(e) + "'", to_string(e));
    return r;
  };
  switch (e->kind) {
    case NodeKind::constant: return e->value;
    case NodeKind::variable: return x;
    case NodeKind::negate: return -eval_node(e->lhs, x);
    case NodeKind::add: return check(eval_node(e->lhs, x) + eval_node(e->rhs, x));
    case NodeKind::subtract: return check(eval_node(e->lhs, x) - eval_node(e->rhs, x));
    case NodeKind::multiply: return check(eval_node(e->lhs, x) * eval_node(e->rhs, x));
    case NodeKind::divide: {
      const double num = eval_node(e->lhs, x);
      const double den = eval_node(e->rhs, x);
      if (den == 0.0) throw EvalError("division by zero in '" + to_string(e) + "'", to_string(e));
      return check(num / den);
    }
    case NodeKind::power: {
      const double base = eval_node(e->lhs, x);
      const double ex = eval_node(e->rhs, x);
      if (base < 0.0 && std::trunc(ex) != ex)
        throw EvalError("negative base with non-integer exponent in '" + to_string(e) + "'", to_string(e));
      if (base == 0.0 && ex < 0.0) throw EvalError("division by zero in '" + to_string(e) + "'", to_string(e));
      return check(std::pow(base, ex));
    }
    case NodeKind::call: {
      const double a = eval_node(e->lhs, x);
      switch (e->function) {
        case Function::exp: return check(std::exp(a));
        case Function::log:
          if (a <= 0.0) throw EvalError("log of non-positive value in '" + to_string(e) + "'", to_string(e));
          return std::log(a);
        case Function::sin: return std::sin(a);
        case Function::cos: return std::cos(a);
        case Function::sinh: return check(std::sinh(a));
        case Function::cosh: return check(std::cosh(a));
        case Function::sqrt:
          if (a < 0.0) throw EvalError("sqrt of negative value in '" + to_string(e) + "'", to_string(e));
          return std::sqrt(a);
        case Function::abs: return std::fabs(a);
      }
    }
  }
  throw EvalError("malformed expression", "");
}

// --------------------------------------------------------------- Taylor series

using Series = std::vector<double>;

Series mul_series(const Series& a, const Series& b) {
  Series c(a.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) c[k] += a[j] * b[k - j];
  return c;
}

// c = a^p for real p, a_0 > 0:  k a_0 c_k = sum_j ((p+1) j - k) a_j c_{k-j}.
Series pow_series(const Series& a, double p) {
  Series c(a.size(), 0.0);
  c[0] = std::pow(a[0], p);
  for (std::size_t k = 1; k < c.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += ((p + 1.0) * double(j) - double(k)) * a[j] * c[k - j];
    c[k] = s / (double(k) * a[0]);
  }
  return c;
}

Series exp_series(const Series& a) {
  Series c(a.size(), 0.0);
  c[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += double(j) * a[j] * c[k - j];
    c[k] = s / double(k);
  }
  return c;
}

Series log_series(const Series& a) {
  Series c(a.size(), 0.0);
  c[0] = std::log(a[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j < k; ++j) s += double(j) * c[j] * a[k - j];
    c[k] = (a[k] - s / double(k)) / a[0];
  }
  return c;
}

// sign = -1 gives (sin, cos), +1 gives (sinh, cosh).
std::pair<Series, Series> trig_series(const Series& a, double sign) {
  Series s(a.size(), 0.0), c(a.size(), 0.0);
  s[0] = sign < 0 ? std::sin(a[0]) : std::sinh(a[0]);
  c[0] = sign < 0 ? std::cos(a[0]) : std::cosh(a[0]);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double ss = 0.0, cc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      ss += double(j) * a[j] * c[k - j];
      cc += double(j) * a[j] * s[k - j];
    }
    s[k] = ss / double(k);
    c[k] = sign * cc / double(k);
  }
  return {s, c};
}

Series taylor_node(const Expr& e, std::size_t n) {
  auto fail = [&](const std::string& why) -> Series {
    throw EvalError("expression not analytic at 0 (" + why + ") in '" + to_string(e) + "'", to_string(e));
  };
  Series out(n, 0.0);
  switch (e->kind) {
    case NodeKind::constant: out[0] = e->value; return out;
    case NodeKind::variable:
      if (n > 1) out[1] = 1.0;
      return out;
    case NodeKind::negate: {
      out = taylor_node(e->lhs, n);
      for (double& v : out) v = -v;
      return out;
    }
    case NodeKind::add:
    case NodeKind::subtract: {
      const Series a = taylor_node(e->lhs, n);
      const Series b = taylor_node(e->rhs, n);
      const double s = e->kind == NodeKind::add ? 1.0 : -1.0;
      for (std::size_t k = 0; k < n; ++k) out[k] = a[k] + s * b[k];
      return out;
    }
    case NodeKind::multiply: return mul_series(taylor_node(e->lhs, n), taylor_node(e->rhs, n));
    case NodeKind::divide: {
      const Series a = taylor_node(e->lhs, n);
      const Series b = taylor_node(e->rhs, n);
      if (b[0] == 0.0) return fail("division by a series vanishing at 0");
      for (std::size_t k = 0; k < n; ++k) {
        double s = a[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b[j] * out[k - j];
        out[k] = s / b[0];
      }
      return out;
    }
    case NodeKind::power: {
      const Series a = taylor_node(e->lhs, n);
      if (is_const(e->rhs)) {
        const double p = e->rhs->value;
        if (p >= 0.0 && p <= 64.0 && std::trunc(p) == p) {
          out[0] = 1.0;
          for (int i = 0; i < static_cast<int>(p); ++i) out = mul_series(out, a);
          return out;
        }
        if (a[0] <= 0.0) return fail("non-integer power of a series not positive at 0");
        return pow_series(a, p);
      }
      if (a[0] <= 0.0) return fail("variable power of a series not positive at 0");
      return exp_series(mul_series(taylor_node(e->rhs, n), log_series(a)));
    }
    case NodeKind::call: {
      Series a = taylor_node(e->lhs, n);
      switch (e->function) {
        case Function::exp: return exp_series(a);
        case Function::log:
          if (a[0] <= 0.0) return fail("log of a series not positive at 0");
          return log_series(a);
        case Function::sin: return trig_series(a, -1.0).first;
        case Function::cos: return trig_series(a, -1.0).second;
        case Function::sinh: return trig_series(a, 1.0).first;
        case Function::cosh: return trig_series(a, 1.0).second;
        case Function::sqrt:
          if (a[0] <= 0.0) return fail("sqrt of a series not positive at 0");
          return pow_series(a, 0.5);
        case Function::abs:
          if (a[0] == 0.0) return fail("abs of a series vanishing at 0");
          if (a[0] < 0.0)
            for (double& v : a) v = -v;
          return a;
      }
    }
  }
  return fail("malformed");
}

}  // namespace

// ------------------------------------------------------------------ public API

ParseError::ParseError(std::string message, std::string source, std::size_t offset,
                       std::vector<std::string> expected)
    : ValidationError(std::move(message)),
      source_(std::move(source)),
      offset_(offset),
      expected_(std::move(expected)) {}

std::string ParseError::caret_annotation() const {
  std::string line = source_;
  for (char& c : line)
    if (c == '\n' || c == '\t') c = ' ';
  return line + "\n" + std::string(std::min(offset_, line.size()), ' ') + "^";
}

std::string_view function_name(Function f) {
  for (const auto& [n, fn] : kFunctions)
    if (fn == f) return n;
  return "?";
}

Expr parse(std::string_view text) {
  if (text.size() > kMaxSourceLength)
    throw ParseError("expression longer than 4096 bytes", std::string(text.substr(0, 64)), kMaxSourceLength, {});
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw ParseError("empty expression", std::string(text), 0, {"expression"});
  return Parser(text).parse_all();
}

double evaluate(const Expr& ast, double x) { return eval_node(ast, x); }

std::string to_string(const Expr& ast) {
  std::string out;
  print(ast, out);
  return out;
}

bool contains_division(const Expr& ast) {
  if (!ast) return false;
  if (ast->kind == NodeKind::divide) return true;
  return contains_division(ast->lhs) || contains_division(ast->rhs);
}

bool is_well_formed(const Expr& ast) {
  if (!ast) return false;
  switch (ast->kind) {
    case NodeKind::constant:
    case NodeKind::variable: return !ast->lhs && !ast->rhs;
    case NodeKind::negate:
    case NodeKind::call: return !ast->rhs && is_well_formed(ast->lhs);
    default: return is_well_formed(ast->lhs) && is_well_formed(ast->rhs);
  }
}

std::vector<double> taylor_at_zero(const Expr& ast, int order) {
  if (order < 0) throw ValidationError("negative Taylor order");
  return taylor_node(ast, static_cast<std::size_t>(order) + 1);
}

Expr constant(double v) { return make(NodeKind::constant, v, Function::exp, nullptr, nullptr); }
Expr variable() { return make(NodeKind::variable, 0.0, Function::exp, nullptr, nullptr); }

Expr raw_unary(NodeKind kind, Expr a) { return make(kind, 0.0, Function::exp, std::move(a), nullptr); }
Expr raw_binary(NodeKind kind, Expr a, Expr b) { return make(kind, 0.0, Function::exp, std::move(a), std::move(b)); }

Expr negate(Expr a) {
  if (is_const(a)) return constant(-a->value);
  if (a->kind == NodeKind::negate) return a->lhs;
  return raw_unary(NodeKind::negate, std::move(a));
}

namespace {
Expr fold_or(NodeKind kind, Expr a, Expr b) {
  if (is_const(a) && is_const(b))
    if (const auto r = fold_exact(kind, a->value, b->value)) return constant(*r);
  return raw_binary(kind, std::move(a), std::move(b));
}
}  // namespace

Expr add(Expr a, Expr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (b->kind == NodeKind::negate) return subtract(std::move(a), b->lhs);
  return fold_or(NodeKind::add, std::move(a), std::move(b));
}

Expr subtract(Expr a, Expr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return negate(std::move(b));
  return fold_or(NodeKind::subtract, std::move(a), std::move(b));
}

Expr multiply(Expr a, Expr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return negate(std::move(b));
  if (is_const(b, -1.0)) return negate(std::move(a));
  // Keep literals on the left: x*2 -> 2*x.
  if (is_const(b) && !is_const(a)) std::swap(a, b);
  return fold_or(NodeKind::multiply, std::move(a), std::move(b));
}

Expr divide(Expr a, Expr b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return constant(0.0);
  return fold_or(NodeKind::divide, std::move(a), std::move(b));
}

Expr power(Expr a, Expr b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(b, 0.0)) return constant(1.0);
  return fold_or(NodeKind::power, std::move(a), std::move(b));
}

Expr call(Function f, Expr a) { return make(NodeKind::call, 0.0, f, std::move(a), nullptr); }

Expr differentiate(const Expr& e) {
  switch (e->kind) {
    case NodeKind::constant: return constant(0.0);
    case NodeKind::variable: return constant(1.0);
    case NodeKind::negate: return negate(differentiate(e->lhs));
    case NodeKind::add: return add(differentiate(e->lhs), differentiate(e->rhs));
    case NodeKind::subtract: return subtract(differentiate(e->lhs), differentiate(e->rhs));
    case NodeKind::multiply:
      return add(multiply(differentiate(e->lhs), e->rhs), multiply(e->lhs, differentiate(e->rhs)));
    case NodeKind::divide: {
      // (u/v)' = u'/v - u v'/v^2
      const Expr du = differentiate(e->lhs);
      const Expr dv = differentiate(e->rhs);
      return subtract(divide(du, e->rhs), divide(multiply(e->lhs, dv), power(e->rhs, constant(2.0))));
    }
    case NodeKind::power: {
      const Expr du = differentiate(e->lhs);
      if (is_const(e->rhs)) {
        const Expr p = e->rhs;
        const Expr pm1 = fold_or(NodeKind::subtract, p, constant(1.0));
        const Expr reduced = is_const(pm1) ? pm1 : constant(p->value - 1.0);
        return multiply(multiply(p, power(e->lhs, reduced)), du);
      }
      // (u^v)' = u^v (v' log u + v u'/u)
      const Expr dv = differentiate(e->rhs);
      return multiply(e, add(multiply(dv, call(Function::log, e->lhs)), divide(multiply(e->rhs, du), e->lhs)));
    }
    case NodeKind::call: {
      const Expr& u = e->lhs;
      const Expr du = differentiate(u);
      Expr outer;
      switch (e->function) {
        case Function::exp: outer = e; break;
        case Function::log: return divide(du, u);
        case Function::sin: outer = call(Function::cos, u); break;
        case Function::cos: outer = negate(call(Function::sin, u)); break;
        case Function::sinh: outer = call(Function::cosh, u); break;
        case Function::cosh: outer = call(Function::sinh, u); break;
        case Function::sqrt: return divide(du, multiply(constant(2.0), e));
        // u/|u| is undefined at u = 0, which is where abs is not differentiable.
        case Function::abs: return multiply(divide(u, e), du);
      }
      return multiply(outer, du);
    }
  }
  throw EvalError("malformed expression", "");
}

}  // namespace tunnelshift::expr
