#include "harmonics/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace harmonics {

namespace {

std::string describe(std::string_view text, size_t offset) {
  if (offset >= text.size()) return "end of input";
  std::string s = "'";
  s += text[offset];
  s += "'";
  return s;
}

ExprPtr make(Expr::Kind kind, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = sum();
    skip_space();
    if (pos_ != text_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int depth_ = 0;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw ParseError(pos_, std::move(expected), describe(text_, pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > 512) p.fail({"shallower nesting"});
    }
    ~DepthGuard() { --p.depth_; }
  };

  ExprPtr sum() {
    DepthGuard guard(*this);
    ExprPtr lhs = prod();
    for (;;) {
      if (consume('+'))
        lhs = make(Expr::Kind::add, lhs, prod());
      else if (consume('-'))
        lhs = make(Expr::Kind::sub, lhs, prod());
      else
        return lhs;
    }
  }

  ExprPtr prod() {
    DepthGuard guard(*this);
    ExprPtr lhs = unary();
    for (;;) {
      if (consume('*'))
        lhs = make(Expr::Kind::mul, lhs, unary());
      else if (consume('/'))
        lhs = make(Expr::Kind::div, lhs, unary());
      else
        return lhs;
    }
  }

  ExprPtr unary() {
    DepthGuard guard(*this);
    if (consume('-')) return make(Expr::Kind::neg, unary());
    return atom();
  }

  ExprPtr atom() {
    DepthGuard guard(*this);
    skip_space();
    ExprPtr e;
    if (pos_ >= text_.size())
      fail({"number", "'x'", "function", "'('"});
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      e = number();
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      e = identifier();
    } else if (consume('(')) {
      ExprPtr inner = sum();
      if (!consume(')')) fail({"')'"});
      e = make(Expr::Kind::group, inner);
    } else {
      fail({"number", "'x'", "function", "'('"});
    }
    while (peek_is('^')) {
      ++pos_;
      auto p = std::make_shared<Expr>();
      p->kind = Expr::Kind::pow;
      p->lhs = e;
      p->exponent = integer();
      e = p;
    }
    return e;
  }

  ExprPtr number() {
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      const size_t dot = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == dot + 1) {
        pos_ = dot;
        if (start == dot) fail({"number"});
      }
    }
    if (pos_ == start) fail({"number"});
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        pos_ = probe;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{}) {
      pos_ = start;
      fail({"number"});
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::number;
    e->value = v;
    return e;
  }

  ExprPtr identifier() {
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::variable;
      return e;
    }
    Expr::Kind kind;
    if (name == "exp")
      kind = Expr::Kind::exp_fn;
    else if (name == "sin")
      kind = Expr::Kind::sin_fn;
    else if (name == "cos")
      kind = Expr::Kind::cos_fn;
    else if (name == "abs")
      kind = Expr::Kind::abs_fn;
    else {
      pos_ = start;
      throw ParseError(start, {"'x'", "exp", "sin", "cos", "abs"},
                       "unknown identifier '" + std::string(name) + "'");
    }
    if (!consume('(')) fail({"'('"});
    ExprPtr arg = sum();
    if (!consume(')')) fail({"')'"});
    return make(kind, arg);
  }

  int integer() {
    skip_space();
    const size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail({"integer exponent"});
    }
    int v = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{}) {
      pos_ = start;
      fail({"integer exponent"});
    }
    return v;
  }
};

}  // namespace

ParseError::ParseError(size_t off, std::vector<std::string> exp, std::string found)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "syntax error at byte " << off << ": found " << found << ", expected ";
        for (size_t i = 0; i < exp.size(); ++i)
          os << (i ? " | " : "") << exp[i];
        return os.str();
      }()),
      offset(off),
      expected(std::move(exp)) {}

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
  std::ostringstream os;
  switch (e.kind) {
    case Expr::Kind::number: {
      char buf[64];
      snprintf(buf, sizeof buf, "%.17g", e.value);
      os << buf;
      break;
    }
    case Expr::Kind::variable:
      os << "x";
      break;
    case Expr::Kind::add:
      os << print(*e.lhs) << " + " << print(*e.rhs);
      break;
    case Expr::Kind::sub:
      os << print(*e.lhs) << " - " << print(*e.rhs);
      break;
    case Expr::Kind::mul:
      os << print(*e.lhs) << "*" << print(*e.rhs);
      break;
    case Expr::Kind::div:
      os << print(*e.lhs) << "/" << print(*e.rhs);
      break;
    case Expr::Kind::pow:
      os << print(*e.lhs) << "^" << e.exponent;
      break;
    case Expr::Kind::neg:
      os << "-" << print(*e.lhs);
      break;
    case Expr::Kind::group:
      os << "(" << print(*e.lhs) << ")";
      break;
    case Expr::Kind::exp_fn:
      os << "exp(" << print(*e.lhs) << ")";
      break;
    case Expr::Kind::sin_fn:
      os << "sin(" << print(*e.lhs) << ")";
      break;
    case Expr::Kind::cos_fn:
      os << "cos(" << print(*e.lhs) << ")";
      break;
    case Expr::Kind::abs_fn:
      os << "abs(" << print(*e.lhs) << ")";
      break;
  }
  return os.str();
}

bool tree_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Expr::Kind::number && a.value != b.value) return false;
  if (a.kind == Expr::Kind::pow && a.exponent != b.exponent) return false;
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !tree_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !tree_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

double eval(const Expr& e, double x) {
  switch (e.kind) {
    case Expr::Kind::number:
      return e.value;
    case Expr::Kind::variable:
      return x;
    case Expr::Kind::add:
      return eval(*e.lhs, x) + eval(*e.rhs, x);
    case Expr::Kind::sub:
      return eval(*e.lhs, x) - eval(*e.rhs, x);
    case Expr::Kind::mul:
      return eval(*e.lhs, x) * eval(*e.rhs, x);
    case Expr::Kind::div: {
      const double d = eval(*e.rhs, x);
      if (d == 0.0) throw EvalError("division by zero");
      return eval(*e.lhs, x) / d;
    }
    case Expr::Kind::pow: {
      const double b = eval(*e.lhs, x);
      if (b == 0.0 && e.exponent < 0) throw EvalError("zero raised to a negative power");
      return std::pow(b, e.exponent);
    }
    case Expr::Kind::neg:
      return -eval(*e.lhs, x);
    case Expr::Kind::group:
      return eval(*e.lhs, x);
    case Expr::Kind::exp_fn:
      return std::exp(eval(*e.lhs, x));
    case Expr::Kind::sin_fn:
      return std::sin(eval(*e.lhs, x));
    case Expr::Kind::cos_fn:
      return std::cos(eval(*e.lhs, x));
    case Expr::Kind::abs_fn:
      return std::fabs(eval(*e.lhs, x));
  }
  throw EvalError("malformed expression tree");
}

LineFunction to_line_function(const ExprPtr& ast, Envelope envelope, double cutoff) {
  if (!ast) throw std::invalid_argument("to_line_function: null tree");
  // Spot check on a logarithmic sample of |x| up to the cutoff.
  for (double mag = 1.0; mag <= cutoff; mag *= 2.0)
    for (double x : {mag, -mag}) {
      const double v = std::fabs(eval(*ast, x));
      const double allowed = envelope.at(x) * (1.0 + 1e-9) + 1e-300;
      if (v > allowed) throw EnvelopeViolation(x, v, allowed);
    }
  const ExprPtr tree = ast;
  return LineFunction([tree](double x) { return cx{eval(*tree, x), 0.0}; }, envelope,
                      Smoothness::continuous);
}

}  // namespace harmonics
