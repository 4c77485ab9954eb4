#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "harmonics/expr.hpp"

using namespace harmonics;

namespace {

double eval_text(const std::string& text, double x) { return eval(*parse(text), x); }

/// Random well-formed expression text for round-trip checks.
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  std::uniform_real_distribution<double> num(0.0, 9.5);
  switch (pick(rng)) {
    case 0:
      return std::to_string(num(rng));
    case 1:
      return "x";
    case 2:
      return "2";
    case 3:
      return "(" + random_expr(rng, depth - 1) + ")";
    case 4:
      return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 5:
      return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 6:
      return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 7:
      return "-" + random_expr(rng, depth - 1);
    case 8:
      return "sin(" + random_expr(rng, depth - 1) + ")";
    default:
      return "(" + random_expr(rng, depth - 1) + ")^2";
  }
}

}  // namespace

TEST_CASE("evaluation of the documented examples") {
  CHECK(eval_text("exp(-x^2)", 0.0) == 1.0);
  CHECK(eval_text("2*x + sin(x)", 0.0) == 0.0);
  CHECK(std::fabs(eval_text("exp(-abs(x))", -3.0) - std::exp(-3.0)) < 1e-16);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval_text("1+2*3", 0.0) == 7.0);
  CHECK(eval_text("2*3^2", 0.0) == 18.0);
  CHECK(eval_text("-x^2", 2.0) == -4.0);  // unary minus binds below the power
  CHECK(eval_text("(-x)^2", 2.0) == 4.0);
  CHECK(eval_text("8-4-2", 0.0) == 2.0);  // left associative
  CHECK(eval_text("8/4/2", 0.0) == 1.0);
  CHECK(eval_text("x^-2", 2.0) == 0.25);
  CHECK(eval_text("x^2^3", 2.0) == 64.0);  // postfix powers stack
  CHECK(eval_text("  1 +  2 ", 0.0) == 3.0);
  CHECK(eval_text("1.5e2", 0.0) == 150.0);
}

TEST_CASE("evaluation guards") {
  CHECK_THROWS_AS(eval_text("1/(x-1)", 1.0), EvalError);
  CHECK_THROWS_AS(eval_text("x^-1", 0.0), EvalError);
  CHECK(eval_text("1/(x-1)", 3.0) == 0.5);
}

TEST_CASE("syntax errors carry the byte offset and expectations") {
  try {
    parse("2+");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
    CHECK(!e.expected.empty());
  }
  try {
    parse("foo(x)");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.offset == 0);
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
  }
  try {
    parse("(1+2");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.offset == 4);
    CHECK(e.expected == std::vector<std::string>{"')'"});
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1 2"), ParseError);
  CHECK_THROWS_AS(parse("x^"), ParseError);
  CHECK_THROWS_AS(parse("sin x"), ParseError);
}

TEST_CASE("print/parse fixpoint") {
  for (const char* text :
       {"exp(-x^2)", "2*x + sin(x)", "1/(1+x^2)", "-x^3 - -2", "abs(x)^2",
        "cos((x))", "x^-2*4", "0.25*exp(-abs(x))"}) {
    const ExprPtr first = parse(text);
    const std::string printed = print(*first);
    const ExprPtr second = parse(printed);
    CHECK(tree_equal(*first, *second));
    CHECK(print(*second) == printed);
  }

  std::mt19937_64 rng(801);
  for (int iter = 0; iter < 300; ++iter) {
    const std::string text = random_expr(rng, 4);
    const ExprPtr first = parse(text);
    const ExprPtr second = parse(print(*first));
    CHECK(tree_equal(*first, *second));
  }
}

TEST_CASE("parser is total on arbitrary bytes") {
  std::mt19937_64 rng(809);
  std::uniform_int_distribution<int> len(0, 64);
  std::uniform_int_distribution<int> byte(0, 255);
  int parsed = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    std::string s(size_t(len(rng)), '\0');
    for (char& c : s) c = char(byte(rng));
    try {
      parse(s);
      ++parsed;
    } catch (const ParseError&) {
      // structured failure is the expected outcome
    }
  }
  CHECK(parsed >= 0);
}

TEST_CASE("line functions from expressions") {
  CHECK_NOTHROW(to_line_function(parse("exp(-x^2)"), Envelope{1.0, 4.0}));
  CHECK_NOTHROW(to_line_function(parse("1/(1+x^2)"), Envelope{1.0, 2.0}));
  try {
    to_line_function(parse("sin(x)"), Envelope{1.0, 2.0});
    CHECK(false);
  } catch (const EnvelopeViolation& e) {
    CHECK(std::fabs(e.witness) >= 1.0);  // the witness point is reported
  }

  const LineFunction f = to_line_function(parse("exp(-x^2)"), Envelope{1.0, 4.0});
  CHECK(std::abs(f(0.5) - cx{std::exp(-0.25), 0.0}) < 1e-16);
}
