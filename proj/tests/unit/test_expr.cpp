#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qdiff/error.hpp"
#include "qdiff/expr.hpp"

using namespace qdiff;
using qdiff::expr::eval_taylor2;
using qdiff::expr::eval_value;
using qdiff::expr::parse_expression;

namespace {

const std::vector<std::string> kUV{"u", "v"};

double value_at(const std::string& src, double u, double v) {
  const double p[2] = {u, v};
  return eval_value(parse_expression(src, kUV), p);
}

// Random polynomial in u, v built from +, -, * and small integer powers.
std::string random_polynomial(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  switch (pick(rng)) {
    case 0: return "u";
    case 1: return "v";
    case 2: return "(" + std::to_string(coef(rng)) + ")";
    case 3: return "(" + random_polynomial(rng, depth - 1) + "+" + random_polynomial(rng, depth - 1) + ")";
    case 4: return "(" + random_polynomial(rng, depth - 1) + "-" + random_polynomial(rng, depth - 1) + ")";
    case 5: return "(" + random_polynomial(rng, depth - 1) + "*" + random_polynomial(rng, depth - 1) + ")";
    default: return "(" + random_polynomial(rng, depth - 1) + ")^" + std::to_string(1 + rng() % 3);
  }
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(value_at("-u^2", 3, 0) == doctest::Approx(-9));
  CHECK(value_at("2^3^2", 0, 0) == doctest::Approx(512));
  CHECK(value_at("1-2-3", 0, 0) == doctest::Approx(-4));
  CHECK(value_at("8/4/2", 0, 0) == doctest::Approx(1));
  CHECK(value_at("2*u+3*v", 1, 2) == doctest::Approx(8));
  CHECK(value_at("pi", 0, 0) == doctest::Approx(M_PI));
  CHECK(value_at("e", 0, 0) == doctest::Approx(M_E));
  CHECK(value_at("1.5e2", 0, 0) == doctest::Approx(150));
  CHECK(value_at("asinh(1)", 0, 0) == doctest::Approx(std::asinh(1.0)));
}

TEST_CASE("to_string round trips to an equal tree") {
  for (const char* src : {"-u^2", "sin(u)*cos(v)+2^v", "sqrt(1-u^2-v^2)", "(u-v)/(1+u*u)", "-(-u)"}) {
    const auto a = parse_expression(src, kUV);
    const auto b = parse_expression(a.to_string(), kUV);
    CHECK_MESSAGE(a == b, src);
  }
}

TEST_CASE("syntax and identifier errors") {
  for (const char* bad : {"", "1+", "(u", "sin(", "u v", "2**3", "1e", ")"})
    CHECK_THROWS_AS(parse_expression(bad, kUV), SyntaxError);
  CHECK_THROWS_AS(parse_expression("w+1", kUV), UnknownIdentifier);
  CHECK_THROWS_AS(parse_expression("foo(u)", kUV), UnknownIdentifier);
}

TEST_CASE("domain errors are raised at evaluation") {
  CHECK_THROWS_AS(value_at("sqrt(u)", -1, 0), DomainError);
  CHECK_THROWS_AS(value_at("log(u)", 0, 0), DomainError);
  CHECK_THROWS_AS(value_at("1/u", 0, 0), DomainError);
  CHECK_THROWS_AS(value_at("asin(u)", 2, 0), DomainError);
}

TEST_CASE("taylor2 agrees with central differences on random polynomials") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> pt(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ast = parse_expression(random_polynomial(rng, 4), kUV);
    const double p[2] = {pt(rng), pt(rng)};
    const auto t = eval_taylor2(ast, p);
    const double h = 1e-4;
    auto f = [&](double du, double dv) {
      const double q[2] = {p[0] + du, p[1] + dv};
      return eval_value(ast, q);
    };
    const double scale = 1.0 + std::abs(t.value());
    CHECK(t.d(0) == doctest::Approx((f(h, 0) - f(-h, 0)) / (2 * h)).epsilon(1e-6).scale(scale));
    CHECK(t.d(1) == doctest::Approx((f(0, h) - f(0, -h)) / (2 * h)).epsilon(1e-6).scale(scale));
    CHECK(t.d2(0, 0) == doctest::Approx((f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h)).epsilon(1e-4).scale(scale));
    CHECK(t.d2(1, 1) == doctest::Approx((f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h)).epsilon(1e-4).scale(scale));
    CHECK(t.d2(0, 1) ==
          doctest::Approx((f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h)).epsilon(1e-4).scale(scale));
    CHECK(t.d2(0, 1) == t.d2(1, 0));
  }
}

TEST_CASE("taylor2 of transcendental functions matches closed forms") {
  const auto ast = parse_expression("sin(u)*exp(v)", kUV);
  const double p[2] = {0.3, -0.7};
  const auto t = eval_taylor2(ast, p);
  CHECK(t.value() == doctest::Approx(std::sin(0.3) * std::exp(-0.7)));
  CHECK(t.d(0) == doctest::Approx(std::cos(0.3) * std::exp(-0.7)));
  CHECK(t.d(1) == doctest::Approx(std::sin(0.3) * std::exp(-0.7)));
  CHECK(t.d2(0, 0) == doctest::Approx(-std::sin(0.3) * std::exp(-0.7)));
  CHECK(t.d2(0, 1) == doctest::Approx(std::cos(0.3) * std::exp(-0.7)));

  const auto s = parse_expression("atan(x)+sqrt(x)", {"x"});
  const auto j = expr::eval_scalar_d2(s, 0.5);
  CHECK(j.d1 == doctest::Approx(1 / 1.25 + 0.5 / std::sqrt(0.5)));
  CHECK(j.d2 == doctest::Approx(-2 * 0.5 / (1.25 * 1.25) - 0.25 * std::pow(0.5, -1.5)));
}

TEST_CASE("fuzzed input either parses or raises a parse error") {
  std::mt19937 rng(7);
  const std::string alphabet = "uv0123456789.+-*/^()e pisncoqrtal,";
  for (int trial = 0; trial < 5000; ++trial) {
    std::string s;
    const int len = 1 + static_cast<int>(rng() % 24);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    try {
      const auto ast = parse_expression(s, kUV);
      CHECK(parse_expression(ast.to_string(), kUV) == ast);
    } catch (const ParseError&) {
    }
  }
}

TEST_CASE("deep nesting is rejected rather than overflowing the stack") {
  std::string s(100000, '(');
  s += "u";
  s += std::string(100000, ')');
  CHECK_THROWS_AS(parse_expression(s, kUV), SyntaxError);
}
