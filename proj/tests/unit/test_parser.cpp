#include <doctest.h>

#include "mob/error.hpp"
#include "mob/parser.hpp"

#include <random>

using namespace mob;

namespace {

std::vector<std::string> names(const std::vector<Symbol>& syms) {
  std::vector<std::string> out;
  for (const auto& s : syms) out.push_back(s.name);
  return out;
}

ErrorKind kind_of(const char* text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << text);
  return ErrorKind::numeric;
}

}  // namespace

TEST_CASE("bessel spec") {
  IntegrandSpec s = parse_spec("int[x] x^nu * exp(-alpha*x) * besselj(nu, beta*x)");
  CHECK(names(s.variables) == std::vector<std::string>{"x"});
  CHECK(names(s.parameters) == std::vector<std::string>{"alpha", "beta", "nu"});
  REQUIRE(s.factors.size() == 3);
  CHECK(std::holds_alternative<PowerFactorSpec>(s.factors[0]));
  CHECK(std::get<ExpFactor>(s.factors[1]).negated);
  CHECK(std::get<KnownSeriesFactor>(s.factors[2]).function == "besselj");
}

TEST_CASE("c2k spec keeps the deferred sub-sum") {
  IntegrandSpec s = parse_spec("int[x,y] 2 * x^k * y^k * ( x*y*(x+y) + (x+y) )^-(k+1)");
  CHECK(s.scale == 2);
  REQUIRE(s.factors.size() == 3);
  const auto& m = std::get<MultinomialFactor>(s.factors[2]);
  CHECK(m.exponent.str() == "-k-1");
  REQUIRE(m.summands.size() == 2);
  CHECK(m.summands[0].subsums.size() == 1);
  CHECK(m.summands[0].powers.size() == 2);
  CHECK(m.summands[1].subsums.size() == 1);
  CHECK(m.summands[1].subsums[0].summands.size() == 2);
}

TEST_CASE("gamma spec") {
  IntegrandSpec s = parse_spec("int[x] x^(a-1) * exp(-x)");
  CHECK(std::get<PowerFactorSpec>(s.factors[0]).exponent.str() == "a-1");
}

TEST_CASE("positive exponential and division sugar") {
  IntegrandSpec s = parse_spec("int[x1] exp(x1*m2) / x1^(a)");
  CHECK_FALSE(std::get<ExpFactor>(s.factors[0]).negated);
  CHECK(std::get<PowerFactorSpec>(s.factors[1]).exponent.str() == "-a");
}

TEST_CASE("malformed exponent reports the caret position") {
  try {
    parse_spec("int[x] x^");
    FAIL("no error");
  } catch (const Error& e) {
    REQUIRE(e.position().has_value());
    CHECK(*e.position() == 8);
  }
}

TEST_CASE("error kinds") {
  CHECK(kind_of("int[x] x @ 2") == ErrorKind::lexical);
  CHECK(kind_of("int[x] ()^2") == ErrorKind::empty_multinomial);
  CHECK(kind_of("int[x] x^(x)") == ErrorKind::not_affine);
  CHECK(kind_of("int[x] x^(a*b)") == ErrorKind::not_affine);
  CHECK(kind_of("int[x,y] (x+(y+(x+y)))^(-a)") == ErrorKind::unsupported);
  CHECK(kind_of("int[x,y] (x+y)^2") == ErrorKind::unsupported);
  CHECK_THROWS_AS(parse_spec("int[x] x^a * exp(-b*x)", std::set<std::string>{"a"}), Error);
}

TEST_CASE("print/parse round trip on corpus-like specs") {
  const char* specs[] = {
      "int[x] x^nu * exp(-alpha*x) * besselj(nu, beta*x)",
      "int[x,y] 2 * x^k * y^k * ( x*y*(x+y) + (x+y) )^-(k+1)",
      "int[x] x^(a-1) * exp(-x)",
      "int[x,y,z] 8/3 * x^k*y^k*z^k * (x*y*z*(x+y+z) + x*y + x*z + y*z)^(-k-1)",
      "int[x1,x2,x3] x1^(a1-1) * x2^(a2-1) * x3^(a3-1) * exp(x1*m2) * exp(-x1*x2*s) * (x1+x2+x3)^(-D/2)",
      "int[x] -1/2 * (x - 2*y^(1/2))^(-3/2) * x^(-1)",
  };
  for (const char* t : specs) {
    IntegrandSpec s = parse_spec(t);
    IntegrandSpec back = parse_spec(s.str());
    CHECK_MESSAGE(back == s, s.str());
    CHECK(back.str() == s.str());
  }
}

TEST_CASE("assignments") {
  Assignment a = parse_assignments("alpha=2,beta=1,nu=0");
  CHECK(a.at("alpha").exact == Rational(2));
  CHECK(a.at("nu").value == std::complex<double>(0, 0));
  a = parse_assignments("s=3,m2=1,eps=0.1");
  CHECK(*a.at("eps").exact == Rational(1, 10));
  a = parse_assignments("x=(3,-0.5),k=-1/2");
  CHECK_FALSE(a.at("x").exact.has_value());
  CHECK(a.at("x").value.imag() == doctest::Approx(-0.5));
  CHECK(*a.at("k").exact == Rational(-1, 2));
  CHECK_THROWS_AS(parse_assignments("k=abc"), Error);
  CHECK_THROWS_AS(parse_assignments("k=1/0"), Error);
  try {
    check_assignment_names(parse_assignments("q=1"), {"k"});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unknown_parameter);
  }
}

namespace {

// Only mob::Error may escape the parser.
bool total(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error&) {
  } catch (...) {
    return false;
  }
  return true;
}

std::string grammar_like(std::mt19937& rng, int depth) {
  static const char* atoms[] = {"x", "y", "a", "2", "1/2", "0.5", "nu", "k"};
  std::uniform_int_distribution<int> pick(0, 7), form(0, 6);
  std::string a = atoms[pick(rng)];
  if (depth <= 0) return a;
  switch (form(rng)) {
    case 0:
      return a + "^" + atoms[pick(rng)];
    case 1:
      return a + "^(" + grammar_like(rng, depth - 1) + ")";
    case 2:
      return "(" + grammar_like(rng, depth - 1) + "+" + grammar_like(rng, depth - 1) + ")^-" + atoms[pick(rng)];
    case 3:
      return "exp(-" + grammar_like(rng, depth - 1) + ")";
    case 4:
      return "besselj(" + std::string(atoms[pick(rng)]) + "," + grammar_like(rng, depth - 1) + ")";
    case 5:
      return grammar_like(rng, depth - 1) + "*" + grammar_like(rng, depth - 1);
    default:
      return grammar_like(rng, depth - 1) + "/" + grammar_like(rng, depth - 1);
  }
}

}  // namespace

TEST_CASE("parser is total on random input") {
  std::mt19937 rng(5);
  const std::string alphabet = "int[xy,] ()^*/+-exp besselj 0123456789.eaknu";
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1), len(0, 60);
  for (int i = 0; i < 3000; ++i) {
    std::string s = i % 2 ? "int[x,y] " : "";
    for (std::size_t n = len(rng); n > 0; --n) s += alphabet[ch(rng)];
    CHECK_MESSAGE(total(s), s);
  }
  for (int i = 0; i < 2000; ++i) {
    std::string s = "int[x,y] " + grammar_like(rng, 3);
    std::uniform_int_distribution<std::size_t> cut(0, s.size());
    if (i % 3 == 0) s = s.substr(0, cut(rng));
    CHECK_MESSAGE(total(s), s);
  }
}

TEST_CASE("real values sit below the axis; explicit zeros keep their sign") {
  const Assignment a = parse_assignments("x=3,y=(3,0),z=(3,-0)");
  CHECK(std::signbit(a.at("x").value.imag()));
  CHECK(a.at("x").exact.has_value());
  CHECK_FALSE(std::signbit(a.at("y").value.imag()));
  CHECK(std::signbit(a.at("z").value.imag()));
  CHECK(format_value(a.at("z")) == "(3,-0)");
}
