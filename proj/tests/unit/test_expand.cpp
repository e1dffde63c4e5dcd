#include <doctest.h>

#include "mob/error.hpp"
#include "mob/expand.hpp"

using namespace mob;

namespace {

BracketSeries expand_text(const char* text, const ExpandOptions& o = {},
                          const std::vector<RegulatorRequest>& regs = {}) {
  IntegrandSpec s = parse_spec(text);
  s.regulators = regs;
  ExpansionResult r = expand(s, o);
  CHECK(same_value(r.trace.replay(), r.series));
  return r.series;
}

}  // namespace

TEST_CASE("bessel laplace transform expansion") {
  BracketSeries s = expand_text("int[x] x^nu * exp(-alpha*x) * besselj(nu, beta*x)");
  CHECK(s.str() == "sum[n1,n2] phi(n1,n2) * alpha^(n1) * (beta/2)^(2*n2+nu) / Gamma(n2+nu+1) * <n1+2*n2+2*nu+1>");
  CHECK(s.dimension() == 1);
}

TEST_CASE("c2k expansion with deferred sub-sum") {
  BracketSeries s = expand_text("int[x,y] 2 * x^k * y^k * ( x*y*(x+y) + (x+y) )^-(k+1)");
  CHECK(s.str() ==
        "sum[n1,n2,n3,n4] 2 * phi(n1,n2,n3,n4) / Gamma(-n1-n2) / Gamma(k+1) * <k+n1+n2+1> * <-n1-n2+n3+n4> * "
        "<k+n1+n3+1> * <k+n1+n4+1>");
  CHECK(s.dimension() == 0);
}

TEST_CASE("gamma integral") {
  CHECK(expand_text("int[x] x^(a-1) * exp(-x)").str() == "sum[n1] phi(n1) * <a+n1>");
}

TEST_CASE("feynman H merges the exp sub-sum with the top-level sum") {
  BracketSeries s = expand_text(
      "int[x1,x2,x3] x1^(a1-1) * x2^(a2-1) * x3^(a3-1) * exp(x1*m2) * exp(-s*x1*x2/(x1+x2+x3)) * "
      "(x1+x2+x3)^(-D/2)");
  CHECK(s.str() ==
        "sum[n1,n2,n3,n4,n5] phi(n1,n2,n3,n4,n5) * (-m2)^(n1) * s^(n2) / Gamma(1/2*D+n2) * "
        "<1/2*D+n2+n3+n4+n5> * <a1+n1+n2+n3> * <a2+n2+n4> * <a3+n5>");
  CHECK(s.dimension() == 1);
}

TEST_CASE("c4 with regulator and split summand") {
  ExpandOptions o;
  o.split = SummandSplit{1, "A"};
  std::vector<RegulatorRequest> regs{{"x", "eps"}, {"y", "eps"}, {"z", "eps"}, {"w", "eps"}};
  BracketSeries s = expand_text(
      "int[x,y,z,w] 1/6 * x*y*z*w * (x*y*z*w*(x+y) + z*w*(x+y) + x*y*z*w*(z+w) + x*y*(z+w))^(-2)", o, regs);
  CHECK(s.indices.size() == 8);
  CHECK(s.brackets.size() == 7);
  CHECK(s.dimension() == 1);
  CHECK(s.str().find("A^(n1)") != std::string::npos);
  CHECK(s.brackets[1].argument.str() == "-n1-n2+n5+n6");
  CHECK(s.brackets[3].argument.str() == "eps+n1+n3+n4+n5+2");
}

TEST_CASE("rule 1 fragment") {
  std::set<std::string> vars{"x1", "x2", "x3"};
  IndexNamer names;
  IntegrandSpec s = parse_spec("int[x1,x2,x3] (x1+x2+x3)^(-D/2-q)");
  const auto& m = std::get<MultinomialFactor>(s.factors[0]);
  Fragment f = expand_rule1(m.summands, m.exponent, vars, names, "rule1");
  CHECK(f.indices.size() == 3);
  REQUIRE(f.brackets.size() == 1);
  CHECK(f.brackets[0].argument.str() == "1/2*D+n1+n2+n3+q");
  REQUIRE(f.coefficient.gammas.size() == 1);
  CHECK(f.coefficient.gammas[0].power == -1);
  CHECK(f.variable_exponents.at("x2").str() == "n2");
}

TEST_CASE("negative summand constants go into the sign") {
  BracketSeries s = expand_text("int[x] x^(a-1) * (1 - 2*x)^(-b)");
  CHECK(s.coefficient.sign_exponent.str() == "n2");
  CHECK(s.str().find("(2)^(n2)") != std::string::npos);
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(expand(parse_spec("int[x,y] x^a * exp(-x)")), Error);
  CHECK_THROWS_AS(expand(parse_spec("int[x] x^a")), Error);
  ExpandOptions o;
  o.split = SummandSplit{5, "A"};
  CHECK_THROWS_AS(expand(parse_spec("int[x] x^a * (1+x)^(-b)"), o), Error);
}

TEST_CASE("index and bracket bookkeeping over the corpus") {
  const char* specs[] = {"int[x] x^nu * exp(-alpha*x) * besselj(nu, beta*x)",
                         "int[x,y] 2 * x^k * y^k * ( x*y*(x+y) + (x+y) )^-(k+1)",
                         "int[x,y,z] 2/3 * x^k*y^k*z^k * (x*y*z*(x+y) + z*(x+y) + x*y*z^2 + x*y)^(-k-1)",
                         "int[x1,x2,x3] x1^(a1-1) * x2^(a2-1) * x3^(a3-1) * exp(x1*m2) * "
                         "exp(-s*x1*x2/(x1+x2+x3)) * (x1+x2+x3)^(-D/2)",
                         "int[x,y] 2 * x^(al-1) * y^(be-1) * (x+y)^(-r) * (x*y+1)^(-s)"};
  for (const char* t : specs) {
    const IntegrandSpec spec = parse_spec(t);
    const ExpansionResult r = expand(spec);
    std::size_t created = 0, integrate = 0;
    for (const auto& s : r.trace.steps) created += s.created.size();
    for (const auto& b : r.series.brackets) integrate += b.origin.rule == "integrate";
    CHECK(created == r.series.indices.size());
    CHECK(integrate == spec.variables.size());
    CHECK(r.series.dimension() == r.series.indices.size() - r.series.brackets.size());
  }
}
