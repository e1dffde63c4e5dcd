#include <doctest.h>

#include "mob/affine.hpp"
#include "mob/bracket_series.hpp"
#include "mob/error.hpp"
#include "mob/rational.hpp"

#include <random>

using namespace mob;

TEST_CASE("rational parsing and formatting") {
  CHECK(to_string(*parse_rational("6/4")) == "3/2");
  CHECK(*parse_rational("0.125") == Rational(1, 8));
  CHECK(*parse_rational("-3.5e-2") == Rational(-7, 200));
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK(*exact_root(Rational(9, 4), 2) == Rational(3, 2));
  CHECK_FALSE(exact_root(Rational(2), 2).has_value());
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("natural name ordering") {
  NameLess less;
  CHECK(less("n2", "n10"));
  CHECK_FALSE(less("n10", "n2"));
  CHECK(less("a", "b"));
}

TEST_CASE("affine arithmetic and substitution") {
  AffineForm k = AffineForm::symbol("k"), n = AffineForm::symbol("n");
  AffineForm f = n + 2 * k + 2 * AffineForm::symbol("nu") + AffineForm(1);
  CHECK(f.str() == "2*k+n+2*nu+1");
  Substitution s{{"n", -2 * k - 2 * AffineForm::symbol("nu") - AffineForm(1)}};
  CHECK(affine_substitute(f, s).is_zero());
  CHECK((n - n).str() == "0");
  CHECK((n / Rational(-2) - AffineForm::symbol("nu") - AffineForm(Rational(1, 2))).str() == "-1/2*n-nu-1/2");
}

TEST_CASE("param monomial") {
  ParamMonomial b = ParamMonomial::symbol("beta") * ParamMonomial(Rational(1, 2));
  CHECK(b.str() == "beta/2");
  ParamMonomial m = ParamMonomial(Rational(-1)) * ParamMonomial::symbol("beta", 2) * ParamMonomial::symbol("alpha", -2);
  CHECK(m.str() == "-beta^2/alpha^2");
  CHECK(ParamMonomial(Rational(4)).pow(Rational(1, 2)).coefficient() == 2);
  CHECK_THROWS(ParamMonomial(Rational(2)).pow(Rational(1, 2)));
}

TEST_CASE("bracket series text round trip and canonical form") {
  const char* texts[] = {
      "sum[n1,n2] phi(n1,n2) * alpha^(n1) * (beta/2)^(2*n2+nu) / Gamma(n2+nu+1) * <n1+2*n2+2*nu+1>",
      "sum[n] phi(n) * <n+a>",
      "sum[n1,n2,n3,n4] phi(n1,n2,n3,n4) / Gamma(k+1) / Gamma(-n1-n2) * <n1+n2+k+1> * <-n1-n2+n3+n4> * "
      "<n1+n3+k+1> * <n1+n4+k+1>",
  };
  for (const char* t : texts) {
    BracketSeries s = parse_bracket_series(t);
    s.validate();
    BracketSeries c = canonicalize(s);
    CHECK(c.str() == canonicalize(c).str());
    BracketSeries back = parse_bracket_series(c.str());
    CHECK(same_value(back, c));
  }
}

TEST_CASE("canonicalize renames by first appearance") {
  BracketSeries a = parse_bracket_series("sum[p,q] phi(p,q) * x^(p) * <q+2*p+1>");
  BracketSeries b = parse_bracket_series("sum[u,v] phi(u,v) * x^(u) * <v+2*u+1>");
  CHECK(canonicalize(a).str() == canonicalize(b).str());
  CHECK(canonicalize(a).index_names() == std::vector<std::string>{"n1", "n2"});
}

TEST_CASE("structural validation") {
  CHECK_THROWS_AS(parse_bracket_series("sum[n] phi(n) * <n+1> * <n+2>").validate(), Error);
  CHECK_THROWS_AS(parse_bracket_series("sum[n,m] phi(n) * <n+1>").validate(), Error);
  CHECK_THROWS_AS(parse_bracket_series("sum[n] phi(n) * <n+1> * <a>").validate(), Error);
}

namespace {

AffineForm random_form(std::mt19937& rng) {
  static const char* names[] = {"a", "b", "n1", "n2", "k", "eps"};
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), pick(0, 5), count(0, 4);
  AffineForm f{Rational(num(rng), den(rng))};
  for (int i = count(rng); i > 0; --i) f += Rational(num(rng), den(rng)) * AffineForm::symbol(names[pick(rng)]);
  return f;
}

}  // namespace

TEST_CASE("affine forms form an exact vector space") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const AffineForm f = random_form(rng), g = random_form(rng), h = random_form(rng);
    CHECK((f + g) - g == f);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f + g == g + f);
    CHECK((f * Rational(3, 7)) * Rational(7, 3) == f);
    CHECK((f - f).is_zero());
  }
}

TEST_CASE("canonicalize preserves counts") {
  const char* texts[] = {
      "sum[p,q,r] phi(p,q,r) * x^(r) / Gamma(q+1) * <p+q+1> * <r-q+a>",
      "sum[u,v] phi(u,v) * (beta/2)^(2*v+nu) * <u+2*v+2*nu+1>",
  };
  for (const char* t : texts) {
    const BracketSeries s = parse_bracket_series(t);
    const BracketSeries c = canonicalize(s);
    CHECK(c.indices.size() == s.indices.size());
    CHECK(c.brackets.size() == s.brackets.size());
    CHECK(c.coefficient.gammas.size() == s.coefficient.gammas.size());
    CHECK(c.coefficient.powers.size() == s.coefficient.powers.size());
    CHECK(c.dimension() == s.dimension());
  }
}
