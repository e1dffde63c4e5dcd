#include <doctest.h>

#include "corpus.hpp"
#include "mob/analyze.hpp"
#include "mob/numerics.hpp"
#include "mob/solve.hpp"

#include <algorithm>
#include <cmath>

using namespace mob;

namespace {

const char* kCorpus[] = {"bessel.mob", "c2k.mob", "c3k.mob", "c4.mob", "feynman_h.mob", "gamma.mob", "jrs.mob"};

std::map<std::string, Rational, NameLess> det_by_free(const BracketSeries& s) {
  std::map<std::string, Rational, NameLess> out;
  for (const auto& a : enumerate_assignments(s).assignments) {
    std::vector<std::string> f = a.free_indices;
    std::sort(f.begin(), f.end());
    std::string key;
    for (const auto& x : f) key += x + ",";
    out[key] = a.det_abs;
  }
  return out;
}

// Exact value of a constant term whose Gamma arguments are positive integers.
Rational exact_constant(const CoefficientTerm& t, const Rational& scale,
                        const std::map<std::string, Rational, NameLess>& v) {
  REQUIRE(t.powers.empty());
  Rational r = scale;
  for (const auto& g : t.gammas) {
    const Rational a = evaluate_affine(g.argument, v);
    REQUIRE(is_integer(a));
    REQUIRE(a >= 1);
    Rational f(1);
    for (std::int64_t i = 2; i < to_int64(numerator(a)); ++i) f = f * Rational(i);
    r = r * pow(f, g.power);
  }
  const Rational s = evaluate_affine(t.sign_exponent, v);
  REQUIRE(is_integer(s));
  return to_int64(numerator(s)) % 2 == 0 ? r : -r;
}

}  // namespace

TEST_CASE("substituting a solution annihilates every bracket") {
  for (const char* name : kCorpus) {
    const BracketSeries s = corpus::series(name);
    for (const auto& a : enumerate_assignments(s).assignments) {
      for (const auto& b : s.brackets) CHECK(affine_substitute(b.argument, a.bound).is_zero());
    }
  }
}

TEST_CASE("determinants do not depend on bracket or index order") {
  for (const char* name : kCorpus) {
    const BracketSeries s = corpus::series(name);
    BracketSeries p = s;
    std::reverse(p.brackets.begin(), p.brackets.end());
    std::reverse(p.indices.begin(), p.indices.end());
    std::rotate(p.brackets.begin(), p.brackets.begin() + (p.brackets.size() > 1 ? 1 : 0), p.brackets.end());
    CHECK(det_by_free(s) == det_by_free(p));
  }
}

TEST_CASE("representation dimensions") {
  for (const char* name : kCorpus) {
    const BracketSeries s = corpus::series(name);
    for (const auto& a : enumerate_assignments(s).assignments) {
      CHECK(a.free_indices.size() == s.dimension());
      CHECK(a.bound.size() == s.brackets.size());
    }
  }
}

TEST_CASE("bessel determinants") {
  const BracketSeries s = corpus::series("bessel.mob");
  auto d = det_by_free(s);
  CHECK(d.at("n1,") == Rational(2));
  CHECK(d.at("n2,") == Rational(1));
}

TEST_CASE("feynman series has two singular choices") {
  const AssignmentSet set = enumerate_assignments(corpus::series("feynman_h.mob"));
  CHECK(set.assignments.size() == 3);
  CHECK(set.singular.size() == 2);
}

TEST_CASE("c2 at k = 1 is exactly 1") {
  const BracketSeries s = corpus::series("c2k.mob");
  CHECK(s.dimension() == 0);
  const auto a = enumerate_assignments(s).assignments;
  REQUIRE(a.size() == 1);
  const SeriesRepresentation rep = evaluate_assignment(s, a[0]);
  CHECK_FALSE(rep.free_index.has_value());
  CHECK(exact_constant(rep.term, rep.prefactor, {{"k", Rational(1)}}) == Rational(1));
  CHECK(evaluate_constant(rep.term, rep.prefactor, {{"k", 1.0}}).real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sum phi(n) <n+a> equals Gamma(a)") {
  const BracketSeries s = parse_bracket_series("sum[n] phi(n) * <n+a>");
  const auto a = enumerate_assignments(s).assignments;
  REQUIRE(a.size() == 1);
  const SeriesRepresentation rep = evaluate_assignment(s, a[0]);
  for (double x : {0.5, 1.0, 3.7}) {
    const cplx v = evaluate_constant(rep.term, rep.prefactor, {{"a", x}});
    CHECK(std::abs(v - std::tgamma(x)) <= 1e-12 * std::tgamma(x));
  }
}

TEST_CASE("rule 1 with one summand reproduces the power") {
  // (c*alpha)^X expanded by rule 1 and evaluated by rule 2.
  const Rational c(2, 3);
  std::set<std::string> vars;
  IndexNamer names;
  Monomial m;
  m.coefficient = c;
  m.powers["alpha"] = Rational(1);
  const Fragment f = expand_rule1({m}, AffineForm::symbol("X"), vars, names, "rule1");
  BracketSeries s;
  s.indices = f.indices;
  s.coefficient = f.coefficient;
  s.brackets = f.brackets;
  s.scale = f.scale;
  s.validate();
  const auto a = enumerate_assignments(s).assignments;
  REQUIRE(a.size() == 1);
  const SeriesRepresentation rep = evaluate_assignment(s, a[0]);
  for (double alpha : {0.25, 2.0 / 3.0, 1.5, 7.0}) {
    for (double X : {-2.5, -1.0 / 3.0, 0.7, 2.2}) {
      const cplx v = evaluate_constant(rep.term, rep.prefactor, {{"alpha", alpha}, {"X", X}});
      const double expected = std::pow(to_double(c) * alpha, X);
      CHECK(std::abs(v - expected) <= 1e-12 * expected);
    }
  }
}

TEST_CASE("dedupe keeps the first of equal representations") {
  const BracketSeries s = corpus::series("jrs.mob");
  std::vector<SeriesRepresentation> reps;
  for (const auto& a : enumerate_assignments(s).assignments) reps.push_back(evaluate_assignment(s, a));
  const auto kept = dedupe(reps);
  std::size_t merged = 0;
  for (const auto& r : kept) merged += r.merged.size();
  CHECK(kept.size() + merged == reps.size());
}
