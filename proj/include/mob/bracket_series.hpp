#pragma once

#include "mob/affine.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mob {

// Gamma(argument)^power; negative powers sit in the denominator.
struct GammaFactor {
  AffineForm argument;
  int power = 1;

  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

// base^exponent, evaluated on the principal branch at numeric time.
struct PowerFactor {
  ParamMonomial base;
  AffineForm exponent;

  friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

// Symbolic coefficient of a bracket series or series representation:
//   prod phi(i) * (-1)^sign * prod base^exponent * prod Gamma(arg)^power
// where phi(i) = (-1)^i / Gamma(i+1) is the indicator of index i.
struct CoefficientTerm {
  std::vector<PowerFactor> powers;
  std::vector<GammaFactor> gammas;
  AffineForm sign_exponent;
  std::vector<std::string> phi_indices;

  // Merges equal bases and gamma arguments, drops trivial factors, folds a
  // literal (-1) base into the sign and sorts everything canonically.
  void normalize();

  CoefficientTerm& operator*=(const CoefficientTerm& other);
  CoefficientTerm substitute(const Substitution& assignment) const;
  void rename(const std::map<std::string, std::string, NameLess>& names);

  // Every symbol mentioned by any affine form or monomial base.
  std::set<std::string, NameLess> symbols() const;
  bool depends_on(const std::string& name) const;

  friend bool operator==(const CoefficientTerm&, const CoefficientTerm&) = default;
};

// Provenance of a bracket or index. Not part of the canonical value.
struct Origin {
  std::string rule;  // "integrate", "rule1", "deferred", "exp", "besselj", ...
  std::string detail;  // variable name for "integrate"
  int group = -1;      // multinomial expansion counter for rule1/deferred
  int position = -1;   // summand position inside that multinomial

  friend bool operator==(const Origin&, const Origin&) = default;
};

struct Bracket {
  AffineForm argument;
  Origin origin;
};

class BracketSeries {
 public:
  std::vector<Symbol> indices;
  CoefficientTerm coefficient;
  std::vector<Bracket> brackets;
  Rational scale{1};
  std::map<std::string, Origin, NameLess> index_origins;

  std::size_t dimension() const { return indices.size() - brackets.size(); }
  bool is_index(const std::string& name) const;
  std::vector<std::string> index_names() const;

  // Throws Error(structural/over-determined) on broken invariants.
  void validate() const;

  // Canonical text:
  //   sum[n1,n2] phi(n1,n2) * alpha^(n1) * (beta/2)^(2*n2+nu) / Gamma(n2+nu+1) * <n1+2*n2+2*nu+1>
  std::string str() const;
};

// Structural equality of the mathematical content (provenance ignored).
bool same_value(const BracketSeries& a, const BracketSeries& b);

// Parses the canonical text form. Symbols outside sum[...] are parameters.
BracketSeries parse_bracket_series(std::string_view text);

// Renames indices to n1, n2, ... in order of first appearance (brackets left to
// right, then the coefficient) and normalizes the coefficient.
BracketSeries canonicalize(const BracketSeries& series);

std::string format_coefficient(const CoefficientTerm& term, const Rational& scale);

}  // namespace mob
