#pragma once

#include "mob/bracket_series.hpp"
#include "mob/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mob {

using VariableExponents = std::map<std::string, AffineForm, NameLess>;

// Partial expansion result. Variable powers and not-yet-expanded sub-sums are
// carried separately until integration.
struct Fragment {
  std::vector<Symbol> indices;
  CoefficientTerm coefficient;
  std::vector<Bracket> brackets;
  Rational scale{1};
  VariableExponents variable_exponents;
  std::vector<SubSumPower> deferred;
  std::map<std::string, Origin, NameLess> index_origins;

  Fragment& operator*=(const Fragment& other);
};

// Hands out n1, n2, ... in creation order.
class IndexNamer {
 public:
  std::string fresh() { return "n" + std::to_string(next_++); }
  int group() { return group_++; }

 private:
  int next_ = 1;
  int group_ = 1;
};

struct TraceStep {
  std::string rule;
  std::vector<std::string> created;
  Fragment fragment;
  std::string text;
};

struct ExpansionTrace {
  std::vector<TraceStep> steps;

  // Product of all step fragments, with the variable powers dropped.
  BracketSeries replay() const;
};

struct ExpansionResult {
  BracketSeries series;
  ExpansionTrace trace;
};

// Multiplies the coefficient by symbol^{n_i} for summand `position` (1-based)
// of the first top-level multinomial.
struct SummandSplit {
  int position = 1;
  std::string symbol = "A";
};

struct ExpandOptions {
  std::optional<SummandSplit> split;
};

// (s_1+...+s_r)^exponent = sum phi(m) prod s_i^{m_i} <-exponent + sum m_i> / Gamma(-exponent).
Fragment expand_rule1(const std::vector<Monomial>& summands, const AffineForm& exponent,
                      const std::set<std::string>& variables, IndexNamer& names, const std::string& rule);

// exp(-u) = sum phi(n) u^n ; exp(u) = sum phi(n) (-1)^n u^n ;
// besselj(nu, u) = sum phi(k) (u/2)^{2k+nu} / Gamma(k+nu+1).
Fragment expand_known_series(const Factor& factor, const std::set<std::string>& variables, IndexNamer& names);

// Expands one deferred sub-sum power; a zero exponent gives the unit fragment.
Fragment expand_deferred(const SubSumPower& power, const std::set<std::string>& variables, IndexNamer& names);

// One bracket <exponent + 1> per integration variable, in declaration order.
Fragment integrate_monomials(const VariableExponents& exponents, const std::vector<Symbol>& variables);

ExpansionResult expand(const IntegrandSpec& spec, const ExpandOptions& options = {});

// Sum of canonical summand texts; equal keys denote the same sum.
std::string sum_key(const std::vector<Monomial>& summands);

}  // namespace mob
