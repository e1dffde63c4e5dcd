#pragma once

#include "mob/affine.hpp"

#include <complex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mob {

struct SubSumPower;

// Product of a rational constant, variables/parameters raised to rational
// constants, and at most one level of parenthesized sub-sums.
struct Monomial {
  Rational coefficient{1};
  std::map<std::string, Rational, NameLess> powers;
  std::vector<SubSumPower> subsums;

  std::string str() const;
};

// (s_1 + ... + s_r)^exponent appearing inside a monomial; expanded last.
struct SubSumPower {
  std::vector<Monomial> summands;
  AffineForm exponent;

  std::string sum_str() const;
};

bool operator==(const Monomial& a, const Monomial& b);
bool operator==(const SubSumPower& a, const SubSumPower& b);

// var^exponent or param^exponent at top level.
struct PowerFactorSpec {
  std::string base;
  AffineForm exponent;
  friend bool operator==(const PowerFactorSpec&, const PowerFactorSpec&) = default;
};

// exp(-argument) when `negated`, exp(argument) otherwise.
struct ExpFactor {
  bool negated = true;
  Monomial argument;
  friend bool operator==(const ExpFactor&, const ExpFactor&) = default;
};

// (s_1 + ... + s_r)^exponent at top level.
struct MultinomialFactor {
  std::vector<Monomial> summands;
  AffineForm exponent;
  friend bool operator==(const MultinomialFactor&, const MultinomialFactor&) = default;
};

// besselj(order, argument).
struct KnownSeriesFactor {
  std::string function;
  AffineForm order;
  Monomial argument;
  friend bool operator==(const KnownSeriesFactor&, const KnownSeriesFactor&) = default;
};

using Factor = std::variant<PowerFactorSpec, ExpFactor, MultinomialFactor, KnownSeriesFactor>;

// Multiply the integrand by target^symbol (a regulator such as eps).
struct RegulatorRequest {
  std::string target;
  std::string symbol;
  friend bool operator==(const RegulatorRequest&, const RegulatorRequest&) = default;
};

struct IntegrandSpec {
  std::vector<Symbol> variables;
  std::vector<Symbol> parameters;
  std::vector<RegulatorRequest> regulators;
  std::vector<Factor> factors;
  Rational scale{1};

  bool is_variable(const std::string& name) const;
  bool is_parameter(const std::string& name) const;

  // DSL text that parses back to an equal spec (regulators are not part of the
  // language and are not printed).
  std::string str() const;

  friend bool operator==(const IntegrandSpec&, const IntegrandSpec&) = default;
};

// Parses the integrand language:
//   spec   := "int" "[" var ("," var)* "]" expr
//   expr   := ["-"] factor (("*" | "/") factor)*
//   factor := number | ident ["^" exp] | "exp" "(" ["-"] mono ")"
//           | "besselj" "(" aff "," mono ")" | "(" sum ")" ["^" exp]
//   sum    := ["-"] mono (("+" | "-") mono)*
//   mono   := atom (("*" | "/") atom)* ; atom := number | ident ["^" exp] | "(" sum ")" ["^" exp]
// Sub-sums nest at most one level inside a top-level sum or function argument.
// With `declared`, identifiers that are neither variables nor declared
// parameters are rejected.
IntegrandSpec parse_spec(std::string_view text, const std::optional<std::set<std::string>>& declared = std::nullopt);

// A parameter value: complex double plus the exact rational when the input was
// real and written as an integer, decimal or p/q.
struct ParamValue {
  std::complex<double> value;
  std::optional<Rational> exact;

  static ParamValue from_rational(const Rational& r);
  static ParamValue from_complex(std::complex<double> z);
};

using Assignment = std::map<std::string, ParamValue, NameLess>;

// "alpha=2,beta=1/2,x=(3,-0.5)".
Assignment parse_assignments(std::string_view text);

// Rejects names outside `known` with Error(unknown_parameter).
void check_assignment_names(const Assignment& values, const std::set<std::string>& known);

std::string format_value(const ParamValue& v);

}  // namespace mob
