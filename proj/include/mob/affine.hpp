#pragma once

#include "mob/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace mob {

// Natural ordering of identifiers: "n2" < "n10", digit runs compare numerically.
struct NameLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

enum class SymbolKind { index, parameter, regulator };

const char* to_string(SymbolKind kind);

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::parameter;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend bool operator<(const Symbol& a, const Symbol& b) { return NameLess{}(a.name, b.name); }
};

// Exact affine expression  sum_i c_i * s_i + c_0  over named symbols. Zero
// coefficients are never stored, so equality is structural.
class AffineForm {
 public:
  using Terms = std::map<std::string, Rational, NameLess>;

  AffineForm() = default;
  explicit AffineForm(Rational constant) : constant_(std::move(constant)) {}
  AffineForm(int constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)

  static AffineForm symbol(const std::string& name, const Rational& coefficient = Rational(1));

  const Terms& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(const std::string& name) const;

  bool is_constant() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && constant_ == 0; }
  bool depends_on(const std::string& name) const { return terms_.count(name) != 0; }

  // Copy with the named symbol's term removed.
  AffineForm without(const std::string& name) const;

  AffineForm& operator+=(const AffineForm& other);
  AffineForm& operator-=(const AffineForm& other);
  AffineForm& operator*=(const Rational& factor);
  AffineForm& operator/=(const Rational& divisor);

  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational& f) { return a *= f; }
  friend AffineForm operator*(const Rational& f, AffineForm a) { return a *= f; }
  friend AffineForm operator/(AffineForm a, const Rational& d) { return a /= d; }
  friend AffineForm operator-(AffineForm a) { return a *= Rational(-1); }

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  // Total order on canonical text; used for sorting factor lists.
  friend bool operator<(const AffineForm& a, const AffineForm& b) { return a.str() < b.str(); }

  // Canonical text, e.g. "n1+2*n2+2*nu+1", "-1/2*n-nu-1/2", "0".
  std::string str() const;

 private:
  void add_term(const std::string& name, const Rational& coefficient);

  Terms terms_;
  Rational constant_{0};
};

using Substitution = std::map<std::string, AffineForm, NameLess>;

// Replaces every symbol in `assignment` by its affine image; other symbols pass
// through unchanged.
AffineForm affine_substitute(const AffineForm& form, const Substitution& assignment);

// Exact monomial in parameters: c * prod p_i^{e_i} with rational exponents.
// Used for the bases of powers and for hypergeometric arguments.
class ParamMonomial {
 public:
  using Exponents = std::map<std::string, Rational, NameLess>;

  ParamMonomial() = default;
  explicit ParamMonomial(Rational coefficient) : coefficient_(std::move(coefficient)) {}
  static ParamMonomial symbol(const std::string& name, const Rational& exponent = Rational(1));

  const Rational& coefficient() const { return coefficient_; }
  const Exponents& exponents() const { return exponents_; }
  bool is_one() const { return coefficient_ == 1 && exponents_.empty(); }
  bool is_constant() const { return exponents_.empty(); }

  ParamMonomial& operator*=(const ParamMonomial& other);
  friend ParamMonomial operator*(ParamMonomial a, const ParamMonomial& b) { return a *= b; }
  // Raises to a rational power. Fractional powers are only exact for the
  // parameter part; the coefficient must then be an exact root.
  ParamMonomial pow(const Rational& exponent) const;
  ParamMonomial inverse() const { return pow(Rational(-1)); }
  ParamMonomial abs() const;

  void multiply_exponent(const std::string& name, const Rational& exponent);

  friend bool operator==(const ParamMonomial&, const ParamMonomial&) = default;
  friend bool operator<(const ParamMonomial& a, const ParamMonomial& b) { return a.str() < b.str(); }

  // Canonical text, e.g. "beta/2", "-beta^2/alpha^2", "s/m2", "1".
  std::string str() const;

 private:
  Rational coefficient_{1};
  Exponents exponents_;
};

}  // namespace mob
