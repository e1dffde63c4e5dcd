#include "mob/affine.hpp"

#include <cctype>
#include <stdexcept>

namespace mob {

bool NameLess::operator()(const std::string& a, const std::string& b) const {
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      std::size_t is = i;
      std::size_t js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return ie - is < je - js;
      for (std::size_t k = 0; k < ie - is; ++k) {
        if (a[is + k] != b[js + k]) return a[is + k] < b[js + k];
      }
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::index: return "index";
    case SymbolKind::parameter: return "parameter";
    case SymbolKind::regulator: return "regulator";
  }
  return "?";
}

AffineForm AffineForm::symbol(const std::string& name, const Rational& coefficient) {
  AffineForm f;
  f.add_term(name, coefficient);
  return f;
}

Rational AffineForm::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

AffineForm AffineForm::without(const std::string& name) const {
  AffineForm f = *this;
  f.terms_.erase(name);
  return f;
}

void AffineForm::add_term(const std::string& name, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(name, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

AffineForm& AffineForm::operator+=(const AffineForm& other) {
  for (const auto& [name, c] : other.terms_) add_term(name, c);
  constant_ += other.constant_;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
  for (const auto& [name, c] : other.terms_) add_term(name, -c);
  constant_ -= other.constant_;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [name, c] : terms_) c *= factor;
  constant_ *= factor;
  return *this;
}

AffineForm& AffineForm::operator/=(const Rational& divisor) {
  if (divisor == 0) throw std::domain_error("AffineForm division by zero");
  return *this *= Rational(1) / divisor;
}

std::string AffineForm::str() const {
  std::string out;
  for (const auto& [name, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (c < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += name;
  }
  if (constant_ != 0 || out.empty()) {
    if (constant_ >= 0 && !out.empty()) out += "+";
    out += to_string(constant_);
  }
  return out;
}

AffineForm affine_substitute(const AffineForm& form, const Substitution& assignment) {
  AffineForm out(form.constant());
  for (const auto& [name, c] : form.terms()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) {
      out += AffineForm::symbol(name, c);
    } else {
      out += it->second * c;
    }
  }
  return out;
}

ParamMonomial ParamMonomial::symbol(const std::string& name, const Rational& exponent) {
  ParamMonomial m;
  m.multiply_exponent(name, exponent);
  return m;
}

void ParamMonomial::multiply_exponent(const std::string& name, const Rational& exponent) {
  if (exponent == 0) return;
  auto [it, inserted] = exponents_.emplace(name, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) exponents_.erase(it);
  }
}

ParamMonomial& ParamMonomial::operator*=(const ParamMonomial& other) {
  coefficient_ *= other.coefficient_;
  for (const auto& [name, e] : other.exponents_) multiply_exponent(name, e);
  return *this;
}

ParamMonomial ParamMonomial::pow(const Rational& exponent) const {
  ParamMonomial out;
  if (exponent == 0) return out;
  if (is_integer(exponent)) {
    out.coefficient_ = mob::pow(coefficient_, to_int64(numerator(exponent)));
  } else {
    Rational base = mob::pow(coefficient_, to_int64(numerator(exponent)));
    auto root = exact_root(base, static_cast<unsigned>(to_int64(denominator(exponent))));
    if (!root) throw std::domain_error("inexact rational power of constant " + to_string(coefficient_));
    out.coefficient_ = *root;
  }
  for (const auto& [name, e] : exponents_) out.exponents_.emplace(name, e * exponent);
  return out;
}

ParamMonomial ParamMonomial::abs() const {
  ParamMonomial out = *this;
  if (out.coefficient_ < 0) out.coefficient_ = -out.coefficient_;
  return out;
}

namespace {

std::string power_text(const std::string& name, const Rational& e) {
  if (e == 1) return name;
  if (is_integer(e)) return name + "^" + to_string(e);
  return name + "^(" + to_string(e) + ")";
}

}  // namespace

std::string ParamMonomial::str() const {
  std::string num;
  std::string den;
  Rational mag = coefficient_ < 0 ? Rational(-coefficient_) : coefficient_;
  if (numerator(mag) != 1) num = numerator(mag).str();
  if (denominator(mag) != 1) den = "/" + denominator(mag).str();
  for (const auto& [name, e] : exponents_) {
    if (e > 0) {
      if (!num.empty()) num += "*";
      num += power_text(name, e);
    } else {
      den += "/" + power_text(name, -e);
    }
  }
  if (num.empty()) num = "1";
  return (coefficient_ < 0 ? "-" : "") + num + den;
}

}  // namespace mob
