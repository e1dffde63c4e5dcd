#include "mob/parser.hpp"

#include "mob/affine_parse.hpp"
#include "mob/lexer.hpp"

#include <algorithm>
#include <cstdio>

namespace mob {

namespace {

const char* kModule = "parser";

std::string rational_power_text(const std::string& base, const Rational& e) {
  if (e == 1) return base;
  if (is_integer(e) && e > 0) return base + "^" + to_string(e);
  return base + "^(" + to_string(e) + ")";
}

std::string affine_power_text(const AffineForm& e) {
  if (e == AffineForm(1)) return "";
  return "^(" + e.str() + ")";
}

std::string sum_text(const std::vector<Monomial>& summands) {
  std::string out;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    std::string s = summands[i].str();
    if (i > 0 && s.front() != '-') out += "+";
    out += s;
  }
  return out;
}

Rational raise_constant(const Rational& c, const Rational& e) {
  if (c == 0 && e <= 0) throw Error(kModule, ErrorKind::bad_value, "zero raised to a non-positive power");
  try {
    return ParamMonomial(c).pow(e).coefficient();
  } catch (const std::domain_error&) {
    throw Error(kModule, ErrorKind::unsupported,
                "constant " + to_string(c) + " raised to " + to_string(e) + " is not rational");
  }
}

Monomial monomial_pow(const Monomial& m, const Rational& e) {
  Monomial out;
  out.coefficient = raise_constant(m.coefficient, e);
  for (const auto& [name, p] : m.powers) out.powers[name] = p * e;
  for (const auto& s : m.subsums) out.subsums.push_back(SubSumPower{s.summands, s.exponent * e});
  return out;
}

void monomial_multiply(Monomial& acc, const Monomial& other) {
  acc.coefficient *= other.coefficient;
  for (const auto& [name, p] : other.powers) {
    Rational& slot = acc.powers[name];
    slot += p;
    if (slot == 0) acc.powers.erase(name);
  }
  for (const auto& s : other.subsums) acc.subsums.push_back(s);
}

bool is_nonnegative_integer(const AffineForm& e) {
  return e.is_constant() && is_integer(e.constant()) && e.constant() >= 0;
}

class SpecParser {
 public:
  SpecParser(std::string_view text, const std::optional<std::set<std::string>>& declared)
      : cur_(tokenize(text, kModule), kModule), declared_(declared) {}

  IntegrandSpec run() {
    const Token& head = cur_.peek();
    if (!head.is_word("int")) cur_.fail("spec must start with 'int[...]'");
    cur_.next();
    cur_.expect('[', "after 'int'");
    do {
      const Token& t = cur_.peek();
      std::string name = cur_.expect_identifier("integration variable");
      if (is_reserved(name)) cur_.fail_at(t, ErrorKind::syntax, "'" + name + "' is reserved");
      if (vars_.count(name)) cur_.fail_at(t, ErrorKind::syntax, "variable '" + name + "' declared twice");
      vars_.insert(name);
      spec_.variables.push_back(Symbol{name, SymbolKind::parameter});
    } while (cur_.accept(','));
    cur_.expect(']', "to close variable list");

    parse_expr();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");

    std::sort(spec_.parameters.begin(), spec_.parameters.end());
    return std::move(spec_);
  }

 private:
  static bool is_reserved(const std::string& name) {
    return name == "int" || name == "exp" || name == "besselj";
  }

  void register_symbol(const Token& at, const std::string& name) {
    if (vars_.count(name)) return;
    if (is_reserved(name)) cur_.fail_at(at, ErrorKind::syntax, "'" + name + "' is reserved");
    if (declared_ && !declared_->count(name)) {
      cur_.fail_at(at, ErrorKind::undeclared_symbol, "undeclared symbol '" + name + "'");
    }
    if (params_.insert(name).second) spec_.parameters.push_back(Symbol{name, SymbolKind::parameter});
  }

  // Exponent following the '^' token `caret`; must be affine in parameters.
  AffineForm exponent_after(const Token& caret) {
    const Token& t = cur_.peek();
    bool starts = t.type == TokenType::number || t.type == TokenType::identifier || t.is('(') || t.is('-');
    if (!starts) cur_.fail_at(caret, ErrorKind::syntax, "missing exponent after '^'");
    AffineForm e = parse_exponent(cur_);
    for (const auto& [name, c] : e.terms()) {
      if (vars_.count(name)) {
        cur_.fail_at(caret, ErrorKind::not_affine, "exponent depends on integration variable '" + name + "'");
      }
      register_symbol(caret, name);
    }
    return e;
  }

  Rational constant_exponent_after(const Token& caret) {
    AffineForm e = exponent_after(caret);
    if (!e.is_constant()) {
      cur_.fail_at(caret, ErrorKind::unsupported, "exponents inside sums and arguments must be rational constants");
    }
    return e.constant();
  }

  // sum := ["-"] mono (("+"|"-") mono)* ; `nested` when already inside a sum.
  std::vector<Monomial> parse_sum(bool nested) {
    std::vector<Monomial> out;
    out.push_back(parse_mono(nested));
    while (cur_.peek().is('+') || cur_.peek().is('-')) {
      bool minus = cur_.next().is('-');
      Monomial m = parse_mono(nested);
      if (minus) m.coefficient = -m.coefficient;
      out.push_back(std::move(m));
    }
    return out;
  }

  Monomial parse_mono(bool nested) {
    bool minus = cur_.accept('-');
    Monomial acc = parse_atom(nested);
    while (cur_.peek().is('*') || cur_.peek().is('/')) {
      const Token op = cur_.next();
      Monomial rhs = parse_atom(nested);
      if (op.is('/')) {
        if (rhs.coefficient == 0) cur_.fail_at(op, ErrorKind::bad_value, "division by zero");
        rhs = monomial_pow(rhs, Rational(-1));
      }
      monomial_multiply(acc, rhs);
    }
    if (minus) acc.coefficient = -acc.coefficient;
    return acc;
  }

  Monomial parse_atom(bool nested) {
    const Token t = cur_.peek();
    Monomial m;
    if (t.type == TokenType::number) {
      cur_.next();
      m.coefficient = parse_number_token(t, cur_);
      return m;
    }
    if (t.type == TokenType::identifier) {
      cur_.next();
      if (is_reserved(t.text)) cur_.fail_at(t, ErrorKind::unsupported, "'" + t.text + "' is not allowed inside a sum");
      register_symbol(t, t.text);
      Rational e(1);
      if (cur_.peek().is('^')) {
        const Token caret = cur_.next();
        e = constant_exponent_after(caret);
      }
      if (e != 0) m.powers[t.text] = e;
      return m;
    }
    if (t.is('(')) {
      cur_.next();
      if (cur_.peek().is(')')) cur_.fail_at(t, ErrorKind::empty_multinomial, "empty sum");
      if (nested) cur_.fail_at(t, ErrorKind::unsupported, "sums nest at most one level deep");
      std::vector<Monomial> summands = parse_sum(true);
      cur_.expect(')', "to close sum");
      AffineForm e(1);
      if (cur_.peek().is('^')) {
        const Token caret = cur_.next();
        e = exponent_after(caret);
      }
      if (summands.size() == 1) {
        if (!e.is_constant()) {
          cur_.fail_at(t, ErrorKind::unsupported, "symbolic power of a single monomial inside a sum");
        }
        return monomial_pow(summands.front(), e.constant());
      }
      if (e.is_zero()) return m;
      m.subsums.push_back(SubSumPower{std::move(summands), e});
      return m;
    }
    cur_.fail("expected number, symbol or '('");
  }

  void parse_expr() {
    if (cur_.accept('-')) spec_.scale = -spec_.scale;
    parse_factor(false);
    while (cur_.peek().is('*') || cur_.peek().is('/')) {
      bool divide = cur_.next().is('/');
      parse_factor(divide);
    }
  }

  void push_inline(const Monomial& m, const Rational& e) {
    Monomial p = monomial_pow(m, e);
    spec_.scale *= p.coefficient;
    for (const auto& [name, q] : p.powers) spec_.factors.emplace_back(PowerFactorSpec{name, AffineForm(q)});
    for (const auto& s : p.subsums) spec_.factors.emplace_back(MultinomialFactor{s.summands, s.exponent});
  }

  void parse_factor(bool divide) {
    const Token t = cur_.peek();
    if (t.type == TokenType::number) {
      cur_.next();
      Rational c = parse_number_token(t, cur_);
      if (divide) {
        if (c == 0) cur_.fail_at(t, ErrorKind::bad_value, "division by zero");
        spec_.scale /= c;
      } else {
        spec_.scale *= c;
      }
      return;
    }
    if (t.is_word("exp") && cur_.peek(1).is('(')) {
      cur_.next();
      cur_.next();
      bool negated = cur_.accept('-');
      Monomial arg = parse_mono(false);
      cur_.expect(')', "to close exp(");
      if (arg.coefficient < 0) {
        arg.coefficient = -arg.coefficient;
        negated = !negated;
      }
      if (divide) negated = !negated;
      spec_.factors.emplace_back(ExpFactor{negated, std::move(arg)});
      return;
    }
    if (t.is_word("besselj") && cur_.peek(1).is('(')) {
      if (divide) cur_.fail_at(t, ErrorKind::unsupported, "division by besselj");
      cur_.next();
      cur_.next();
      const Token order_at = cur_.peek();
      AffineForm order = parse_affine(cur_);
      for (const auto& [name, c] : order.terms()) {
        if (vars_.count(name)) cur_.fail_at(order_at, ErrorKind::not_affine, "Bessel order depends on a variable");
        register_symbol(order_at, name);
      }
      cur_.expect(',', "after Bessel order");
      Monomial arg = parse_mono(false);
      cur_.expect(')', "to close besselj(");
      spec_.factors.emplace_back(KnownSeriesFactor{"besselj", order, std::move(arg)});
      return;
    }
    if (t.type == TokenType::identifier) {
      cur_.next();
      register_symbol(t, t.text);
      AffineForm e(1);
      if (cur_.peek().is('^')) {
        const Token caret = cur_.next();
        e = exponent_after(caret);
      }
      if (divide) e = -e;
      if (!e.is_zero()) spec_.factors.emplace_back(PowerFactorSpec{t.text, e});
      return;
    }
    if (t.is('(')) {
      cur_.next();
      if (cur_.peek().is(')')) cur_.fail_at(t, ErrorKind::empty_multinomial, "empty multinomial");
      std::vector<Monomial> summands = parse_sum(false);
      cur_.expect(')', "to close multinomial");
      AffineForm e(1);
      if (cur_.peek().is('^')) {
        const Token caret = cur_.next();
        e = exponent_after(caret);
      }
      if (divide) e = -e;
      if (summands.size() == 1) {
        if (!e.is_constant()) {
          spec_.factors.emplace_back(MultinomialFactor{std::move(summands), e});
        } else {
          push_inline(summands.front(), e.constant());
        }
        return;
      }
      if (is_nonnegative_integer(e)) {
        cur_.fail_at(t, ErrorKind::unsupported,
                     "nonnegative integer power of a sum; expand it into separate integrals");
      }
      spec_.factors.emplace_back(MultinomialFactor{std::move(summands), e});
      return;
    }
    cur_.fail("expected a factor");
  }

  TokenCursor cur_;
  const std::optional<std::set<std::string>>& declared_;
  IntegrandSpec spec_;
  std::set<std::string> vars_;
  std::set<std::string> params_;
};

ParamValue parse_value(TokenCursor& cur) {
  auto signed_rational = [&]() {
    bool minus = cur.accept('-');
    if (!minus) cur.accept('+');
    const Token& t = cur.peek();
    if (t.type != TokenType::number) cur.fail_at(t, ErrorKind::bad_value, "expected a number");
    cur.next();
    Rational r = parse_number_token(t, cur);
    if (cur.peek().is('/')) {
      const Token slash = cur.next();
      const Token& d = cur.peek();
      if (d.type != TokenType::number) cur.fail_at(d, ErrorKind::bad_value, "expected a denominator");
      cur.next();
      Rational q = parse_number_token(d, cur);
      if (q == 0) cur.fail_at(slash, ErrorKind::bad_value, "zero denominator");
      r /= q;
    }
    return minus ? Rational(-r) : r;
  };
  if (cur.accept('(')) {
    Rational re = signed_rational();
    cur.expect(',', "between real and imaginary parts");
    const bool negative_im = cur.peek().is('-');
    Rational im = signed_rational();
    cur.expect(')', "to close complex value");
    // An explicit zero imaginary part keeps its sign and picks the side of a cut.
    if (im == 0) return ParamValue::from_complex({to_double(re), negative_im ? -0.0 : 0.0});
    return ParamValue::from_complex({to_double(re), to_double(im)});
  }
  return ParamValue::from_rational(signed_rational());
}

}  // namespace

bool operator==(const Monomial& a, const Monomial& b) {
  return a.coefficient == b.coefficient && a.powers == b.powers && a.subsums == b.subsums;
}

bool operator==(const SubSumPower& a, const SubSumPower& b) {
  return a.summands == b.summands && a.exponent == b.exponent;
}

std::string Monomial::str() const {
  std::vector<std::string> parts;
  for (const auto& [name, e] : powers) parts.push_back(rational_power_text(name, e));
  for (const auto& s : subsums) parts.push_back("(" + s.sum_str() + ")" + affine_power_text(s.exponent));
  std::string out;
  if (parts.empty()) return to_string(coefficient);
  if (coefficient == -1) {
    out = "-";
  } else if (coefficient != 1) {
    out = to_string(coefficient) + "*";
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i];
  }
  return out;
}

std::string SubSumPower::sum_str() const { return sum_text(summands); }

bool IntegrandSpec::is_variable(const std::string& name) const {
  return std::any_of(variables.begin(), variables.end(), [&](const Symbol& s) { return s.name == name; });
}

bool IntegrandSpec::is_parameter(const std::string& name) const {
  return std::any_of(parameters.begin(), parameters.end(), [&](const Symbol& s) { return s.name == name; });
}

std::string IntegrandSpec::str() const {
  std::string out = "int[";
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (i) out += ",";
    out += variables[i].name;
  }
  out += "] ";
  std::vector<std::string> parts;
  if (scale != 1 || factors.empty()) parts.push_back(to_string(scale));
  for (const auto& f : factors) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, PowerFactorSpec>) {
            parts.push_back(v.base + affine_power_text(v.exponent));
          } else if constexpr (std::is_same_v<T, ExpFactor>) {
            parts.push_back(std::string("exp(") + (v.negated ? "-" : "") + v.argument.str() + ")");
          } else if constexpr (std::is_same_v<T, MultinomialFactor>) {
            parts.push_back("(" + sum_text(v.summands) + ")^(" + v.exponent.str() + ")");
          } else {
            parts.push_back(v.function + "(" + v.order.str() + ", " + v.argument.str() + ")");
          }
        },
        f);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " * ";
    out += parts[i];
  }
  return out;
}

IntegrandSpec parse_spec(std::string_view text, const std::optional<std::set<std::string>>& declared) {
  return SpecParser(text, declared).run();
}

// Real values sit just below the real axis, so a cut crossing them is read on its
// principal side: (-m2)^p at m2 = 1 is exp(i pi p).
ParamValue ParamValue::from_rational(const Rational& r) { return ParamValue{{to_double(r), -0.0}, r}; }

ParamValue ParamValue::from_complex(std::complex<double> z) { return ParamValue{z, std::nullopt}; }

Assignment parse_assignments(std::string_view text) {
  TokenCursor cur(tokenize(text, kModule), kModule);
  Assignment out;
  if (cur.at_end()) return out;
  do {
    const Token name_at = cur.peek();
    std::string name = cur.expect_identifier("parameter name");
    cur.expect('=', "after parameter name");
    ParamValue v = parse_value(cur);
    if (out.count(name)) cur.fail_at(name_at, ErrorKind::bad_value, "parameter '" + name + "' assigned twice");
    out.emplace(name, v);
  } while (cur.accept(','));
  if (!cur.at_end()) cur.fail("expected ',' between assignments");
  return out;
}

void check_assignment_names(const Assignment& values, const std::set<std::string>& known) {
  for (const auto& [name, v] : values) {
    if (!known.count(name)) throw Error(kModule, ErrorKind::unknown_parameter, "unknown parameter '" + name + "'");
  }
}

std::string format_value(const ParamValue& v) {
  if (v.exact) return to_string(*v.exact);
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", v.value.real(), v.value.imag());
  return buf;
}

}  // namespace mob
