#include "mob/bracket_series.hpp"

#include "mob/affine_parse.hpp"
#include "mob/error.hpp"
#include "mob/lexer.hpp"

#include <algorithm>

namespace mob {

void CoefficientTerm::normalize() {
  std::vector<PowerFactor> merged;
  for (auto& p : powers) {
    if (p.base.is_constant() && p.base.coefficient() == -1) {
      sign_exponent += p.exponent;
      continue;
    }
    auto it = std::find_if(merged.begin(), merged.end(), [&](const PowerFactor& q) { return q.base == p.base; });
    if (it == merged.end()) {
      merged.push_back(p);
    } else {
      it->exponent += p.exponent;
    }
  }
  std::erase_if(merged, [](const PowerFactor& p) { return p.exponent.is_zero() || p.base.is_one(); });
  std::sort(merged.begin(), merged.end(), [](const PowerFactor& a, const PowerFactor& b) {
    std::string sa = a.base.str();
    std::string sb = b.base.str();
    return sa != sb ? sa < sb : a.exponent < b.exponent;
  });
  powers = std::move(merged);

  std::vector<GammaFactor> gm;
  for (auto& g : gammas) {
    auto it = std::find_if(gm.begin(), gm.end(), [&](const GammaFactor& q) { return q.argument == g.argument; });
    if (it == gm.end()) {
      gm.push_back(g);
    } else {
      it->power += g.power;
    }
  }
  std::erase_if(gm, [](const GammaFactor& g) { return g.power == 0; });
  std::sort(gm.begin(), gm.end(), [](const GammaFactor& a, const GammaFactor& b) {
    if (a.power > 0 && b.power < 0) return true;
    if (a.power < 0 && b.power > 0) return false;
    std::string sa = a.argument.str();
    std::string sb = b.argument.str();
    return sa != sb ? sa < sb : a.power < b.power;
  });
  gammas = std::move(gm);

  std::sort(phi_indices.begin(), phi_indices.end(), NameLess{});
  phi_indices.erase(std::unique(phi_indices.begin(), phi_indices.end()), phi_indices.end());
}

CoefficientTerm& CoefficientTerm::operator*=(const CoefficientTerm& other) {
  powers.insert(powers.end(), other.powers.begin(), other.powers.end());
  gammas.insert(gammas.end(), other.gammas.begin(), other.gammas.end());
  sign_exponent += other.sign_exponent;
  phi_indices.insert(phi_indices.end(), other.phi_indices.begin(), other.phi_indices.end());
  return *this;
}

CoefficientTerm CoefficientTerm::substitute(const Substitution& assignment) const {
  CoefficientTerm out;
  for (const auto& p : powers) out.powers.push_back({p.base, affine_substitute(p.exponent, assignment)});
  for (const auto& g : gammas) out.gammas.push_back({affine_substitute(g.argument, assignment), g.power});
  out.sign_exponent = affine_substitute(sign_exponent, assignment);
  for (const auto& i : phi_indices) {
    if (!assignment.count(i)) out.phi_indices.push_back(i);
  }
  return out;
}

namespace {

AffineForm rename_form(const AffineForm& f, const std::map<std::string, std::string, NameLess>& names) {
  Substitution s;
  for (const auto& [from, to] : names) s.emplace(from, AffineForm::symbol(to));
  return affine_substitute(f, s);
}

}  // namespace

void CoefficientTerm::rename(const std::map<std::string, std::string, NameLess>& names) {
  for (auto& p : powers) p.exponent = rename_form(p.exponent, names);
  for (auto& g : gammas) g.argument = rename_form(g.argument, names);
  sign_exponent = rename_form(sign_exponent, names);
  for (auto& i : phi_indices) {
    auto it = names.find(i);
    if (it != names.end()) i = it->second;
  }
}

std::set<std::string, NameLess> CoefficientTerm::symbols() const {
  std::set<std::string, NameLess> out;
  auto add = [&](const AffineForm& f) {
    for (const auto& [n, c] : f.terms()) out.insert(n);
  };
  for (const auto& p : powers) {
    add(p.exponent);
    for (const auto& [n, e] : p.base.exponents()) out.insert(n);
  }
  for (const auto& g : gammas) add(g.argument);
  add(sign_exponent);
  out.insert(phi_indices.begin(), phi_indices.end());
  return out;
}

bool CoefficientTerm::depends_on(const std::string& name) const { return symbols().count(name) != 0; }

bool BracketSeries::is_index(const std::string& name) const {
  return std::any_of(indices.begin(), indices.end(), [&](const Symbol& s) { return s.name == name; });
}

std::vector<std::string> BracketSeries::index_names() const {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (const auto& s : indices) out.push_back(s.name);
  return out;
}

void BracketSeries::validate() const {
  if (brackets.size() > indices.size()) {
    throw Error("bracket-core", ErrorKind::over_determined,
                std::to_string(brackets.size()) + " brackets but only " + std::to_string(indices.size()) + " indices");
  }
  auto coeff_symbols = coefficient.symbols();
  for (const auto& idx : indices) {
    bool used = coeff_symbols.count(idx.name) != 0;
    for (const auto& b : brackets) used = used || b.argument.depends_on(idx.name);
    if (!used) {
      throw Error("bracket-core", ErrorKind::structural_divergence, "index " + idx.name + " appears nowhere");
    }
  }
  for (const auto& b : brackets) {
    bool has_index = false;
    for (const auto& [n, c] : b.argument.terms()) has_index = has_index || is_index(n);
    if (!has_index) {
      throw Error("bracket-core", ErrorKind::structural_divergence,
                  "bracket <" + b.argument.str() + "> involves no summation index");
    }
  }
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string base_text(const ParamMonomial& base) {
  if (base.coefficient() == 1 && base.exponents().size() == 1 && base.exponents().begin()->second == 1) {
    return base.str();
  }
  return "(" + base.str() + ")";
}

}  // namespace

std::string format_coefficient(const CoefficientTerm& term, const Rational& scale) {
  // (is_division, text)
  std::vector<std::pair<bool, std::string>> items;
  if (scale != 1) items.emplace_back(false, to_string(scale));
  if (!term.phi_indices.empty()) items.emplace_back(false, "phi(" + join(term.phi_indices, ",") + ")");
  if (!term.sign_exponent.is_zero()) items.emplace_back(false, "(-1)^(" + term.sign_exponent.str() + ")");
  for (const auto& p : term.powers) items.emplace_back(false, base_text(p.base) + "^(" + p.exponent.str() + ")");
  for (const auto& g : term.gammas) {
    std::string t = "Gamma(" + g.argument.str() + ")";
    int mag = g.power < 0 ? -g.power : g.power;
    if (mag != 1) t += "^" + std::to_string(mag);
    items.emplace_back(g.power < 0, t);
  }
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [div, text] = items[i];
    if (i == 0) {
      out += div ? "1 / " + text : text;
    } else {
      out += div ? " / " + text : " * " + text;
    }
  }
  return out;
}

std::string BracketSeries::str() const {
  std::string out = "sum[" + join(index_names(), ",") + "] ";
  std::string coeff = format_coefficient(coefficient, scale);
  std::vector<std::string> bs;
  for (const auto& b : brackets) bs.push_back("<" + b.argument.str() + ">");
  if (coeff.empty() && bs.empty()) return out + "1";
  if (coeff.empty()) return out + join(bs, " * ");
  if (bs.empty()) return out + coeff;
  return out + coeff + " * " + join(bs, " * ");
}

bool same_value(const BracketSeries& a, const BracketSeries& b) {
  if (a.indices != b.indices || a.scale != b.scale || !(a.coefficient == b.coefficient)) return false;
  if (a.brackets.size() != b.brackets.size()) return false;
  for (std::size_t i = 0; i < a.brackets.size(); ++i) {
    if (!(a.brackets[i].argument == b.brackets[i].argument)) return false;
  }
  return true;
}

namespace {

const char* kModule = "bracket-core";

// One multiplicative item of the canonical text; returns false at end.
void parse_item(TokenCursor& cur, bool divide, BracketSeries& s) {
  const Token& t = cur.peek();
  if (t.type == TokenType::number) {
    cur.next();
    Rational v = parse_number_token(t, cur);
    if (divide) {
      if (v == 0) cur.fail_at(t, ErrorKind::bad_value, "division by zero");
      s.scale /= v;
    } else {
      s.scale *= v;
    }
    return;
  }
  if (t.is_word("phi")) {
    cur.next();
    cur.expect('(', "after phi");
    if (!cur.peek().is(')')) {
      do {
        s.coefficient.phi_indices.push_back(cur.expect_identifier("in phi(...)"));
      } while (cur.accept(','));
    }
    cur.expect(')', "to close phi(...)");
    return;
  }
  if (t.is_word("Gamma")) {
    cur.next();
    cur.expect('(', "after Gamma");
    AffineForm arg = parse_affine(cur);
    cur.expect(')', "to close Gamma(...)");
    int power = 1;
    if (cur.accept('^')) {
      const Token& p = cur.next();
      if (p.type != TokenType::number) cur.fail_at(p, ErrorKind::syntax, "expected integer Gamma power");
      power = static_cast<int>(to_int64(numerator(parse_number_token(p, cur))));
    }
    s.coefficient.gammas.push_back({arg, divide ? -power : power});
    return;
  }
  if (t.is('<')) {
    if (divide) cur.fail("brackets cannot be divided");
    cur.next();
    AffineForm arg = parse_affine(cur);
    cur.expect('>', "to close bracket");
    s.brackets.push_back({arg, {}});
    return;
  }
  if (divide) cur.fail("only numbers and Gamma factors may be divided");
  ParamMonomial base;
  if (t.type == TokenType::identifier) {
    cur.next();
    base = ParamMonomial::symbol(t.text);
  } else if (cur.accept('(')) {
    base = parse_param_monomial(cur);
    cur.expect(')', "to close power base");
  } else {
    cur.fail("expected factor");
  }
  cur.expect('^', "after power base");
  AffineForm e = parse_exponent(cur);
  s.coefficient.powers.push_back({base, e});
}

}  // namespace

BracketSeries parse_bracket_series(std::string_view text) {
  TokenCursor cur(tokenize(text, kModule), kModule);
  BracketSeries s;
  if (!cur.peek().is_word("sum")) cur.fail("expected 'sum'");
  cur.next();
  cur.expect('[', "after sum");
  if (!cur.peek().is(']')) {
    do {
      s.indices.push_back({cur.expect_identifier("in index list"), SymbolKind::index});
    } while (cur.accept(','));
  }
  cur.expect(']', "to close index list");
  parse_item(cur, false, s);
  while (cur.peek().is('*') || cur.peek().is('/')) {
    bool divide = cur.next().is('/');
    parse_item(cur, divide, s);
  }
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  s.coefficient.normalize();
  s.validate();
  return s;
}

BracketSeries canonicalize(const BracketSeries& series) {
  std::vector<std::string> order;
  auto visit = [&](const std::string& name) {
    if (series.is_index(name) && std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  };
  auto visit_form = [&](const AffineForm& f) {
    for (const auto& [n, c] : f.terms()) visit(n);
  };
  for (const auto& b : series.brackets) visit_form(b.argument);
  for (const auto& i : series.coefficient.phi_indices) visit(i);
  for (const auto& g : series.coefficient.gammas) visit_form(g.argument);
  for (const auto& p : series.coefficient.powers) visit_form(p.exponent);
  visit_form(series.coefficient.sign_exponent);
  for (const auto& s : series.indices) visit(s.name);

  // Two-step renaming avoids clashes between old and new names.
  std::map<std::string, std::string, NameLess> to_tmp;
  std::map<std::string, std::string, NameLess> from_tmp;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string tmp = "__canon" + std::to_string(i + 1);
    to_tmp.emplace(order[i], tmp);
    from_tmp.emplace(tmp, "n" + std::to_string(i + 1));
  }
  auto rename_all = [](BracketSeries& s, const std::map<std::string, std::string, NameLess>& names) {
    s.coefficient.rename(names);
    Substitution sub;
    for (const auto& [a, b] : names) sub.emplace(a, AffineForm::symbol(b));
    for (auto& b : s.brackets) b.argument = affine_substitute(b.argument, sub);
    std::map<std::string, Origin, NameLess> origins;
    for (const auto& [n, o] : s.index_origins) {
      auto it = names.find(n);
      origins.emplace(it == names.end() ? n : it->second, o);
    }
    s.index_origins = std::move(origins);
    for (auto& idx : s.indices) {
      auto it = names.find(idx.name);
      if (it != names.end()) idx.name = it->second;
    }
  };
  BracketSeries out = series;
  rename_all(out, to_tmp);
  rename_all(out, from_tmp);
  std::sort(out.indices.begin(), out.indices.end());
  out.coefficient.normalize();
  return out;
}

}  // namespace mob
