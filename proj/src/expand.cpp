#include "mob/expand.hpp"

#include "mob/error.hpp"

#include <algorithm>

namespace mob {

namespace {

const char* kModule = "expand";

void add_exponent(VariableExponents& exps, const std::string& var, const AffineForm& e) {
  AffineForm& slot = exps[var];
  slot += e;
}

// Multiplies `frag` by m^E.
// m^E with the variables split off. A sign goes into the base when the base has
// parameters, so (-m2)^E is one principal power; otherwise into the sign exponent.
void raise_into(Fragment& frag, const Monomial& m, const AffineForm& E, const std::set<std::string>& variables,
                bool negate = false) {
  if (m.coefficient == 0) throw Error(kModule, ErrorKind::bad_value, "zero summand in a sum");
  const Rational c = negate ? Rational(-m.coefficient) : m.coefficient;
  ParamMonomial base(c < 0 ? Rational(-c) : c);
  for (const auto& [name, p] : m.powers) {
    if (variables.count(name)) {
      add_exponent(frag.variable_exponents, name, E * p);
    } else {
      base *= ParamMonomial::symbol(name, p);
    }
  }
  if (c < 0) {
    if (base.is_constant()) {
      frag.coefficient.sign_exponent += E;
    } else {
      base = ParamMonomial(Rational(-1)) * base;
    }
  }
  if (!base.is_one()) frag.coefficient.powers.push_back(PowerFactor{base, E});
  for (const auto& s : m.subsums) {
    AffineForm e;
    if (s.exponent.is_constant()) {
      e = E * s.exponent.constant();
    } else if (E.is_constant()) {
      e = s.exponent * E.constant();
    } else {
      throw Error(kModule, ErrorKind::unsupported,
                  "power (" + s.sum_str() + ")^(" + s.exponent.str() + ") raised to the symbolic (" + E.str() + ")");
    }
    frag.deferred.push_back(SubSumPower{s.summands, e});
  }
}

Symbol index_symbol(const std::string& name) { return Symbol{name, SymbolKind::index}; }

std::string fragment_text(const Fragment& f) {
  BracketSeries s;
  s.indices = f.indices;
  s.coefficient = f.coefficient;
  s.coefficient.normalize();
  s.brackets = f.brackets;
  s.scale = f.scale;
  std::string out = s.str();
  for (const auto& [v, e] : f.variable_exponents) out += " ; " + v + "^(" + e.str() + ")";
  for (const auto& d : f.deferred) out += " ; (" + d.sum_str() + ")^(" + d.exponent.str() + ")";
  return out;
}

BracketSeries to_series(const Fragment& f) {
  BracketSeries s;
  s.indices = f.indices;
  s.coefficient = f.coefficient;
  s.coefficient.normalize();
  s.brackets = f.brackets;
  s.scale = f.scale;
  s.index_origins = f.index_origins;
  return s;
}

}  // namespace

Fragment& Fragment::operator*=(const Fragment& other) {
  indices.insert(indices.end(), other.indices.begin(), other.indices.end());
  coefficient *= other.coefficient;
  brackets.insert(brackets.end(), other.brackets.begin(), other.brackets.end());
  scale *= other.scale;
  for (const auto& [v, e] : other.variable_exponents) add_exponent(variable_exponents, v, e);
  deferred.insert(deferred.end(), other.deferred.begin(), other.deferred.end());
  for (const auto& [n, o] : other.index_origins) index_origins[n] = o;
  return *this;
}

std::string sum_key(const std::vector<Monomial>& summands) {
  std::vector<std::string> parts;
  for (const auto& m : summands) parts.push_back(m.str());
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

Fragment expand_rule1(const std::vector<Monomial>& summands, const AffineForm& exponent,
                      const std::set<std::string>& variables, IndexNamer& names, const std::string& rule) {
  if (summands.empty()) throw Error(kModule, ErrorKind::empty_multinomial, "Rule 1 needs at least one summand");
  Fragment f;
  const AffineForm alpha = -exponent;
  AffineForm bracket = alpha;
  const int group = names.group();
  for (std::size_t i = 0; i < summands.size(); ++i) {
    std::string n = names.fresh();
    f.indices.push_back(index_symbol(n));
    f.coefficient.phi_indices.push_back(n);
    f.index_origins[n] = Origin{rule, "", group, static_cast<int>(i) + 1};
    AffineForm m = AffineForm::symbol(n);
    raise_into(f, summands[i], m, variables);
    bracket += m;
  }
  f.coefficient.gammas.push_back(GammaFactor{alpha, -1});
  f.brackets.push_back(Bracket{bracket, Origin{rule, "", group, -1}});
  return f;
}

Fragment expand_known_series(const Factor& factor, const std::set<std::string>& variables, IndexNamer& names) {
  Fragment f;
  std::string n = names.fresh();
  f.indices.push_back(index_symbol(n));
  f.coefficient.phi_indices.push_back(n);
  AffineForm idx = AffineForm::symbol(n);
  if (const auto* e = std::get_if<ExpFactor>(&factor)) {
    f.index_origins[n] = Origin{"exp", "", -1, -1};
    raise_into(f, e->argument, idx, variables, !e->negated);
    return f;
  }
  if (const auto* b = std::get_if<KnownSeriesFactor>(&factor)) {
    if (b->function != "besselj") throw Error(kModule, ErrorKind::unsupported, "unknown series " + b->function);
    f.index_origins[n] = Origin{"besselj", "", -1, -1};
    Monomial half = b->argument;
    half.coefficient /= 2;
    raise_into(f, half, 2 * idx + b->order, variables);
    f.coefficient.gammas.push_back(GammaFactor{idx + b->order + AffineForm(1), -1});
    return f;
  }
  throw Error(kModule, ErrorKind::unsupported, "factor has no known series expansion");
}

Fragment expand_deferred(const SubSumPower& power, const std::set<std::string>& variables, IndexNamer& names) {
  if (power.exponent.is_zero()) return Fragment{};
  return expand_rule1(power.summands, power.exponent, variables, names, "deferred");
}

Fragment integrate_monomials(const VariableExponents& exponents, const std::vector<Symbol>& variables) {
  Fragment f;
  for (const auto& v : variables) {
    auto it = exponents.find(v.name);
    if (it == exponents.end()) {
      throw Error(kModule, ErrorKind::structural_divergence,
                  "variable " + v.name + " does not occur in the expanded integrand");
    }
    f.brackets.push_back(Bracket{it->second + AffineForm(1), Origin{"integrate", v.name, -1, -1}});
  }
  return f;
}

BracketSeries ExpansionTrace::replay() const {
  Fragment acc;
  for (const auto& s : steps) {
    Fragment f = s.fragment;
    f.variable_exponents.clear();
    f.deferred.clear();
    acc *= f;
  }
  return to_series(acc);
}

ExpansionResult expand(const IntegrandSpec& spec, const ExpandOptions& options) {
  std::set<std::string> variables;
  for (const auto& v : spec.variables) variables.insert(v.name);

  ExpansionTrace trace;
  Fragment total;
  IndexNamer names;
  auto record = [&](const std::string& rule, Fragment f) {
    TraceStep step;
    step.rule = rule;
    for (const auto& i : f.indices) step.created.push_back(i.name);
    step.text = fragment_text(f);
    total *= f;
    step.fragment = std::move(f);
    trace.steps.push_back(std::move(step));
  };

  Fragment pre;
  pre.scale = spec.scale;
  std::vector<const MultinomialFactor*> multinomials;
  for (const auto& factor : spec.factors) {
    if (const auto* p = std::get_if<PowerFactorSpec>(&factor)) {
      if (variables.count(p->base)) {
        add_exponent(pre.variable_exponents, p->base, p->exponent);
      } else {
        pre.coefficient.powers.push_back(PowerFactor{ParamMonomial::symbol(p->base), p->exponent});
      }
    } else if (const auto* m = std::get_if<MultinomialFactor>(&factor)) {
      multinomials.push_back(m);
    }
  }
  record("prefactor", std::move(pre));

  for (const auto& factor : spec.factors) {
    if (std::holds_alternative<ExpFactor>(factor) || std::holds_alternative<KnownSeriesFactor>(factor)) {
      Fragment f = expand_known_series(factor, variables, names);
      record(std::holds_alternative<ExpFactor>(factor) ? "exp" : "besselj", std::move(f));
    }
  }

  // Pending sub-sum powers taken from `total`, merged by sum key.
  auto take_deferred = [&](const std::string& key) {
    AffineForm e;
    auto& d = total.deferred;
    for (auto it = d.begin(); it != d.end();) {
      if (sum_key(it->summands) == key) {
        e += it->exponent;
        it = d.erase(it);
      } else {
        ++it;
      }
    }
    return e;
  };

  std::set<std::string> done;
  bool first = true;
  for (std::size_t i = 0; i < multinomials.size(); ++i) {
    const std::string key = sum_key(multinomials[i]->summands);
    if (done.count(key)) continue;
    done.insert(key);
    AffineForm e = multinomials[i]->exponent;
    for (std::size_t j = i + 1; j < multinomials.size(); ++j) {
      if (sum_key(multinomials[j]->summands) == key) e += multinomials[j]->exponent;
    }
    e += take_deferred(key);
    if (e.is_zero()) continue;
    Fragment f = expand_rule1(multinomials[i]->summands, e, variables, names, "rule1");
    std::vector<std::string> created;
    for (const auto& s : f.indices) created.push_back(s.name);
    record("rule1", std::move(f));
    if (first && options.split) {
      const int pos = options.split->position;
      if (pos < 1 || pos > static_cast<int>(created.size())) {
        throw Error(kModule, ErrorKind::unresolvable_target,
                    "split summand " + std::to_string(pos) + " out of range 1.." + std::to_string(created.size()));
      }
      Fragment s;
      s.coefficient.powers.push_back(
          PowerFactor{ParamMonomial::symbol(options.split->symbol), AffineForm::symbol(created[pos - 1])});
      record("split", std::move(s));
    }
    first = false;
  }
  if (options.split && first) {
    throw Error(kModule, ErrorKind::unresolvable_target, "no multinomial factor to split");
  }

  while (!total.deferred.empty()) {
    SubSumPower head = total.deferred.front();
    AffineForm e = take_deferred(sum_key(head.summands));
    if (e.is_zero()) continue;
    record("deferred", expand_deferred(SubSumPower{head.summands, e}, variables, names));
  }

  if (!spec.regulators.empty()) {
    Fragment r;
    for (const auto& req : spec.regulators) {
      if (!variables.count(req.target)) {
        throw Error(kModule, ErrorKind::unresolvable_target, "regulator target " + req.target + " is not a variable");
      }
      add_exponent(r.variable_exponents, req.target, AffineForm::symbol(req.symbol));
    }
    record("regulator", std::move(r));
  }

  record("integrate", integrate_monomials(total.variable_exponents, spec.variables));

  BracketSeries series = to_series(total);
  series.validate();
  return ExpansionResult{std::move(series), std::move(trace)};
}

}  // namespace mob
