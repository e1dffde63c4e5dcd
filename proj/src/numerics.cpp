#include "mob/numerics.hpp"

#include "mob/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace mob {

namespace {

const char* kModule = "numerics";
constexpr double kPi = std::numbers::pi;

cplx value_of(const std::string& name, const Values& v) {
  auto it = v.find(name);
  if (it == v.end()) throw Error(kModule, ErrorKind::bad_value, "parameter " + name + " has no value");
  return it->second;
}

// Repeated squaring that leaves a lone factor untouched, so the sign of a zero
// imaginary part survives.
cplx integer_power(cplx z, long k) {
  if (k < 0) return 1.0 / integer_power(z, -k);
  if (k == 0) return 1.0;
  std::optional<cplx> r;
  while (k) {
    if (k & 1) r = r ? *r * z : z;
    k >>= 1;
    if (k) z *= z;
  }
  return *r;
}

// Term coefficient with numeric constants folded in; n is the free index and
// eps (when named) the regulator kept symbolic.
struct CompiledTerm {
  struct G {
    cplx a0;
    double c = 0;
    double b = 0;
    int p = 1;
  };
  struct P {
    cplx logb;
    cplx e0;
    double c = 0;
    double b = 0;
    bool zero_base = false;
  };
  std::vector<G> gammas;
  std::vector<P> powers;
  cplx s0;
  double s1 = 0;
  double sb = 0;
  bool phi = false;
  double scale = 1;

  static CompiledTerm compile(const SeriesRepresentation& rep, const Values& v, const std::string& eps) {
    CompiledTerm t;
    const std::string n = rep.free_index.value_or("");
    auto strip = [&](const AffineForm& f) {
      AffineForm g = n.empty() ? f : f.without(n);
      return eps.empty() ? g : g.without(eps);
    };
    auto coef = [&](const AffineForm& f, const std::string& s) {
      return s.empty() ? 0.0 : to_double(f.coefficient(s));
    };
    for (const auto& g : rep.term.gammas) {
      t.gammas.push_back(G{evaluate(strip(g.argument), v), coef(g.argument, n), coef(g.argument, eps), g.power});
    }
    for (const auto& p : rep.term.powers) {
      for (const auto& [name, e] : p.base.exponents()) {
        if (name == eps) throw Error(kModule, ErrorKind::unsupported, "regulator inside a power base");
      }
      const cplx base = evaluate(p.base, v);
      P q{0.0, evaluate(strip(p.exponent), v), coef(p.exponent, n), coef(p.exponent, eps), base == 0.0};
      if (!q.zero_base) q.logb = std::log(base);
      t.powers.push_back(q);
    }
    t.s0 = evaluate(strip(rep.term.sign_exponent), v);
    t.s1 = coef(rep.term.sign_exponent, n);
    t.sb = coef(rep.term.sign_exponent, eps);
    for (const auto& i : rep.term.phi_indices) {
      if (i != n) throw Error(kModule, ErrorKind::unsupported, "indicator of a non-free index " + i);
      t.phi = true;
    }
    t.scale = to_double(rep.prefactor);
    return t;
  }

  // log of the finite part and the pole order in the free index.
  void gamma_part(const G& g, long n, cplx& L, int& order) const {
    const cplx a = g.a0 + g.c * static_cast<double>(n);
    if (auto m = nonpositive_integer(a)) {
      if (g.c == 0) throw Error(kModule, ErrorKind::pole, "Gamma pole at a constant argument");
      // Gamma(c*(n+d) - m) ~ (-1)^m / (m! c d).
      const double lr = -std::lgamma(static_cast<double>(*m) + 1) - std::log(std::abs(g.c));
      const bool neg = (*m % 2 == 1) != (g.c < 0);
      L += static_cast<double>(g.p) * cplx(lr, neg ? kPi : 0.0);
      order += g.p;
      return;
    }
    L += static_cast<double>(g.p) * log_gamma(a);
  }

  cplx finish(long n, cplx L, int order, cplx& sign) const {
    for (const auto& p : powers) {
      const cplx e = p.e0 + p.c * static_cast<double>(n);
      if (p.zero_base) {
        if (e.real() > 0) return 0.0;
        throw Error(kModule, ErrorKind::pole, "zero raised to a non-positive power");
      }
      L += e * p.logb;
    }
    cplx s = s0 + s1 * static_cast<double>(n);
    if (phi) {
      s += static_cast<double>(n);
      L -= std::lgamma(static_cast<double>(n) + 1);
    }
    sign = sign_power(s);
    if (order > 0) throw Error(kModule, ErrorKind::pole, "term " + std::to_string(n) + " is singular");
    if (order < 0) return 0.0;
    return L;
  }

  cplx term(long n) const {
    cplx L = 0;
    int order = 0;
    for (const auto& g : gammas) gamma_part(g, n, L, order);
    if (order < 0) return 0.0;
    cplx sign;
    cplx fin = finish(n, L, order, sign);
    if (order < 0) return 0.0;
    return scale * sign * std::exp(fin);
  }

  LaurentTerm laurent(long n) const {
    cplx L = 0, L1 = 0, L2 = 0;
    int order_n = 0, P = 0;
    for (const auto& g : gammas) {
      if (g.b == 0) {
        gamma_part(g, n, L, order_n);
        continue;
      }
      const cplx a = g.a0 + g.c * static_cast<double>(n);
      const double p = g.p;
      if (auto m = nonpositive_integer(a)) {
        // Gamma(-m + d) = (-1)^m/(m! d) exp(psi(m+1) d + (pi^2/6 - psi'(m+1)/2) d^2), d = b*eps.
        const double mm = static_cast<double>(*m);
        const bool neg = (*m % 2 == 1) != (g.b < 0);
        L += p * cplx(-std::lgamma(mm + 1) - std::log(std::abs(g.b)), neg ? kPi : 0.0);
        const cplx psi = digamma(mm + 1), tri = trigamma(mm + 1);
        L1 += p * psi * g.b;
        L2 += p * (kPi * kPi / 6 - 0.5 * tri) * g.b * g.b;
        P -= g.p;
      } else {
        L += p * log_gamma(a);
        L1 += p * digamma(a) * g.b;
        L2 += p * 0.5 * trigamma(a) * g.b * g.b;
      }
    }
    for (const auto& q : powers) L1 += q.b * q.logb;
    L1 += cplx(0, kPi) * sb;
    LaurentTerm out;
    out.order = P;
    if (order_n < 0) return out;
    cplx sign;
    const cplx fin = finish(n, L, order_n, sign);
    if (P < -2) throw Error(kModule, ErrorKind::unsupported, "regulator pole of order " + std::to_string(-P));
    const cplx base = scale * sign * std::exp(fin);
    const std::array<cplx, 3> series{1.0, L1, L2 + 0.5 * L1 * L1};
    for (int j = 0; j < 3; ++j) {
      const int power = P + j;
      if (power >= -2 && power <= 0) out.coeff[power + 2] += base * series[j];
    }
    return out;
  }
};

bool any_regulated(const SeriesRepresentation& rep, const std::string& eps) { return rep.term.depends_on(eps); }

}  // namespace

std::vector<double> NumericConfig::default_a_ladder() {
  std::vector<double> out;
  for (int j = 3; j <= 12; ++j) out.push_back(1.0 - std::ldexp(1.0, -j));
  return out;
}

void NumericConfig::validate() const {
  if (!(tol > 0)) throw Error(kModule, ErrorKind::bad_value, "tolerance must be positive");
  if (max_terms <= 0) throw Error(kModule, ErrorKind::bad_value, "max terms must be positive");
  for (std::size_t i = 1; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] < eps_ladder[i - 1]) || eps_ladder[i] <= 0) {
      throw Error(kModule, ErrorKind::bad_value, "epsilon ladder must be positive and strictly decreasing");
    }
  }
  for (std::size_t i = 1; i < a_ladder.size(); ++i) {
    if (!(a_ladder[i] > a_ladder[i - 1]) || a_ladder[i] >= 1) {
      throw Error(kModule, ErrorKind::bad_value, "A ladder must increase strictly towards 1");
    }
  }
  if (eps_ladder.empty() || a_ladder.size() < 3) throw Error(kModule, ErrorKind::bad_value, "ladder too short");
}

const char* to_string(SumStatus s) {
  switch (s) {
    case SumStatus::converged:
      return "converged";
    case SumStatus::max_terms:
      return "max_terms";
    case SumStatus::divergent:
      return "divergent";
  }
  return "";
}

cplx evaluate(const AffineForm& f, const Values& v) {
  cplx r = to_double(f.constant());
  for (const auto& [name, c] : f.terms()) r += to_double(c) * value_of(name, v);
  return r;
}

cplx evaluate(const ParamMonomial& m, const Values& v) {
  std::optional<cplx> r;
  for (const auto& [name, e] : m.exponents()) {
    const cplx x = value_of(name, v);
    cplx f;
    if (is_integer(e) && abs(numerator(e)) < 64) {
      f = integer_power(x, static_cast<long>(to_int64(numerator(e))));
    } else {
      f = std::pow(x, to_double(e));
    }
    r = r ? *r * f : f;
  }
  const double c = to_double(m.coefficient());
  return r ? c * *r : cplx(c);
}

cplx evaluate_constant(const CoefficientTerm& t, const Rational& scale, const Values& v) {
  if (!t.phi_indices.empty()) throw Error(kModule, ErrorKind::unsupported, "indicator left in a constant");
  cplx L = 0;
  for (const auto& g : t.gammas) L += static_cast<double>(g.power) * log_gamma(evaluate(g.argument, v));
  for (const auto& p : t.powers) {
    const cplx base = evaluate(p.base, v);
    const cplx e = evaluate(p.exponent, v);
    if (base == 0.0) {
      if (e.real() > 0) return 0.0;
      throw Error(kModule, ErrorKind::pole, "zero raised to a non-positive power");
    }
    L += e * std::log(base);
  }
  return to_double(scale) * sign_power(evaluate(t.sign_exponent, v)) * std::exp(L);
}

void CompensatedSum::add(cplx x) {
  auto step = [](double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  };
  step(sr_, cr_, x.real());
  step(si_, ci_, x.imag());
}

NumericValue sum_terms(const std::function<cplx(long)>& term, const NumericConfig& cfg) {
  CompensatedSum s;
  NumericValue out;
  int small = 0, growing = 0;
  double prev = std::numeric_limits<double>::infinity();
  double abs_sum = 0;
  for (long n = 0; n < cfg.max_terms; ++n) {
    const cplx t = term(n);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
      out.value = s.value();
      out.terms = n + 1;
      out.status = SumStatus::divergent;
      out.error = std::numeric_limits<double>::infinity();
      return out;
    }
    s.add(t);
    const double a = std::abs(t);
    abs_sum += a;
    const double partial = std::abs(s.value());
    if (n > 50 && a > prev && a > 0) {
      if (++growing >= 10) {
        out.value = s.value();
        out.terms = n + 1;
        out.status = SumStatus::divergent;
        out.error = std::numeric_limits<double>::infinity();
        return out;
      }
    } else {
      growing = 0;
    }
    double tail = a;
    if (prev > 0 && std::isfinite(prev) && a > 0) {
      const double rho = a / prev;
      tail = rho < 1 ? a * rho / (1 - rho) : a;
    }
    const double error = tail + 4 * std::numeric_limits<double>::epsilon() * abs_sum;
    if (a <= cfg.tol * partial || (a == 0 && partial == 0)) {
      ++small;
    } else {
      small = 0;
    }
    if (a > 0 || n == 0) prev = a;
    if (small >= 3 && error <= cfg.tol * (1 + partial)) {
      out.value = s.value();
      out.terms = n + 1;
      out.error = error;
      return out;
    }
    out.error = error;
  }
  out.value = s.value();
  out.terms = cfg.max_terms;
  out.status = SumStatus::max_terms;
  return out;
}

NumericValue sum_pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                     const NumericConfig& cfg) {
  for (const auto& l : lower) {
    if (auto m = nonpositive_integer(l)) {
      // A lower parameter -m is only harmless if an upper one terminates first.
      bool ok = false;
      for (const auto& u : upper) {
        if (auto k = nonpositive_integer(u); k && *k < *m) ok = true;
      }
      if (!ok) throw Error(kModule, ErrorKind::pole, "lower pFq parameter is a nonpositive integer");
    }
  }
  cplx t = 1.0;
  long next = 0;
  return sum_terms(
      [&](long m) {
        while (next < m) {
          cplx r = x / static_cast<double>(next + 1);
          for (const auto& u : upper) r *= u + static_cast<double>(next);
          for (const auto& l : lower) r /= l + static_cast<double>(next);
          t *= r;
          ++next;
        }
        return t;
      },
      cfg);
}

cplx representation_term(const SeriesRepresentation& rep, long n, const Values& v) {
  return CompiledTerm::compile(rep, v, "").term(n);
}

LaurentTerm laurent_term(const SeriesRepresentation& rep, long n, const std::string& eps, const Values& v) {
  return CompiledTerm::compile(rep, v, eps).laurent(n);
}

NumericValue sum_representation(const SeriesRepresentation& rep, const HypergeometricData& h, const Values& v,
                                 const NumericConfig& cfg) {
  if (!rep.free_index) {
    NumericValue out;
    out.value = evaluate_constant(rep.term, rep.prefactor, v);
    out.error = 4 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
    out.terms = 1;
    return out;
  }
  bool classified = true;
  for (const auto& p : h.parts) {
    if (p.singular) throw Error(kModule, ErrorKind::pole, "representation " + rep.label() + " is singular");
    classified = classified && (p.classified || p.vanishing);
  }
  if (!classified) {
    const CompiledTerm t = CompiledTerm::compile(rep, v, "");
    return sum_terms([&](long n) { return t.term(n); }, cfg);
  }
  NumericValue out;
  const cplx x = evaluate(h.argument, v);
  for (const auto& p : h.parts) {
    if (p.vanishing) continue;
    const cplx pre = evaluate_constant(p.prefactor, p.prefactor_scale, v);
    std::vector<cplx> up, lo;
    for (const auto& u : p.upper) up.push_back(evaluate(u, v));
    for (const auto& l : p.lower) lo.push_back(evaluate(l, v));
    NumericValue s = sum_pfq(up, lo, x, cfg);
    out.value += pre * s.value;
    out.error += std::abs(pre) * s.error;
    out.terms = std::max(out.terms, s.terms);
    if (s.status != SumStatus::converged) out.status = s.status;
  }
  return out;
}

NumericValue sum_group(const std::vector<const SeriesRepresentation*>& reps,
                       const std::vector<const HypergeometricData*>& data, const Values& v,
                       const NumericConfig& cfg) {
  NumericValue out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    NumericValue s = sum_representation(*reps[i], *data[i], v, cfg);
    out.value += s.value;
    out.error += s.error;
    out.terms = std::max(out.terms, s.terms);
    if (s.status == SumStatus::divergent || out.status == SumStatus::converged) {
      if (s.status != SumStatus::converged) out.status = s.status;
    }
  }
  return out;
}

NumericValue epsilon_limit_analytic(const std::vector<const SeriesRepresentation*>& reps, const std::string& eps,
                                    const Values& v, const NumericConfig& cfg) {
  std::vector<CompiledTerm> series;
  std::vector<CompiledTerm> constants;
  for (const auto* r : reps) {
    (r->free_index ? series : constants).push_back(CompiledTerm::compile(*r, v, eps));
  }
  auto combine = [&](long n, const std::vector<CompiledTerm>& ts) {
    std::array<cplx, 3> c{};
    std::array<double, 3> mag{};
    for (const auto& t : ts) {
      LaurentTerm l = t.laurent(n);
      for (int j = 0; j < 3; ++j) {
        c[j] += l.coeff[j];
        mag[j] += std::abs(l.coeff[j]);
      }
    }
    for (int j = 0; j < 2; ++j) {
      if (std::abs(c[j]) > 1e-8 * mag[j] + 1e-300 && std::abs(c[j]) > 1e-13 * (mag[2] + std::abs(c[2]))) {
        throw Error(kModule, ErrorKind::unsupported,
                    "regulator pole of order " + std::to_string(2 - j) + " does not cancel at term " +
                        std::to_string(n));
      }
    }
    return c[2];
  };
  NumericValue out;
  if (!series.empty()) out = sum_terms([&](long n) { return combine(n, series); }, cfg);
  if (!constants.empty()) out.value += combine(0, constants);
  return out;
}

std::pair<cplx, double> neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y) {
  const std::size_t n = x.size();
  std::vector<cplx> p = y;
  cplx prev = p.back();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
    }
    if (k + 1 < n) prev = p[n - k - 1];
  }
  const double err = n > 1 ? std::abs(p[0] - prev) : std::numeric_limits<double>::infinity();
  return {p[0], err};
}

EpsilonLimit epsilon_pair_limit(const std::vector<const SeriesRepresentation*>& reps,
                                const std::vector<const HypergeometricData*>& data, const std::string& eps,
                                const Values& v, const NumericConfig& cfg) {
  EpsilonLimit out;
  bool regulated = false;
  for (const auto* r : reps) regulated = regulated || any_regulated(*r, eps);
  if (!regulated) {
    Values w = v;
    w[eps] = 0.0;
    out.analytic = sum_group(reps, data, w, cfg);
    out.numeric = out.analytic;
    return out;
  }
  out.analytic = epsilon_limit_analytic(reps, eps, v, cfg);
  std::vector<double> xs;
  long terms = 0;
  double sum_err = 0;
  for (double h : cfg.eps_ladder) {
    Values plus = v, minus = v;
    plus[eps] = h;
    minus[eps] = -h;
    NumericValue gp = sum_group(reps, data, plus, cfg);
    NumericValue gm = sum_group(reps, data, minus, cfg);
    out.ladder.push_back(h);
    out.symmetric_values.push_back(0.5 * (gp.value + gm.value));
    xs.push_back(h * h);
    terms = std::max({terms, gp.terms, gm.terms});
    sum_err = std::max(sum_err, 0.5 * (gp.error + gm.error));
    if (gp.status != SumStatus::converged) out.numeric.status = gp.status;
    if (gm.status != SumStatus::converged) out.numeric.status = gm.status;
  }
  auto [val, err] = neville_at_zero(xs, out.symmetric_values);
  out.numeric.value = val;
  out.numeric.error = err + sum_err;
  out.numeric.terms = terms;
  out.agree = std::abs(out.analytic.value - out.numeric.value) <= 1e-8 * (1 + std::abs(out.analytic.value));
  return out;
}

ParameterLimit a_parameter_limit(const std::function<NumericValue(double)>& f, const NumericConfig& cfg) {
  ParameterLimit out;
  std::vector<double> hs;
  SumStatus status = SumStatus::converged;
  long terms = 0;
  double sample_err = 0;
  for (double a : cfg.a_ladder) {
    NumericValue s = f(a);
    if (s.status != SumStatus::converged) status = s.status;
    terms = std::max(terms, s.terms);
    sample_err = std::max(sample_err, s.error);
    out.ladder.push_back(a);
    out.samples.push_back(s.value);
    hs.push_back(1.0 - a);
  }
  const std::size_t n = hs.size();
  auto window = [&](std::size_t end) {
    std::vector<double> x(hs.begin() + static_cast<long>(end) - 3, hs.begin() + static_cast<long>(end));
    std::vector<cplx> y(out.samples.begin() + static_cast<long>(end) - 3, out.samples.begin() + static_cast<long>(end));
    return neville_at_zero(x, y).first;
  };
  const cplx best = window(n);
  // Order-1 extrapolant on the last two points bounds the neglected curvature.
  const cplx linear = neville_at_zero({hs[n - 2], hs[n - 1]}, {out.samples[n - 2], out.samples[n - 1]}).first;
  double err = 2 * std::abs(best - linear);
  if (n >= 4) err = std::max(err, std::abs(best - window(n - 1)));
  out.value.value = best;
  out.value.error = err + sample_err;
  out.value.terms = terms;
  out.value.status = status;
  return out;
}

}  // namespace mob
