#include "mob/continuation.hpp"

#include "mob/error.hpp"
#include "mob/solve.hpp"

#include <cmath>

namespace mob {

namespace {

const char* kModule = "analyze";

std::string name(char c, std::size_t i) { return std::string(1, c) + std::to_string(i + 1); }

AffineForm sym(const std::string& s) { return AffineForm::symbol(s); }

// (theta + c_1)...(theta + c_k) as coefficients of theta^0..theta^k.
std::vector<cplx> theta_polynomial(const std::vector<cplx>& roots) {
  std::vector<cplx> poly{1.0};
  for (const auto& c : roots) {
    std::vector<cplx> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += c * poly[k];
      next[k + 1] += poly[k];
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

BracketSeries pfq_bracket_series(std::size_t p, std::size_t q, PfqBuilder builder) {
  BracketSeries s;
  auto add_index = [&](const std::string& i) {
    s.indices.push_back(Symbol{i, SymbolKind::index});
    s.coefficient.phi_indices.push_back(i);
  };
  add_index("n");
  const AffineForm n = sym("n");
  const ParamMonomial x = ParamMonomial::symbol("x");
  for (std::size_t j = 0; j < p; ++j) {
    add_index(name('t', j));
    s.brackets.push_back(Bracket{sym(name('a', j)) + n + sym(name('t', j)), Origin{"pfq", name('a', j)}});
    s.coefficient.gammas.push_back(GammaFactor{sym(name('a', j)), -1});
  }
  if (builder == PfqBuilder::reduced) {
    s.coefficient.powers.push_back(PowerFactor{ParamMonomial(Rational(-1)) * x, n});
    for (std::size_t k = 0; k < q; ++k) {
      s.coefficient.gammas.push_back(GammaFactor{sym(name('b', k)), 1});
      s.coefficient.gammas.push_back(GammaFactor{sym(name('b', k)) + n, -1});
    }
  } else {
    const Rational sign = (q % 2 == 1) ? Rational(1) : Rational(-1);
    s.coefficient.powers.push_back(PowerFactor{ParamMonomial(sign) * x, n});
    for (std::size_t k = 0; k < q; ++k) {
      add_index(name('s', k));
      s.brackets.push_back(
          Bracket{AffineForm(1) - sym(name('b', k)) - n + sym(name('s', k)), Origin{"pfq", name('b', k)}});
      s.coefficient.gammas.push_back(GammaFactor{AffineForm(1) - sym(name('b', k)), -1});
    }
  }
  s.coefficient.normalize();
  s.validate();
  return s;
}

Values pfq_values(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x) {
  Values v;
  for (std::size_t j = 0; j < upper.size(); ++j) v[name('a', j)] = upper[j];
  for (std::size_t k = 0; k < lower.size(); ++k) v[name('b', k)] = lower[k];
  v["x"] = x;
  return v;
}

Continuation continue_pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                          const NumericConfig& cfg, PfqBuilder builder) {
  if (upper.size() != lower.size() + 1) {
    throw Error(kModule, ErrorKind::domain, "continuation needs p = q+1");
  }
  if (!(std::abs(x) > 1)) throw Error(kModule, ErrorKind::domain, "continuation needs |x| > 1; use the direct series");
  for (std::size_t i = 0; i < upper.size(); ++i) {
    for (std::size_t j = i + 1; j < upper.size(); ++j) {
      const cplx d = upper[i] - upper[j];
      if (std::abs(d.imag()) < 1e-13 && std::abs(d.real() - std::round(d.real())) < 1e-13) {
        throw Error(kModule, ErrorKind::pole, "upper parameters " + name('a', i) + " and " + name('a', j) +
                                                  " differ by an integer");
      }
    }
  }
  const BracketSeries series = pfq_bracket_series(upper.size(), lower.size(), builder);
  const Values v = pfq_values(upper, lower, x);
  const Region outside = canonical_region(RegionKind::outside, ParamMonomial::symbol("x"));

  Continuation out;
  std::vector<SeriesRepresentation> reps;
  for (const auto& a : enumerate_assignments(series).assignments) reps.push_back(evaluate_assignment(series, a));
  for (const auto& rep : dedupe(reps)) {
    const HypergeometricData h = classify(rep);
    const Region r = convergence_region(h);
    if (!(r == outside)) continue;
    CertificateEntry e{rep.label(), h.str(), r.str(), 0.0, sum_representation(rep, h, v, cfg)};
    e.value = e.sum.value;
    out.value.value += e.sum.value;
    out.value.error += e.sum.error;
    out.value.terms = std::max(out.value.terms, e.sum.terms);
    if (e.sum.status != SumStatus::converged) out.value.status = e.sum.status;
    out.certificate.push_back(std::move(e));
  }
  if (out.certificate.empty()) throw Error(kModule, ErrorKind::numeric, "no representation converges for |x| > 1");
  return out;
}

NumericValue direct_pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                        const NumericConfig& cfg) {
  if (upper.size() > lower.size() + 1 && x != 0.0) {
    throw Error(kModule, ErrorKind::domain, "series with p > q+1 diverges");
  }
  if (upper.size() == lower.size() + 1 && !(std::abs(x) < 1)) {
    throw Error(kModule, ErrorKind::domain, "series needs |x| < 1");
  }
  return sum_pfq(upper, lower, x, cfg);
}

NumericValue pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x, const NumericConfig& cfg) {
  if (upper.size() == lower.size() + 1 && std::abs(x) > 1) return continue_pfq(upper, lower, x, cfg).value;
  return direct_pfq(upper, lower, x, cfg);
}

double pfq_ode_residual(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                        const NumericConfig& cfg) {
  const std::size_t order = std::max(upper.size(), lower.size() + 1);
  if (order > 3) throw Error(kModule, ErrorKind::unsupported, "residual check supports order up to 3");
  const double h = 0.03;
  std::array<cplx, 7> f;
  for (int j = -3; j <= 3; ++j) f[j + 3] = pfq(upper, lower, x * std::exp(j * h), cfg).value;
  // Central differences of order h^4 or better in t = log x, so d/dt = theta.
  std::array<cplx, 4> d;
  d[0] = f[3];
  d[1] = (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / (60 * h);
  d[2] = (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] - 27.0 * f[5] + 2.0 * f[6]) /
         (180 * h * h);
  d[3] = (f[0] - 8.0 * f[1] + 13.0 * f[2] - 13.0 * f[4] + 8.0 * f[5] - f[6]) / (8 * h * h * h);

  std::vector<cplx> left_roots{0.0};
  for (const auto& b : lower) left_roots.push_back(b - 1.0);
  const std::vector<cplx> left = theta_polynomial(left_roots);
  const std::vector<cplx> right = theta_polynomial(upper);
  cplx residual = 0;
  double scale = 0;
  for (std::size_t k = 0; k < left.size(); ++k) {
    residual += left[k] * d[k];
    scale += std::abs(left[k] * d[k]);
  }
  for (std::size_t k = 0; k < right.size(); ++k) {
    residual -= x * right[k] * d[k];
    scale += std::abs(x * right[k] * d[k]);
  }
  return std::abs(residual) / scale;
}

}  // namespace mob
