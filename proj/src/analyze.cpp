#include "mob/analyze.hpp"

#include "mob/error.hpp"

#include <algorithm>

namespace mob {

namespace {

const char* kModule = "analyze";

Integer factorial(long j) {
  Integer f = 1;
  for (long i = 2; i <= j; ++i) f *= i;
  return f;
}

bool is_pole(const AffineForm& b) {
  return b.is_constant() && is_integer(b.constant()) && b.constant() <= 0;
}

// Pieces of one Gamma factor Gamma(k*m + b)^power collected into a part.
struct PartBuilder {
  HypergeometricPart part;
  ParamMonomial argument;
  int persistent_order = 0;
  Rational pole_weight{1};
  bool constant_pole = false;

  void add_gamma(long k, const AffineForm& b, int power, const Rational& slope_n) {
    if (k == 0) {
      if (is_pole(b)) {
        persistent_order += power;
        constant_pole = true;
        return;
      }
      part.prefactor.gammas.push_back(GammaFactor{b, power});
      return;
    }
    if (is_pole(b)) {
      if (k > 0) {
        part.classified = false;
      } else {
        // Gamma(slope*(n+d) + b) ~ (-1)^j / (j! * slope * d) near b = -j.
        long j = static_cast<long>(to_int64(numerator(-b.constant())));
        Rational residue = Rational((j % 2 == 0) ? 1 : -1, 1) / Rational(factorial(j)) / slope_n;
        persistent_order += power;
        pole_weight *= pow(residue, power);
      }
    } else {
      part.prefactor.gammas.push_back(GammaFactor{b, power});
    }
    const long kk = k > 0 ? k : -k;
    // Gauss multiplication: Gamma(kk*m + c) = Gamma(c) kk^{kk m} prod_j ((c+j)/kk)_m.
    const AffineForm c = k > 0 ? b : AffineForm(1) - b;
    ParamMonomial scale(pow(Rational(kk), kk));
    if (k < 0) {
      scale = scale.inverse();
      if (kk % 2 == 1) scale *= ParamMonomial(Rational(-1));
    }
    argument *= scale.pow(Rational(power));
    bool up = (k > 0) == (power > 0);
    for (int rep = 0; rep < std::abs(power); ++rep) {
      for (long j = 0; j < kk; ++j) {
        AffineForm poch = (c + AffineForm(static_cast<int>(j))) / Rational(kk);
        (up ? part.upper : part.lower).push_back(poch);
      }
    }
  }
};

void cancel_pairs(std::vector<AffineForm>& upper, std::vector<AffineForm>& lower) {
  for (auto it = upper.begin(); it != upper.end();) {
    auto jt = std::find(lower.begin(), lower.end(), *it);
    if (jt != lower.end()) {
      lower.erase(jt);
      it = upper.erase(it);
    } else {
      ++it;
    }
  }
}

std::string list_text(const std::vector<AffineForm>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].str();
  }
  return out;
}

}  // namespace

std::string HypergeometricData::str() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (parts.size() > 1) out += (i ? "; r=" : "r=") + std::to_string(p.residue) + ": ";
    if (p.vanishing) {
      out += "0";
      continue;
    }
    if (p.singular) out += "singular ";
    if (!p.classified) {
      out += "unclassified";
      continue;
    }
    out += std::to_string(p.upper.size()) + "F" + std::to_string(p.lower.size()) + "(" + list_text(p.upper) + "; " +
           list_text(p.lower) + "; " + argument.str() + ")";
  }
  return out;
}

HypergeometricData classify(const SeriesRepresentation& rep) {
  HypergeometricData h;
  if (!rep.free_index) {
    HypergeometricPart part;
    part.prefactor = rep.term;
    part.prefactor_scale = rep.prefactor;
    h.argument = ParamMonomial(Rational(0));
    h.parts.push_back(std::move(part));
    return h;
  }
  const std::string n = *rep.free_index;
  h.free_index = n;
  const CoefficientTerm& t = rep.term;
  const bool has_phi = std::find(t.phi_indices.begin(), t.phi_indices.end(), n) != t.phi_indices.end();

  Integer L = 1;
  auto take = [&](const Rational& slope) { L = lcm(L, denominator(slope)); };
  take(t.sign_exponent.coefficient(n));
  for (const auto& p : t.powers) {
    take(p.exponent.coefficient(n));
  }
  for (const auto& g : t.gammas) {
    take(g.argument.coefficient(n));
  }
  if (L > 64) throw Error(kModule, ErrorKind::unsupported, "step " + L.str() + " too large");
  h.step = static_cast<int>(to_int64(L));
  const Rational Lr(L);

  std::vector<GammaFactor> gammas = t.gammas;
  if (has_phi) gammas.push_back(GammaFactor{AffineForm::symbol(n) + AffineForm(1), -1});
  const Rational sign_slope = t.sign_exponent.coefficient(n) + (has_phi ? 1 : 0);

  for (int r = 0; r < h.step; ++r) {
    PartBuilder b;
    b.part.residue = r;
    b.part.prefactor_scale = rep.prefactor;
    for (const auto& i : t.phi_indices) {
      if (i != n) b.part.prefactor.phi_indices.push_back(i);
    }
    // Sign.
    const Rational sL = sign_slope * Lr;
    if (!is_integer(sL)) throw std::logic_error("analyze: non-integer sign step");
    if (numerator(sL) % 2 != 0) b.argument *= ParamMonomial(Rational(-1));
    b.part.prefactor.sign_exponent = t.sign_exponent.without(n) + AffineForm(sign_slope * r);
    // Powers.
    for (const auto& p : t.powers) {
      const Rational c = p.exponent.coefficient(n);
      if (c != 0) b.argument *= p.base.pow(c * Lr);
      b.part.prefactor.powers.push_back(PowerFactor{p.base, p.exponent.without(n) + AffineForm(c * r)});
    }
    // Gammas.
    for (const auto& g : gammas) {
      const Rational c = g.argument.coefficient(n);
      const Rational k = c * Lr;
      const AffineForm bconst = g.argument.without(n) + AffineForm(c * r);
      b.add_gamma(static_cast<long>(to_int64(numerator(k))), bconst, g.power, c);
    }
    if (b.persistent_order > 0) {
      b.part.singular = true;
    } else if (b.persistent_order < 0) {
      b.part.vanishing = true;
    } else if (b.constant_pole) {
      b.part.classified = false;
    } else {
      b.part.prefactor_scale *= b.pole_weight;
    }
    b.part.upper.push_back(AffineForm(1));
    if (r == 0) {
      h.argument = b.argument;
      h.excess = static_cast<int>(b.part.upper.size()) - static_cast<int>(b.part.lower.size());
    }
    cancel_pairs(b.part.upper, b.part.lower);
    b.part.prefactor.normalize();
    h.parts.push_back(std::move(b.part));
  }
  return h;
}

std::string Region::str() const {
  switch (kind) {
    case RegionKind::everywhere:
      return "everywhere";
    case RegionKind::nowhere:
      return "nowhere";
    case RegionKind::inside:
      return "|" + expr.str() + "|<1";
    case RegionKind::outside:
      return "|" + expr.str() + "|>1";
  }
  return "";
}

Region canonical_region(RegionKind kind, const ParamMonomial& expr) {
  if (kind == RegionKind::everywhere || kind == RegionKind::nowhere) return Region{kind, ParamMonomial()};
  ParamMonomial e = expr.abs();
  if (e.is_constant()) {
    const Rational c = e.coefficient();
    bool holds = kind == RegionKind::inside ? c < 1 : c > 1;
    return Region{holds ? RegionKind::everywhere : RegionKind::nowhere, ParamMonomial()};
  }
  Integer num = 0, den = 1;
  for (const auto& [name, q] : e.exponents()) {
    num = gcd(num, numerator(q));
    den = lcm(den, denominator(q));
  }
  const Rational g(num, den);
  if (g != 1) {
    try {
      e = e.pow(Rational(1) / g);
    } catch (const std::domain_error&) {
    }
  }
  if (e.exponents().begin()->second < 0) {
    e = e.inverse();
    kind = kind == RegionKind::inside ? RegionKind::outside : RegionKind::inside;
  }
  return Region{kind, e};
}

Region convergence_region(const HypergeometricData& h) {
  bool all_vanishing = true;
  bool terminating = true;
  for (const auto& p : h.parts) {
    if (p.singular) return Region{RegionKind::nowhere, ParamMonomial()};
    if (p.vanishing) continue;
    all_vanishing = false;
    bool term = std::any_of(p.upper.begin(), p.upper.end(), [](const AffineForm& u) { return is_pole(u); });
    terminating = terminating && term;
  }
  if (all_vanishing || terminating) return Region{RegionKind::everywhere, ParamMonomial()};
  if (h.excess < 1) return Region{RegionKind::everywhere, ParamMonomial()};
  if (h.excess > 1) return Region{RegionKind::nowhere, ParamMonomial()};
  return canonical_region(RegionKind::inside, h.argument);
}

std::vector<RegionGroup> group_by_region(const std::vector<Region>& regions) {
  std::vector<RegionGroup> groups;
  RegionGroup excluded{Region{RegionKind::nowhere, ParamMonomial()}, {}};
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].kind == RegionKind::nowhere) {
      excluded.members.push_back(i);
      continue;
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const RegionGroup& g) { return g.region == regions[i]; });
    if (it == groups.end()) {
      groups.push_back(RegionGroup{regions[i], {i}});
    } else {
      it->members.push_back(i);
    }
  }
  if (!excluded.members.empty()) groups.push_back(std::move(excluded));
  return groups;
}

Rational evaluate_affine(const AffineForm& f, const std::map<std::string, Rational, NameLess>& values) {
  Rational v = f.constant();
  for (const auto& [name, c] : f.terms()) {
    auto it = values.find(name);
    if (it == values.end()) throw Error(kModule, ErrorKind::bad_value, "no value for " + name);
    v += c * it->second;
  }
  return v;
}

Rational evaluate_monomial(const ParamMonomial& m, const std::map<std::string, Rational, NameLess>& values) {
  Rational v = m.coefficient();
  for (const auto& [name, e] : m.exponents()) {
    auto it = values.find(name);
    if (it == values.end()) throw Error(kModule, ErrorKind::bad_value, "no value for " + name);
    if (!is_integer(e)) throw Error(kModule, ErrorKind::unsupported, "fractional exponent in exact evaluation");
    v *= pow(it->second, to_int64(numerator(e)));
  }
  return v;
}

Rational reconstructed_ratio(const HypergeometricData& h, std::size_t part, long m,
                             const std::map<std::string, Rational, NameLess>& values) {
  const auto& p = h.parts.at(part);
  Rational r = evaluate_monomial(h.argument, values) / Rational(m + 1);
  for (const auto& u : p.upper) r *= evaluate_affine(u, values) + m;
  for (const auto& l : p.lower) r /= evaluate_affine(l, values) + m;
  return r;
}

}  // namespace mob
