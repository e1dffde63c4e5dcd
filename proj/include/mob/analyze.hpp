#pragma once

#include "mob/solve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mob {

// Sub-series n = step*m + residue written as
//   prefactor * sum_m prod (upper)_m / prod (lower)_m * argument^m / m!
struct HypergeometricPart {
  int residue = 0;
  bool vanishing = false;  // every term is zero
  bool singular = false;   // every term has a pole
  bool classified = true;  // false: Gamma prefactor breaks the Pochhammer form
  Rational prefactor_scale{1};
  CoefficientTerm prefactor;
  std::vector<AffineForm> upper;
  std::vector<AffineForm> lower;
};

struct HypergeometricData {
  std::string free_index;
  int step = 1;
  ParamMonomial argument;
  std::vector<HypergeometricPart> parts;
  // p - q of the pFq form; invariant under cancellation of common pairs.
  int excess = 0;

  // "3F2(a,b,c; d,e; z)" for one-part data, otherwise a residue listing.
  std::string str() const;
};

// Throws Error(unsupported) if a slope is not rational-affine in the free index.
HypergeometricData classify(const SeriesRepresentation& rep);

enum class RegionKind { everywhere, inside, outside, nowhere };

// inside: |expr| < 1, outside: |expr| > 1. Boundary points are excluded.
struct Region {
  RegionKind kind = RegionKind::everywhere;
  ParamMonomial expr;

  std::string str() const;
  friend bool operator==(const Region&, const Region&) = default;
};

// Canonical form: sign dropped, exponents divided by their gcd when the
// coefficient root stays rational, first exponent positive.
Region canonical_region(RegionKind kind, const ParamMonomial& expr);

Region convergence_region(const HypergeometricData& h);

struct RegionGroup {
  Region region;
  std::vector<std::size_t> members;  // indices into the representation list
};

// Groups by canonical region in order of first appearance. Representations
// whose region is `nowhere` land in a single trailing group.
std::vector<RegionGroup> group_by_region(const std::vector<Region>& regions);

// Exact term ratio t(step*(m+1)+r) / t(step*m+r) computed from the data, with
// rational parameter values; used to cross-check the classification.
Rational reconstructed_ratio(const HypergeometricData& h, std::size_t part, long m,
                             const std::map<std::string, Rational, NameLess>& values);

Rational evaluate_affine(const AffineForm& f, const std::map<std::string, Rational, NameLess>& values);
Rational evaluate_monomial(const ParamMonomial& m, const std::map<std::string, Rational, NameLess>& values);

}  // namespace mob
