#pragma once

#include "mob/analyze.hpp"
#include "mob/special.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace mob {

struct NumericConfig {
  double tol = 1e-12;
  long max_terms = 1000000;
  std::vector<double> eps_ladder{1e-2, 1e-3, 1e-4};
  std::vector<double> a_ladder = default_a_ladder();
  // Recorded in reports; arithmetic is compensated double throughout.
  std::string precision = "double+neumaier";

  static std::vector<double> default_a_ladder();
  // Throws Error(bad_value) on a non-positive tolerance or non-monotone ladder.
  void validate() const;
};

enum class SumStatus { converged, max_terms, divergent };

const char* to_string(SumStatus s);

struct NumericValue {
  cplx value = 0;
  double error = 0;
  long terms = 0;
  SumStatus status = SumStatus::converged;
};

using Values = std::map<std::string, cplx, NameLess>;

cplx evaluate(const AffineForm& f, const Values& v);
cplx evaluate(const ParamMonomial& m, const Values& v);

// Value of a coefficient with no free index. Throws Error(pole) on a Gamma pole.
cplx evaluate_constant(const CoefficientTerm& t, const Rational& scale, const Values& v);

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx x);
  cplx value() const { return {sr_ + cr_, si_ + ci_}; }

 private:
  double sr_ = 0, cr_ = 0, si_ = 0, ci_ = 0;
};

// Sums terms produced by `term(n)` for n = 0, 1, ... with the shared stopping
// and divergence rules: stop after 3 consecutive terms below tol*|partial|;
// divergent when |t| grows for 10 consecutive n past n = 50.
NumericValue sum_terms(const std::function<cplx(long)>& term, const NumericConfig& cfg);

// prod (upper)_m / prod (lower)_m * x^m / m! summed by the ratio recurrence.
NumericValue sum_pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                     const NumericConfig& cfg);

// Direct term t(n) of a representation, with poles of the free index resolved
// as limits n -> n + d. Returns 0 where the limit vanishes; throws Error(pole)
// where it diverges.
cplx representation_term(const SeriesRepresentation& rep, long n, const Values& v);

// Sum of one representation: pFq recurrence for classified parts, direct
// terms otherwise.
NumericValue sum_representation(const SeriesRepresentation& rep, const HypergeometricData& h, const Values& v,
                                 const NumericConfig& cfg);

// Termwise sum of several representations over a shared free index.
NumericValue sum_group(const std::vector<const SeriesRepresentation*>& reps,
                       const std::vector<const HypergeometricData*>& data, const Values& v,
                       const NumericConfig& cfg);

// Laurent coefficients [eps^-2, eps^-1, eps^0] of one term in the regulator.
struct LaurentTerm {
  std::array<cplx, 3> coeff{};
  int order = 0;  // leading power of eps
};

LaurentTerm laurent_term(const SeriesRepresentation& rep, long n, const std::string& eps, const Values& v);

struct EpsilonLimit {
  NumericValue analytic;
  NumericValue numeric;
  std::vector<double> ladder;
  std::vector<cplx> symmetric_values;  // (G(h) + G(-h)) / 2 on the ladder
  bool agree = true;
};

// eps -> 0 of the summed group: analytic route by termwise Laurent expansion
// (pole cancellation checked), numeric route by Neville extrapolation of the
// symmetric combination in h^2.
NumericValue epsilon_limit_analytic(const std::vector<const SeriesRepresentation*>& reps, const std::string& eps,
                                    const Values& v, const NumericConfig& cfg);
EpsilonLimit epsilon_pair_limit(const std::vector<const SeriesRepresentation*>& reps,
                                const std::vector<const HypergeometricData*>& data, const std::string& eps,
                                const Values& v, const NumericConfig& cfg);

struct ParameterLimit {
  NumericValue value;
  std::vector<double> ladder;
  std::vector<cplx> samples;
};

// A -> 1 from below: Richardson extrapolation of orders 1 and 2 in h = 1 - A.
ParameterLimit a_parameter_limit(const std::function<NumericValue(double)>& f, const NumericConfig& cfg);

// Polynomial extrapolation to x = 0 through (x_i, y_i); returns value and the
// change from the previous order as error.
std::pair<cplx, double> neville_at_zero(const std::vector<double>& x, const std::vector<cplx>& y);

}  // namespace mob
