#pragma once

#include "mob/numerics.hpp"

#include <string>
#include <vector>

namespace mob {

enum class PfqBuilder {
  // Pochhammer denominators kept as Gamma(b)/Gamma(b+n) with base (-x)^n:
  // p brackets, p+1 indices.
  reduced,
  // One bracket per upper and lower parameter, base ((-1)^(q-1) x)^n.
  literal,
};

// Bracket series of pFq(a1..ap; b1..bq; x) in the parameters a1.., b1.., x.
BracketSeries pfq_bracket_series(std::size_t p, std::size_t q, PfqBuilder builder = PfqBuilder::reduced);

Values pfq_values(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x);

struct CertificateEntry {
  std::string label;
  std::string series;  // classified form, e.g. 2F1(a1,-b1+a1+1; a1-a2+1; 1/x)
  std::string region;
  cplx value;
  NumericValue sum;
};

struct Continuation {
  NumericValue value;
  std::vector<CertificateEntry> certificate;
};

// Analytic continuation of q+1Fq to |x| > 1 from the representations of the
// bracket pipeline that converge outside the unit disk.
// Throws Error(domain) unless p = q+1 and |x| > 1, Error(pole) when two upper
// parameters differ by an integer.
Continuation continue_pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                          const NumericConfig& cfg = {}, PfqBuilder builder = PfqBuilder::reduced);

// Defining series. Throws Error(domain) outside its disk of convergence.
NumericValue direct_pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                        const NumericConfig& cfg = {});

// Direct series inside the disk, continuation outside.
NumericValue pfq(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                 const NumericConfig& cfg = {});

// Relative residual of theta*prod(theta+b_k-1) y = x*prod(theta+a_j) y at x,
// theta = x d/dx, using finite differences of y along the ray through x.
double pfq_ode_residual(const std::vector<cplx>& upper, const std::vector<cplx>& lower, cplx x,
                        const NumericConfig& cfg = {});

}  // namespace mob
