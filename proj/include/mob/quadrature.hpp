#pragma once

#include "mob/numerics.hpp"
#include "mob/parser.hpp"

#include <functional>
#include <vector>

namespace mob {

// Target accuracy by dimension: 1e-8, 1e-6, 1e-4.
double quadrature_target(std::size_t dims);

// Integral over (0, inf) by exp-sinh quadrature; `tol` is relative.
NumericValue integrate_half_line(const std::function<double(double)>& f, double tol);

// Integrand value at `point` (one coordinate per declared variable), with any
// regulators applied as var^symbol.
cplx evaluate_integrand(const IntegrandSpec& spec, const Values& params, const std::vector<double>& point);

// Brute-force value of the integral over (0, inf)^dims, dims <= 3. Throws
// Error(numeric) when the nested quadrature fails to converge.
NumericValue quadrature_oracle(const IntegrandSpec& spec, const Values& params, double target = 0);

}  // namespace mob
