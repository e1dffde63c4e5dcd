#pragma once

#include <complex>
#include <optional>

namespace mob {

using cplx = std::complex<double>;

// Nonnegative m when z is within rounding of the nonpositive integer -m.
std::optional<long> nonpositive_integer(cplx z);

// log Gamma(z) up to a multiple of 2*pi*i; exp() of it is Gamma(z).
// Throws Error(pole) at nonpositive integers.
cplx log_gamma(cplx z);

// Throws Error(pole) at nonpositive integers.
cplx gamma(cplx z);

// 1/Gamma(z), zero at the poles of Gamma.
cplx rgamma(cplx z);

// psi(z) = Gamma'(z)/Gamma(z). Throws Error(pole) at nonpositive integers.
cplx digamma(cplx z);

// psi'(z). Throws Error(pole) at nonpositive integers.
cplx trigamma(cplx z);

// exp(i*pi*s), exact for integer and half-integer real s.
cplx sign_power(cplx s);

}  // namespace mob
