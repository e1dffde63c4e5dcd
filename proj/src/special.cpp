#include "mob/special.hpp"

#include "mob/error.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace mob {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void pole(cplx z, const char* fn) {
  throw Error("numerics", ErrorKind::pole,
              std::string(fn) + " has a pole at " + std::to_string(z.real()));
}

bool is_real(cplx z) { return z.imag() == 0.0; }

// Lanczos coefficients, g = 7, n = 9.
constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma for Re z >= 1/2.
cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kG + 0.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z), stable for large |Im z|.
cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 30) return std::log(std::sin(kPi * z));
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the dominant exponential.
  const cplx w = cplx(0, 1) * kPi * z;
  if (z.imag() > 0) return -w + std::log((1.0 - std::exp(2.0 * w)) / cplx(0, 2));
  return w + std::log((std::exp(-2.0 * w) - 1.0) / cplx(0, 2));
}

constexpr std::array<double, 8> kBernoulli = {1.0 / 6,  -1.0 / 30, 1.0 / 42,    -1.0 / 30,
                                              5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};

cplx digamma_asymptotic(cplx z) {
  cplx r = std::log(z) - 0.5 / z;
  const cplx z2 = 1.0 / (z * z);
  cplx p = z2;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    r -= kBernoulli[k - 1] / (2.0 * static_cast<double>(k)) * p;
    p *= z2;
  }
  return r;
}

cplx trigamma_asymptotic(cplx z) {
  const cplx iz = 1.0 / z;
  cplx r = iz + 0.5 * iz * iz;
  const cplx z2 = iz * iz;
  cplx p = z2 * iz;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    r += kBernoulli[k - 1] * p;
    p *= z2;
  }
  return r;
}

}  // namespace

std::optional<long> nonpositive_integer(cplx z) {
  if (std::abs(z.imag()) > 1e-13 * std::max(1.0, std::abs(z.real()))) return std::nullopt;
  const double r = std::round(z.real());
  if (r > 0 || std::abs(z.real() - r) > 1e-13 * std::max(1.0, std::abs(r))) return std::nullopt;
  return static_cast<long>(-r);
}

cplx log_gamma(cplx z) {
  if (nonpositive_integer(z)) pole(z, "Gamma");
  if (is_real(z)) {
    int sign = 1;
    const double v = boost::math::lgamma(z.real(), &sign);
    return {v, sign < 0 ? kPi : 0.0};
  }
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  return lanczos_log_gamma(z);
}

cplx gamma(cplx z) {
  if (nonpositive_integer(z)) pole(z, "Gamma");
  if (is_real(z)) {
    const double x = z.real();
    if (x == std::floor(x) && x <= 21) {
      double f = 1;
      for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
      return f;
    }
    if (std::abs(x) < 170) return boost::math::tgamma(x);
  }
  return std::exp(log_gamma(z));
}

cplx rgamma(cplx z) {
  if (nonpositive_integer(z)) return 0.0;
  return 1.0 / gamma(z);
}

cplx digamma(cplx z) {
  if (nonpositive_integer(z)) pole(z, "digamma");
  if (is_real(z)) return boost::math::digamma(z.real());
  if (z.real() < 0.5) return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  cplx shift = 0;
  while (std::abs(z) < 12) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  return shift + digamma_asymptotic(z);
}

cplx trigamma(cplx z) {
  if (nonpositive_integer(z)) pole(z, "trigamma");
  if (is_real(z)) return boost::math::trigamma(z.real());
  if (z.real() < 0.5) {
    const cplx s = std::sin(kPi * z);
    return kPi * kPi / (s * s) - trigamma(1.0 - z);
  }
  cplx shift = 0;
  while (std::abs(z) < 12) {
    shift += 1.0 / (z * z);
    z += 1.0;
  }
  return shift + trigamma_asymptotic(z);
}

cplx sign_power(cplx s) {
  if (is_real(s)) {
    const double x = s.real();
    const double twice = 2 * x;
    if (twice == std::round(twice)) {
      const long k = static_cast<long>(std::llround(twice)) % 4;
      switch ((k + 4) % 4) {
        case 0:
          return 1.0;
        case 1:
          return cplx(0, 1);
        case 2:
          return -1.0;
        default:
          return cplx(0, -1);
      }
    }
  }
  return std::exp(cplx(0, kPi) * s);
}

}  // namespace mob
