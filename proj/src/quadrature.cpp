#include "mob/quadrature.hpp"

#include "mob/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace mob {

namespace {

const char* kModule = "numerics";

struct Point {
  const IntegrandSpec& spec;
  const Values& params;
  const std::vector<double>& x;

  cplx value(const std::string& name) const {
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
      if (spec.variables[i].name == name) return x[i];
    }
    auto it = params.find(name);
    if (it == params.end()) throw Error(kModule, ErrorKind::bad_value, "parameter " + name + " has no value");
    return it->second;
  }

  cplx power(cplx base, cplx e) const {
    if (e.imag() == 0 && e.real() == std::round(e.real()) && std::abs(e.real()) < 64) {
      return std::pow(base, static_cast<int>(e.real()));
    }
    if (base == 0.0) return e.real() > 0 ? cplx(0) : cplx(std::numeric_limits<double>::infinity());
    if (base.imag() == 0 && base.real() > 0 && e.imag() == 0) return std::pow(base.real(), e.real());
    return std::exp(e * std::log(base));
  }

  cplx monomial(const Monomial& m) const {
    cplx r = to_double(m.coefficient);
    for (const auto& [name, e] : m.powers) r *= power(value(name), to_double(e));
    for (const auto& s : m.subsums) r *= power(sum(s.summands), evaluate(s.exponent, params));
    return r;
  }

  cplx sum(const std::vector<Monomial>& summands) const {
    cplx r = 0;
    for (const auto& m : summands) r += monomial(m);
    return r;
  }

  cplx factor(const Factor& f) const {
    if (auto p = std::get_if<PowerFactorSpec>(&f)) return power(value(p->base), evaluate(p->exponent, params));
    if (auto e = std::get_if<ExpFactor>(&f)) {
      const cplx a = monomial(e->argument);
      return std::exp(e->negated ? -a : a);
    }
    if (auto m = std::get_if<MultinomialFactor>(&f)) return power(sum(m->summands), evaluate(m->exponent, params));
    const auto& k = std::get<KnownSeriesFactor>(f);
    const cplx nu = evaluate(k.order, params);
    const cplx z = monomial(k.argument);
    if (nu.imag() != 0 || z.imag() != 0) throw Error(kModule, ErrorKind::domain, "besselj needs real order and argument");
    if (z.real() >= 0) return std::cyl_bessel_j(nu.real(), z.real());
    if (nu.real() != std::round(nu.real())) throw Error(kModule, ErrorKind::domain, "besselj of a negative argument");
    const double j = std::cyl_bessel_j(nu.real(), -z.real());
    return static_cast<long>(nu.real()) % 2 == 0 ? j : -j;
  }

  cplx integrand() const {
    cplx r = to_double(spec.scale);
    for (const auto& f : spec.factors) r *= factor(f);
    for (const auto& reg : spec.regulators) r *= power(value(reg.target), value(reg.symbol));
    return r;
  }
};

}  // namespace

double quadrature_target(std::size_t dims) {
  switch (dims) {
    case 1:
      return 1e-8;
    case 2:
      return 1e-6;
    default:
      return 1e-4;
  }
}

using Integrator = boost::math::quadrature::exp_sinh<double>;

static NumericValue integrate_with(Integrator& integrator, const std::function<double(double)>& f, double tol) {
  NumericValue out;
  double error = 0, l1 = 0;
  std::size_t levels = 0;
  try {
    out.value = integrator.integrate(f, tol, &error, &l1, &levels);
  } catch (const std::exception& e) {
    throw Error(kModule, ErrorKind::numeric, std::string("quadrature failed: ") + e.what());
  }
  out.error = error;
  out.terms = static_cast<long>(levels);
  if (!std::isfinite(out.value.real()) || error > tol * std::max(1.0, l1) * 10) out.status = SumStatus::max_terms;
  return out;
}

NumericValue integrate_half_line(const std::function<double(double)>& f, double tol) {
  static Integrator integrator;
  return integrate_with(integrator, f, tol);
}

cplx evaluate_integrand(const IntegrandSpec& spec, const Values& params, const std::vector<double>& point) {
  if (point.size() != spec.variables.size()) throw std::invalid_argument("point dimension mismatch");
  return Point{spec, params, point}.integrand();
}

NumericValue quadrature_oracle(const IntegrandSpec& spec, const Values& params, double target) {
  const std::size_t dims = spec.variables.size();
  if (dims == 0 || dims > 3) throw Error(kModule, ErrorKind::unsupported, "quadrature supports 1 to 3 variables");
  if (target <= 0) target = quadrature_target(dims);
  bool complex_params = false;
  for (const auto& [name, v] : params) complex_params = complex_params || v.imag() != 0;

  // x = rho * u with u on the simplex, u_i = prod_{j<i} (1 - t_j) * t_i:
  // dx = rho^(dims-1) * prod_i (1 - t_i)^(dims-1-i) drho dt.
  // Inner levels run tighter so their noise stays below the outer tolerance.
  const std::size_t simplex = dims - 1;
  Integrator radial;
  std::vector<boost::math::quadrature::tanh_sinh<double>> cells(simplex);
  std::vector<double> t(simplex, 0.0);
  std::vector<double> x(dims, 0.0);

  auto component = [&](bool imag) {
    double outer_error = 0;
    auto along_ray = [&]() {
      std::vector<double> u(dims);
      double rest = 1, jac = 1;
      for (std::size_t i = 0; i < simplex; ++i) {
        u[i] = rest * t[i];
        jac *= std::pow(rest, static_cast<double>(simplex - i));
        rest *= 1 - t[i];
      }
      u[simplex] = rest;
      NumericValue r = integrate_with(
          radial,
          [&](double rho) {
            for (std::size_t i = 0; i < dims; ++i) x[i] = rho * u[i];
            const cplx v = evaluate_integrand(spec, params, x);
            const double c = (imag ? v.imag() : v.real()) * std::pow(rho, static_cast<double>(simplex));
            // Overflow at extreme abscissae (0 * inf); the weight there is negligible.
            return std::isfinite(c) ? c : 0.0;
          },
          std::max(1e-13, target * 1e-1));
      if (simplex == 0) outer_error = r.error;
      return jac * r.value.real();
    };
    std::function<double(std::size_t)> level = [&](std::size_t d) -> double {
      if (d == simplex) return along_ray();
      double error = 0;
      double v = 0;
      try {
        v = cells[d].integrate(
            [&](double s) {
              t[d] = s;
              return level(d + 1);
            },
            0.0, 1.0, std::max(1e-13, target * std::pow(1e-1, static_cast<double>(d))), &error);
      } catch (const std::exception& e) {
        throw Error(kModule, ErrorKind::numeric, std::string("quadrature failed: ") + e.what());
      }
      if (d == 0) outer_error = error;
      return v;
    };
    const double v = level(0);
    return std::pair<double, double>{v, outer_error};
  };

  NumericValue out;
  auto [re, err_re] = component(false);
  out.value = re;
  out.error = err_re;
  if (complex_params) {
    auto [im, err_im] = component(true);
    out.value += cplx(0, im);
    out.error += err_im;
  }
  out.terms = static_cast<long>(dims);
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw Error(kModule, ErrorKind::numeric, "quadrature did not converge");
  }
  return out;
}

}  // namespace mob
