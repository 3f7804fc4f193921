#pragma once
// Reference evaluations for the tests. Nothing here calls into the library:
// Legendre functions come from explicit polynomials, Bessel functions and
// quadrature from Boost, ODEs from a hand-rolled RK4.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

namespace indep {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// d^m/dx^m P_l(x) from the explicit coefficient sum of P_l
inline cplx legendre_poly_derivative(int l, int m, cplx x) {
  cplx s = 0;
  for (int k = 0; 2 * k <= l; ++k) {
    int p = l - 2 * k;
    if (p < m) continue;
    double c = (k % 2 ? -1.0 : 1.0) * boost::math::binomial_coefficient<double>(l, k) *
               boost::math::binomial_coefficient<double>(2 * l - 2 * k, l) / std::ldexp(1.0, l);
    c *= boost::math::factorial<double>(p) / boost::math::factorial<double>(p - m);
    s += c * std::pow(x, p - m);
  }
  return s;
}

// P_l^m(x), m >= 0, Condon-Shortley phase. For real x > 1 the factor
// (1 - x^2)^{1/2} is taken as -i sqrt(x^2 - 1).
inline cplx legendre(int l, int m, cplx x) {
  cplx sine;
  if (x.imag() == 0 && std::abs(x.real()) > 1)
    sine = cplx(0, x.real() > 0 ? -1 : 1) * std::sqrt(x.real() * x.real() - 1);
  else
    sine = std::sqrt(1.0 - x * x);
  return (m % 2 ? -1.0 : 1.0) * std::pow(sine, m) * legendre_poly_derivative(l, m, x);
}

// i_l, k_l with k_l(z) = sqrt(2/(pi z)) K_{l+1/2}(z), so k_0 = e^-z / z
inline double bessel_i(int l, double z) { return std::sqrt(pi / (2 * z)) * boost::math::cyl_bessel_i(l + 0.5, z); }
inline double bessel_k(int l, double z) { return std::sqrt(2 / (pi * z)) * boost::math::cyl_bessel_k(l + 0.5, z); }

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, tol);
}

inline double integrate_gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
}

inline cplx integrate_c(const std::function<cplx(double)>& f, double a, double b) {
  return {integrate([&](double t) { return f(t).real(); }, a, b),
          integrate([&](double t) { return f(t).imag(); }, a, b)};
}

// Classical RK4 for y'' = F(x, y, y'), complex.
inline std::array<cplx, 2> rk4(const std::function<cplx(double, cplx, cplx)>& F, std::array<cplx, 2> y, double x0,
                               double x1, int steps) {
  double h = (x1 - x0) / steps;
  auto f = [&](double x, const std::array<cplx, 2>& s) { return std::array<cplx, 2>{s[1], F(x, s[0], s[1])}; };
  for (int i = 0; i < steps; ++i) {
    double x = x0 + i * h;
    auto k1 = f(x, y);
    auto k2 = f(x + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
    auto k3 = f(x + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
    auto k4 = f(x + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    y[0] += h / 6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }
  return y;
}

// Least-squares line through (x, y)
struct Line {
  double slope, intercept;
};
inline Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {b, (sy - b * sx) / n};
}

// ---- vector waves about the origin, built by finite differences of the scalar
// waves phi = z_l(kappa r) Y_lm with z = i_l (regular) or k_l (outgoing).
// M = grad(phi) x r / sqrt(l(l+1)), N = curl M / kappa.
using Vec = std::array<cplx, 3>;

struct VectorWaves {
  double kappa;

  cplx scalar(int l, int m, bool outgoing, const double* x) const {
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    double th = std::acos(x[2] / r), ph = std::atan2(x[1], x[0]);
    double rad = outgoing ? bessel_k(l, kappa * r) : bessel_i(l, kappa * r);
    return rad * boost::math::spherical_harmonic(l, m, th, ph);
  }
  static Vec gradient(const std::function<cplx(const double*)>& f, const double* x, double h) {
    Vec g;
    for (int i = 0; i < 3; ++i) {
      double a[3] = {x[0], x[1], x[2]}, b[3] = {x[0], x[1], x[2]};
      a[i] += h;
      b[i] -= h;
      g[i] = (f(a) - f(b)) / (2 * h);
    }
    return g;
  }
  Vec M(int l, int m, bool out, const double* x) const {
    auto g = gradient([&](const double* y) { return scalar(l, m, out, y); }, x, 1e-5);
    double s = std::sqrt(l * (l + 1.0));
    return {(g[1] * x[2] - g[2] * x[1]) / s, (g[2] * x[0] - g[0] * x[2]) / s, (g[0] * x[1] - g[1] * x[0]) / s};
  }
  // curl curl (r phi) = grad d_r(r phi) - r lap(phi) = grad d_r(r phi) - kappa^2 r phi
  Vec N(int l, int m, bool out, const double* x) const {
    auto radial = [&](const double* y) {
      auto g = gradient([&](const double* z) { return scalar(l, m, out, z); }, y, 1e-5);
      return scalar(l, m, out, y) + y[0] * g[0] + y[1] * g[1] + y[2] * g[2];
    };
    auto g = gradient(radial, x, 2e-4);
    double s = std::sqrt(l * (l + 1.0));
    cplx p = scalar(l, m, out, x);
    Vec v;
    for (int i = 0; i < 3; ++i) v[i] = (g[i] - kappa * kappa * x[i] * p) / (kappa * s);
    return v;
  }
};

}  // namespace indep
