#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace disk_casimir {

using cplx = std::complex<double>;

// n!! with (-1)!! = 0!! = 1 and, by convention, (-2)!! = 1
inline double double_factorial(int n) {
  if (n < -2) throw domain_error("double_factorial: n < -2");
  double r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline double factorial_ratio(int a, int b) {  // a!/b!
  double r = 1;
  for (int k = b + 1; k <= a; ++k) r *= k;
  for (int k = a + 1; k <= b; ++k) r /= k;
  return r;
}

// sqrt(1 - x^2) with the cut on real |x| > 1 approached from above,
// i.e. -i sign(x) sqrt(x^2 - 1) there.
inline cplx legendre_sine(cplx x) {
  if (x.imag() == 0.0 && std::abs(x.real()) > 1.0) {
    double r = std::sqrt(x.real() * x.real() - 1);
    return cplx(0, x.real() > 0 ? -r : r);
  }
  return std::sqrt(1.0 - x * x);
}

namespace detail {
// R_l = d^m P_l / dx^m for l = m..lmax (same three-term recurrence as P_l^m)
inline std::vector<cplx> reduced_column(int m, int lmax, cplx x) {
  std::vector<cplx> r(std::max(lmax - m + 1, 0));
  if (r.empty()) return r;
  r[0] = double_factorial(2 * m - 1);
  if (lmax > m) r[1] = x * double(2 * m + 1) * r[0];
  for (int l = m + 1; l < lmax; ++l)
    r[l - m + 1] = (double(2 * l + 1) * x * r[l - m] - double(l + m) * r[l - m - 1]) / double(l - m + 1);
  return r;
}

inline void check_order(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw domain_error("legendre: need l >= 0 and |m| <= l");
}
}  // namespace detail

// P_l^m(x) for l = |m|..lmax, Condon-Shortley phase; negative m via
// P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
inline std::vector<cplx> legendre_column(int m, int lmax, cplx x) {
  int am = std::abs(m);
  auto r = detail::reduced_column(am, lmax, x);
  cplx pre = std::pow(-legendre_sine(x), am);
  for (int l = am; l <= lmax; ++l) {
    r[l - am] *= pre;
    if (m < 0) r[l - am] *= (am % 2 ? -1.0 : 1.0) * factorial_ratio(l - am, l + am);
  }
  return r;
}

// d/dx P_l^m(x) for l = |m|..lmax.
inline std::vector<cplx> legendre_prime_column(int m, int lmax, cplx x) {
  int am = std::abs(m);
  auto r0 = detail::reduced_column(am, lmax, x);
  auto r1 = detail::reduced_column(am + 1, lmax, x);
  cplx s = legendre_sine(x);
  std::vector<cplx> out(r0.size());
  double sgn = am % 2 ? -1.0 : 1.0;
  for (int l = am; l <= lmax; ++l) {
    cplx d1 = l > am ? r1[l - am - 1] : cplx(0);
    cplx v;
    if (am == 0) {
      v = d1;
    } else {
      // d/dx s^m = -m x s^(m-2)
      if (am == 1 && s == 0.0) throw domain_error("legendre_p_prime: m = 1 derivative singular at x = +-1");
      v = sgn * (-double(am) * x * std::pow(s, am - 2) * r0[l - am] + std::pow(s, am) * d1);
    }
    if (m < 0) v *= sgn * factorial_ratio(l - am, l + am);
    out[l - am] = v;
  }
  return out;
}

inline cplx legendre_p(int l, int m, cplx x) {
  detail::check_order(l, m);
  return legendre_column(m, l, x).back();
}

inline cplx legendre_p_prime(int l, int m, cplx x) {
  detail::check_order(l, m);
  return legendre_prime_column(m, l, x).back();
}

inline double legendre_p(int l, int m, double x) {
  if (std::abs(x) > 1) throw domain_error("legendre_p: real overload needs |x| <= 1");
  return legendre_p(l, m, cplx(x)).real();
}

inline double legendre_p_prime(int l, int m, double x) {
  if (std::abs(x) > 1) throw domain_error("legendre_p_prime: real overload needs |x| <= 1");
  return legendre_p_prime(l, m, cplx(x)).real();
}

// normalization integral of (P_l^m)^2 over [-1, 1]
inline double legendre_norm(int l, int m) {
  return 2.0 / (2 * l + 1) * factorial_ratio(l + m, l - m);
}

enum class MomentKind { flat, inv_sqrt, x_inv_sqrt, x_inv };

namespace detail {
inline double rgamma(double x) {  // 1/Gamma, zero at the poles
  if (x <= 0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}
inline double sign_pow(int k) { return k % 2 ? -1.0 : 1.0; }
}  // namespace detail

// Closed forms of the integrals of P_l^m over [-1, 1] against the weights
// 1, 1/sqrt(1-x^2), x/sqrt(1-x^2), x/(1-x^2).
inline double legendre_moment(MomentKind kind, int l, int m) {
  detail::check_order(l, m);
  if (m < 0) {
    int am = -m;
    return detail::sign_pow(am) * factorial_ratio(l - am, l + am) * legendre_moment(kind, l, am);
  }
  using detail::rgamma;
  using detail::sign_pow;
  const double pi = std::numbers::pi;
  bool even = (l - m) % 2 == 0;
  switch (kind) {
    case MomentKind::flat:
      if (!even) return 0.0;
      if (m == 0) return l == 0 ? 2.0 : 0.0;
      return sign_pow(l) * std::ldexp(1.0, m - 1) * m * std::tgamma(0.5 * l) * std::tgamma(0.5 * (l + m + 1)) *
             rgamma(0.5 * (l + 3)) / std::tgamma(0.5 * (l - m) + 1);
    case MomentKind::inv_sqrt:
      if (!even) return 0.0;
      return std::ldexp(1.0, m) * pi * sign_pow((l - m) / 2) * std::tgamma(0.5 * (l + 1)) * rgamma(0.5 * (1 - m - l)) *
             rgamma(1 + 0.5 * l) / std::tgamma(0.5 * (l - m) + 1);
    case MomentKind::x_inv_sqrt:
      if (even) return 0.0;
      return std::ldexp(1.0, m) * pi * sign_pow((l - m + 1) / 2) * std::tgamma(0.5 * l) * rgamma(-0.5 * (m + l)) *
             rgamma(0.5 * (l + 3)) * rgamma(0.5 * (1 - m + l));
    case MomentKind::x_inv:
      if (m == 0) throw domain_error("legendre_moment: x/(1-x^2) weight diverges for m = 0");
      if (even) return 0.0;
      return std::ldexp(1.0, m + 1) * pi * sign_pow((l - m + 1) / 2) * std::tgamma(0.5 * (1 + l)) / m *
             rgamma(-0.5 * (m + l)) * rgamma(1 + 0.5 * l) * rgamma(0.5 * (1 - m + l));
  }
  return 0.0;
}

}  // namespace disk_casimir
