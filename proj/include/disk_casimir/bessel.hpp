#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace disk_casimir {

using cplx = std::complex<double>;

namespace detail {
// ascending series j_l(z) = z^l/(2l+1)!! sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
// sgn = -1 gives j, +1 gives the modified i_l.
template <class T>
T ascending_sph_bessel(int l, T z, double sgn) {
  T pre = 1;
  for (int k = 1; k <= l; ++k) pre *= z / double(2 * k + 1);
  T term = 1, sum = 1, q = sgn * z * z / 2.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (double(k) * double(2 * l + 2 * k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return pre * sum;
}

// Miller downward recurrence for f_{l-1} = (2l+1)/z f_l + sgn f_{l+1}
// (sgn = +1: j_l, sgn = -1: i_l), normalized by f0.
template <class T>
std::vector<T> miller_column(int lmax, T z, T f0, double sgn) {
  int start = lmax + 20 + int(std::abs(z));
  std::vector<T> f(lmax + 1);
  T fp1 = 0, fl = 1e-300;
  for (int l = start; l > 0; --l) {
    T fm1 = double(2 * l + 1) / z * fl - sgn * fp1;
    fp1 = fl;
    fl = fm1;
    if (l - 1 <= lmax) f[l - 1] = fl;
    if (std::abs(fl) > 1e250) {  // rescale
      fp1 *= 1e-250;
      fl *= 1e-250;
      for (int k = l - 1; k <= lmax; ++k) f[k] *= 1e-250;
    }
  }
  // divide first: f0 / f[0] alone overflows when f0 is large
  T base = f[0];
  for (auto& v : f) v = v / base * f0;
  return f;
}
}  // namespace detail

// Spherical Bessel j_l(z), l = 0..lmax, complex z.
inline std::vector<cplx> sph_bessel_j_column(int lmax, cplx z) {
  std::vector<cplx> out(lmax + 1);
  if (std::abs(z) < 1.0) {
    for (int l = 0; l <= lmax; ++l) out[l] = detail::ascending_sph_bessel(l, z, -1.0);
    return out;
  }
  cplx j0 = std::sin(z) / z, j1 = std::sin(z) / (z * z) - std::cos(z) / z;
  auto f = detail::miller_column(std::max(lmax, 1), z, cplx(1), 1.0);
  // normalize on the larger of j0, j1 to dodge zeros of sin z
  cplx scale = std::abs(j0) > std::abs(j1) ? j0 / f[0] : j1 / f[1];
  for (int l = 0; l <= lmax; ++l) out[l] = f[l] * scale;
  return out;
}

// Spherical Hankel h_l^(1)(z) = j_l + i y_l, upward recurrence.
inline std::vector<cplx> sph_hankel1_column(int lmax, cplx z) {
  const cplx I(0, 1);
  std::vector<cplx> h(std::max(lmax, 1) + 1);
  cplx e = std::exp(I * z);
  h[0] = -I * e / z;
  h[1] = -e * (z + I) / (z * z);
  for (int l = 1; l < lmax; ++l) h[l + 1] = double(2 * l + 1) / z * h[l] - h[l - 1];
  h.resize(lmax + 1);
  return h;
}

// i_l(z) = sqrt(pi/2z) I_{l+1/2}(z)
inline std::vector<double> mod_sph_bessel_i_column(int lmax, double z) {
  if (!(z > 0)) throw domain_error("mod_sph_bessel_i: z must be > 0");
  if (z > 700) throw range_error("mod_sph_bessel_i: overflow for z > 700");
  std::vector<double> out(lmax + 1);
  if (z < 1.0) {
    for (int l = 0; l <= lmax; ++l) out[l] = detail::ascending_sph_bessel(l, z, 1.0);
    return out;
  }
  return detail::miller_column(lmax, z, std::sinh(z) / z, -1.0);
}

// k_l(z) = sqrt(2/(pi z)) K_{l+1/2}(z), so k_0 = e^{-z}/z
inline std::vector<double> mod_sph_bessel_k_column(int lmax, double z) {
  if (!(z > 0)) throw domain_error("mod_sph_bessel_k: z must be > 0");
  std::vector<double> k(std::max(lmax, 1) + 1);
  k[0] = std::exp(-z) / z;
  k[1] = k[0] * (1 + 1 / z);
  for (int l = 1; l < lmax; ++l) {
    k[l + 1] = k[l - 1] + double(2 * l + 1) / z * k[l];
    if (!std::isfinite(k[l + 1])) throw range_error("mod_sph_bessel_k: overflow");
  }
  k.resize(lmax + 1);
  return k;
}

inline double mod_sph_bessel_i(int l, double z) {
  if (l < 0) throw domain_error("mod_sph_bessel_i: l < 0");
  return mod_sph_bessel_i_column(l, z)[l];
}

inline double mod_sph_bessel_k(int l, double z) {
  if (l < 0) throw domain_error("mod_sph_bessel_k: l < 0");
  return mod_sph_bessel_k_column(l, z)[l];
}

}  // namespace disk_casimir
