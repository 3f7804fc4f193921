#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "bessel.hpp"
#include "errors.hpp"
#include "legendre.hpp"

namespace disk_casimir {

struct SizeParameter {
  cplx gamma;
  double radius = 1.0;
  SizeParameter(cplx g, double r = 1.0) : gamma(g), radius(r) {
    if (!(r > 0)) throw domain_error("SizeParameter: radius must be positive");
  }
};

inline cplx ipow(int k) {  // i^k
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Legendre expansion Sp_n^m(eta; i gamma) = sum_nu d_nu P_nu^m(eta),
// normalized so that the integral of Sp^2 over [-1,1] is the Legendre norm.
struct SpheroidalCoefficients {
  int n = 0, m = 0;
  cplx gamma;
  cplx eigenvalue;
  int nu_min = 0, nu_max = 0;   // nu runs nu_min, nu_min+2, ..., nu_max
  std::vector<cplx> d;          // Legendre coefficients for signed m
  std::vector<cplx> d_abs;      // same for |m| (radial functions use these)

  cplx legendre_coeff(int nu) const {
    if (nu < nu_min || nu > nu_max || (nu - nu_min) % 2) return 0.0;
    return d[(nu - nu_min) / 2];
  }
  // A_{n,nu} = i^{n-nu} d_nu
  cplx A(int nu) const { return ipow(n - nu) * legendre_coeff(nu); }
  double tail_ratio() const {
    double mx = 0;
    for (auto& v : d) mx = std::max(mx, std::abs(v));
    return std::abs(d.back()) / mx;
  }
};

inline int default_nu_max(int n, cplx gamma) { return n + 20 + int(std::ceil(3 * std::abs(gamma))); }

inline SpheroidalCoefficients spheroidal_coefficients(int n, int m, cplx gamma, double tol = 1e-13, int nu_max = -1) {
  int am = std::abs(m);
  if (n < am) throw domain_error("spheroidal_coefficients: need n >= |m|");
  if (nu_max < 0) nu_max = default_nu_max(n, gamma);
  SpheroidalCoefficients c;
  c.n = n;
  c.m = m;
  c.gamma = gamma;
  c.nu_min = am + (n - am) % 2;
  if ((nu_max - c.nu_min) % 2) --nu_max;
  c.nu_max = nu_max;
  const int K = (nu_max - c.nu_min) / 2 + 1;
  const int k = (n - c.nu_min) / 2;

  auto a = [am](int nu) { return nu <= am ? 0.0 : std::sqrt(double(nu * nu - am * am) / (4.0 * nu * nu - 1)); };
  const cplx g2 = gamma * gamma;
  // H = L(L+1) - gamma^2 X^2 in the normalized Legendre basis of one parity
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(K, K);
  for (int i = 0; i < K; ++i) {
    int nu = c.nu_min + 2 * i;
    H(i, i) = double(nu * (nu + 1)) - g2 * (a(nu) * a(nu) + a(nu + 1) * a(nu + 1));
    if (i + 1 < K) H(i, i + 1) = H(i + 1, i) = -g2 * a(nu + 1) * a(nu + 2);
  }

  Eigen::VectorXcd e(K);
  if (std::abs(g2.imag()) <= 1e-15 * std::abs(g2)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.real());
    if (es.info() != Eigen::Success) throw numerical_error("spheroidal_coefficients: eigen solver failed");
    c.eigenvalue = es.eigenvalues()(k);  // ascending; k-th in parity class
    e = es.eigenvectors().col(k).cast<cplx>();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw numerical_error("spheroidal_coefficients: eigen solver failed");
    // pick the eigenvalue nearest the first-order perturbative guess
    cplx guess = H(k, k);
    int best = 0;
    for (int i = 1; i < K; ++i)
      if (std::abs(es.eigenvalues()(i) - guess) < std::abs(es.eigenvalues()(best) - guess)) best = i;
    c.eigenvalue = es.eigenvalues()(best);
    e = es.eigenvectors().col(best);
  }
  // Away from the dominant entry the eigenvector components are tiny and the
  // solver only gets them to round-off of the largest one. Rebuild both flanks
  // from the minimal-solution ratios of the three-term recurrence instead.
  {
    const cplx lam = c.eigenvalue;
    auto off = [&](int i) { return H(i, i + 1); };  // couples i and i+1
    std::vector<cplx> up(K, 0.0);                   // up[i] = e(i+1) / e(i)
    for (int i = K - 2; i >= k; --i) {
      cplx den = H(i + 1, i + 1) - lam + (i + 2 < K ? off(i + 1) * up[i + 1] : 0.0);
      up[i] = -off(i) / den;
    }
    for (int i = k; i + 1 < K; ++i) e(i + 1) = up[i] * e(i);
    cplx dn = 0;  // e(i-1) / e(i), built from the bottom
    std::vector<cplx> down(K, 0.0);
    for (int i = 1; i <= k; ++i) {
      cplx den = H(i - 1, i - 1) - lam + (i >= 2 ? off(i - 2) * dn : 0.0);
      dn = -off(i - 1) / den;
      down[i] = dn;
    }
    for (int i = k; i >= 1; --i) e(i - 1) = down[i] * e(i);
  }
  // bilinear normalization sum e^2 = h_n, positive real part at nu = n
  cplx s2 = (e.array() * e.array()).sum();
  e *= std::sqrt(legendre_norm(n, am) / s2);
  if (e(k).real() < 0) e = -e;

  c.d_abs.resize(K);
  c.d.resize(K);
  for (int i = 0; i < K; ++i) {
    int nu = c.nu_min + 2 * i;
    c.d_abs[i] = e(i) / std::sqrt(legendre_norm(nu, am));
    // Sp^{-m} = (-1)^m (n-m)!/(n+m)! Sp^m together with the same relation for P_nu
    c.d[i] = m >= 0 ? c.d_abs[i] : c.d_abs[i] * factorial_ratio(n - am, n + am) * factorial_ratio(nu + am, nu - am);
  }
  if (c.tail_ratio() > tol)
    throw numerical_error("spheroidal_coefficients: coefficient tail not decayed; raise nu_max", c.tail_ratio());
  return c;
}

inline cplx angular_sp(const SpheroidalCoefficients& c, double eta) {
  auto P = legendre_column(c.m, c.nu_max, cplx(eta));
  cplx s = 0;
  int am = std::abs(c.m);
  for (size_t i = 0; i < c.d.size(); ++i) s += c.d[i] * P[c.nu_min + 2 * i - am];
  return s;
}

inline cplx angular_sp_prime(const SpheroidalCoefficients& c, double eta) {
  auto P = legendre_prime_column(c.m, c.nu_max, cplx(eta));
  cplx s = 0;
  int am = std::abs(c.m);
  for (size_t i = 0; i < c.d.size(); ++i) s += c.d[i] * P[c.nu_min + 2 * i - am];
  return s;
}

inline cplx angular_sp(int n, int m, double eta, cplx gamma) {
  return angular_sp(spheroidal_coefficients(n, m, gamma), eta);
}
inline cplx angular_sp_prime(int n, int m, double eta, cplx gamma) {
  return angular_sp_prime(spheroidal_coefficients(n, m, gamma), eta);
}

// sum_nu i^{nu-n} A_{n,nu}
inline cplx normalization_A(const SpheroidalCoefficients& c) {
  cplx s = 0;
  for (auto& v : c.d) s += v;
  return s;
}
inline cplx normalization_A(int n, int m, cplx gamma) { return normalization_A(spheroidal_coefficients(n, m, gamma)); }

// ---- radial functions ------------------------------------------------------

struct RadialValue {
  cplx value, derivative;
};

namespace detail {
// sum_nu d_nu (nu+m)!/(nu-m)!, the asymptotic normalization of the radial series
inline cplx radial_norm(const SpheroidalCoefficients& c) {
  int am = std::abs(c.m);
  cplx s = 0;
  for (size_t i = 0; i < c.d_abs.size(); ++i) {
    int nu = c.nu_min + 2 * i;
    s += c.d_abs[i] * factorial_ratio(nu + am, nu - am);
  }
  return s;
}

// ((1+xi^2)/xi^2)^{m/2} sum_nu i^{n-nu} d_nu c_nu z_nu(gamma xi) / norm, for z = j or h1
template <bool Hankel>
RadialValue radial_series(const SpheroidalCoefficients& c, double xi) {
  int am = std::abs(c.m);
  cplx z = c.gamma * xi;
  auto f = Hankel ? sph_hankel1_column(c.nu_max + 1, z) : sph_bessel_j_column(c.nu_max + 1, z);
  cplx s = 0, sd = 0;
  double last = 0, biggest = 0;
  int used = 0;
  for (size_t i = 0; i < c.d_abs.size(); ++i) {
    int nu = c.nu_min + 2 * i;
    if (!std::isfinite(std::abs(f[nu])) || !std::isfinite(std::abs(f[nu + 1]))) break;
    cplx fp = nu == 0 ? -f[1] : f[nu - 1] - double(nu + 1) / z * f[nu];
    cplx w = ipow(c.n - nu) * c.d_abs[i] * factorial_ratio(nu + am, nu - am);
    s += w * f[nu];
    sd += w * fp * c.gamma;
    last = std::abs(w * f[nu]);
    biggest = std::max(biggest, last);
    ++used;
  }
  if (used < int(c.d_abs.size()) && last > 1e-15 * biggest)
    throw numerical_error("radial series: overflow before the expansion converged", last / biggest);
  double pre = std::pow((1 + xi * xi) / (xi * xi), 0.5 * am);
  double dpre = -pre * am / (xi * (1 + xi * xi));
  cplx nrm = radial_norm(c);
  return {pre * s / nrm, (dpre * s + pre * sd) / nrm};
}

// Hankel series with the overall size split off: value = out.value * exp(log_scale).
// At small |gamma xi| the h_nu overflow long before the series has converged,
// so everything is carried as complex logarithms and summed relative to the largest term.
struct ScaledRadial {
  RadialValue v;
  double log_scale;
};
inline ScaledRadial radial_third_scaled(const SpheroidalCoefficients& c, double xi) {
  int am = std::abs(c.m);
  cplx z = c.gamma * xi;
  auto h01 = sph_hankel1_column(1, z);
  const int top = c.nu_max + 1;
  std::vector<cplx> lf(top + 1), rho(top + 1);  // log h_nu, h_nu / h_{nu-1}
  lf[0] = std::log(h01[0]);
  rho[1] = h01[1] / h01[0];
  lf[1] = lf[0] + std::log(rho[1]);
  for (int l = 1; l < top; ++l) {
    rho[l + 1] = double(2 * l + 1) / z - 1.0 / rho[l];
    lf[l + 1] = lf[l] + std::log(rho[l + 1]);
  }
  const int K = int(c.d_abs.size());
  std::vector<cplx> lt(K);
  double L = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < K; ++i) {
    int nu = c.nu_min + 2 * i;
    cplx w = ipow(c.n - nu) * c.d_abs[i] * factorial_ratio(nu + am, nu - am);
    lt[i] = w == 0.0 ? cplx(-std::numeric_limits<double>::infinity(), 0) : std::log(w) + lf[nu];
    L = std::max(L, lt[i].real());
  }
  cplx s = 0, sd = 0;
  for (int i = 0; i < K; ++i) {
    int nu = c.nu_min + 2 * i;
    if (!std::isfinite(lt[i].real())) continue;
    cplx t = std::exp(lt[i] - L);
    // h_nu' = h_{nu-1} - (nu+1)/z h_nu
    cplx dfac = nu == 0 ? -rho[1] : 1.0 / rho[nu] - double(nu + 1) / z;
    s += t;
    sd += t * dfac * c.gamma;
  }
  double last = std::exp(lt[K - 1].real() - L);
  if (!(last < 1e-13))
    throw numerical_error("radial series: Hankel expansion not converged; raise nu_max", last);
  double pre = std::pow((1 + xi * xi) / (xi * xi), 0.5 * am);
  double dpre = -pre * am / (xi * (1 + xi * xi));
  cplx nrm = radial_norm(c);
  return {{pre * s / nrm, (dpre * s + pre * sd) / nrm}, L};
}
}  // namespace detail

// S^(1) and its xi-derivative for xi > 0 (Bessel series converges everywhere)
inline RadialValue radial_first(const SpheroidalCoefficients& c, double xi) {
  if (!(xi > 0)) throw domain_error("radial_first: xi must be > 0 (use radial_boundary at 0)");
  return detail::radial_series<false>(c, xi);
}

// S^(3) = S^(1) + i S^(2) for xi > 1 (Hankel series)
inline RadialValue radial_third(const SpheroidalCoefficients& c, double xi) {
  if (!(xi > 1)) throw domain_error("radial_third: Hankel series needs xi > 1");
  auto r = detail::radial_third_scaled(c, xi);
  double f = std::exp(r.log_scale);
  return {r.v.value * f, r.v.derivative * f};
}

// Integrate the radial equation d/dxi[(1+xi^2) S'] + (gamma^2 xi^2 + m^2/(1+xi^2) - lambda) S = 0
// from xi0 to xi1.
inline RadialValue radial_ode(const SpheroidalCoefficients& c, RadialValue start, double xi0, double xi1,
                              double tol = 1e-13) {
  using state = std::array<cplx, 2>;
  namespace ode = boost::numeric::odeint;
  const cplx g2 = c.gamma * c.gamma, lam = c.eigenvalue;
  const double m2 = double(c.m) * c.m;
  auto rhs = [&](const state& y, state& dy, double xi) {
    double q = 1 + xi * xi;
    dy[0] = y[1];
    dy[1] = -(2 * xi * y[1] + (g2 * xi * xi + m2 / q - lam) * y[0]) / q;
  };
  // linear equation: integrate a unit-size state so the absolute tolerance means something
  double scale = std::max(std::abs(start.value), std::abs(start.derivative));
  state y{start.value / scale, start.derivative / scale};
  ode::integrate_adaptive(ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<state>()), rhs, y, xi0, xi1,
                          (xi1 - xi0) / 200);
  return {y[0] * scale, y[1] * scale};
}

struct RadialBoundaryData {
  cplx S1_at_0, S1prime_at_0, S3_at_0, S3prime_at_0;
  double wronskian_residual = 0;  // relative mismatch of the integrated value vs the Wronskian
};

// S1 at xi = 0 from the leading term of the Bessel series (exact).
inline RadialValue radial_first_at_zero(const SpheroidalCoefficients& c) {
  int am = std::abs(c.m);
  cplx nrm = detail::radial_norm(c);
  if ((c.n - am) % 2 == 0) {
    cplx v = std::pow(c.gamma, am) / double_factorial(2 * am + 1) * c.d_abs[0] * ipow(c.n - am) *
             factorial_ratio(2 * am, 0) / nrm;
    return {v, 0.0};
  }
  cplx v = std::pow(c.gamma, am + 1) / double_factorial(2 * am + 3) * c.d_abs[0] * ipow(c.n - am - 1) *
           factorial_ratio(2 * am + 1, 1) / nrm;
  return {0.0, v};
}

inline constexpr double radial_match_point = 4.0;

inline RadialBoundaryData radial_boundary(const SpheroidalCoefficients& c, double loss_tol = 1e-6) {
  if (c.gamma == 0.0) throw domain_error("radial_boundary: gamma = 0");
  RadialBoundaryData r;
  auto s1 = radial_first_at_zero(c);
  r.S1_at_0 = s1.value;
  r.S1prime_at_0 = s1.derivative;
  // only the ratio S3/S3' is taken from the series + ODE; the Wronskian fixes the size
  auto far = detail::radial_third_scaled(c, radial_match_point);
  auto s3 = radial_ode(c, far.v, radial_match_point, 0.0);
  const cplx I(0, 1);
  // Wronskian S1 S3' - S1' S3 = i / (gamma (1 + xi^2))
  auto mismatch = [&](cplx got, cplx want) {  // |got e^L / want - 1| without forming e^L
    cplx q = got / want;
    return std::abs(std::exp(std::log(q) + far.log_scale) - 1.0);
  };
  if ((c.n - std::abs(c.m)) % 2 == 0) {
    cplx w = I / (c.gamma * r.S1_at_0);
    r.S3prime_at_0 = w;
    r.S3_at_0 = w * (s3.value / s3.derivative);
    r.wronskian_residual = mismatch(s3.derivative, w);
  } else {
    cplx w = -I / (c.gamma * r.S1prime_at_0);
    r.S3_at_0 = w;
    r.S3prime_at_0 = w * (s3.derivative / s3.value);
    r.wronskian_residual = mismatch(s3.value, w);
  }
  if (r.wronskian_residual > loss_tol)
    throw numerical_error("radial_boundary: Wronskian mismatch at xi = 0", r.wronskian_residual);
  return r;
}

inline RadialBoundaryData radial_boundary(int n, int m, cplx gamma) {
  return radial_boundary(spheroidal_coefficients(n, m, gamma, 1e-13, n + 40 + int(std::ceil(3 * std::abs(gamma)))));
}

}  // namespace disk_casimir
