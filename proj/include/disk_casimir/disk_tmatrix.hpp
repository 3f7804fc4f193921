#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "legendre.hpp"
#include "quadrature.hpp"
#include "spheroidal.hpp"

namespace disk_casimir {

enum class Polarization { E = 0, M = 1 };

struct SpheroidalChannel {
  int n, m;
  Polarization P;
};

struct SphericalChannel {
  int l, m;
  Polarization P;
};

// N_{n,m} = (2n+1)(n-m)! / (2 (n+m)!)
inline double norm_N(int n, int m) { return (2 * n + 1) * factorial_ratio(n - m, n + m) / 2.0; }

struct BoundaryIntegrals {
  cplx a1, b1, a2, b2;
};

// Everything the edge/T-matrix algebra needs about one spheroidal mode.
struct ModeData {
  SpheroidalCoefficients coeffs;
  RadialBoundaryData radial;
  cplx sp0, sp0_prime;  // Sp(0), Sp'(0)
  BoundaryIntegrals bi;
};

namespace detail {
// Integrals over eta = cos t, t in [0, pi]; kernels even about t = pi/2 whenever
// the parity allows a nonzero result, so only [0, pi/2] is sampled.
// Returns {int Sp cos(g s), int Sp sin(g s), int Sp c sin(g s)/s, int Sp c cos(g s)/s}.
inline std::array<cplx, 4> boundary_raw(const SpheroidalCoefficients& c, double tol = 1e-11) {
  const bool even = (c.n - std::abs(c.m)) % 2 == 0;
  auto eval = [&](int order) {
    std::array<cplx, 4> r{};
    const auto& q = gauss_legendre(order);
    const double h = std::numbers::pi / 4;
    for (int i = 0; i < order; ++i) {
      double t = h * (1 + q.x[i]), w = 2 * h * q.w[i];
      double s = std::sin(t), ct = std::cos(t);
      cplx sp = angular_sp(c, ct);
      cplx gs = c.gamma * s;
      if (even) {
        r[0] += w * sp * std::cos(gs);
        r[1] += w * sp * std::sin(gs);
      } else {
        r[2] += w * sp * ct * std::sin(gs) / s;
        r[3] += w * sp * ct * std::cos(gs) / s;
      }
    }
    return r;
  };
  auto prev = eval(16);
  for (int order = 32; order <= 1024; order *= 2) {
    auto cur = eval(order);
    double diff = 0, mag = 0;
    for (int k = 0; k < 4; ++k) {
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
      mag = std::max(mag, std::abs(cur[k]));
    }
    if (diff <= tol * mag || mag == 0) return cur;
    prev = cur;
  }
  throw numerical_error("boundary_integrals: quadrature did not converge");
}
}  // namespace detail

inline BoundaryIntegrals boundary_integrals(const SpheroidalCoefficients& c, const RadialBoundaryData& rb) {
  const int n = c.n, m = c.m;
  const bool even = (n - std::abs(m)) % 2 == 0;
  BoundaryIntegrals b{0.0, 0.0, 0.0, 0.0};
  const double N = norm_N(n, m);
  if (m == 0) {
    if (even) {
      auto r = detail::boundary_raw(c);
      b.a1 = N * r[0] / rb.S3_at_0;
      b.b1 = N * r[1] / rb.S3_at_0;
    } else {
      // a2 = 0; b2 from the delta-function form of the m = 0 condition
      b.b2 = -double(2 * n + 1) * (angular_sp(c, 1.0) - angular_sp(c, -1.0)) / (2.0 * rb.S3prime_at_0);
    }
    return b;
  }
  auto r = detail::boundary_raw(c);
  if (even) {
    b.a1 = N * r[0] / rb.S3_at_0;
    b.b1 = N * r[1] / rb.S3_at_0;
  } else {
    b.a2 = double(m) * N * r[2] / rb.S3prime_at_0;
    b.b2 = -double(m) * N * r[3] / rb.S3prime_at_0;
  }
  return b;
}

// coefficient truncation used for every mode of the disk problem
inline int mode_nu_max(int n, cplx gamma) { return n + 40 + int(std::ceil(3 * std::abs(gamma))); }

inline ModeData make_mode(int n, int m, cplx gamma) {
  ModeData d{spheroidal_coefficients(n, m, gamma, 1e-13, mode_nu_max(n, gamma)), {}, 0.0, 0.0, {}};
  d.radial = radial_boundary(d.coeffs);
  d.sp0 = angular_sp(d.coeffs, 0.0);
  d.sp0_prime = angular_sp_prime(d.coeffs, 0.0);
  d.bi = boundary_integrals(d.coeffs, d.radial);
  return d;
}

inline BoundaryIntegrals boundary_integrals(int n, int m, cplx gamma) { return make_mode(n, m, gamma).bi; }

// ---- edge-condition series ------------------------------------------------

struct EdgeSeries {
  int m = 0;
  cplx gamma;
  cplx sa1, sb1, sa2, sb2;
  // analytic totals of the subtracted small-gamma leading terms
  cplx sa1_lead, sb1_lead, sa2_lead, sb2_lead;
  int n_sum_max = 0;
  double tail = 0;  // change of the accelerated sum under one term fewer, relative
};

// Leading small-gamma value of each summand, built from the Legendre moments.
// Entry k: 0 sa1, 1 sb1, 2 sa2, 3 sb2.
inline cplx edge_leading_term(int k, int n, int m, cplx gamma) {
  const double pi = std::numbers::pi;
  const bool even = (n - std::abs(m)) % 2 == 0;
  if (k < 2) {
    if (!even) return 0.0;
    double p0 = legendre_p(n, m, 0.0);
    if (k == 0) return -(2 * n + 1) * legendre_moment(MomentKind::inv_sqrt, n, m) / (pi * p0);
    return -gamma * double(2 * n + 1) * legendre_moment(MomentKind::flat, n, m) / (pi * p0);
  }
  if (even) return 0.0;
  double p1 = legendre_p_prime(n, m, 0.0);
  if (m == 0) return k == 2 ? cplx(0.0) : cplx(2.0 / pi * (2 * n + 1) / p1);
  if (k == 2) return -gamma * (m / pi) * double(2 * n + 1) * legendre_moment(MomentKind::x_inv_sqrt, n, m) / p1;
  return (m / pi) * (2 * n + 1) * legendre_moment(MomentKind::x_inv, n, m) / p1;
}

// Closed-form sums of the leading terms over all n (the small-gamma limits).
inline std::array<cplx, 4> edge_leading_totals(int m, cplx gamma) {
  const double pi = std::numbers::pi;
  const int a = std::abs(m);
  const double sg = m < 0 ? -1.0 : 1.0;
  const double df = double_factorial(a - 1);
  if (m == 0) return {0.0, -2.0 * gamma / pi, 0.0, 2.0 / pi};
  if (a % 2 == 0)
    return {-df / double_factorial(a - 2), -2.0 * double_factorial(a) * gamma / (pi * df),
            sg * (-gamma * df / double_factorial(a - 2)), sg * 2.0 * double_factorial(a) / (pi * df)};
  return {-2.0 * df / (pi * double_factorial(a - 2)), -double_factorial(a) * gamma / df,
          sg * (-2.0 * gamma * df / (pi * double_factorial(a - 2))), sg * double_factorial(a) / df};
}

// The four raw summands of mode n.
inline std::array<cplx, 4> edge_terms(const ModeData& d) {
  const auto& r = d.radial;
  return {d.bi.a1 * r.S3prime_at_0 * d.sp0, d.bi.b1 * r.S3prime_at_0 * d.sp0, d.bi.a2 * r.S3_at_0 * d.sp0_prime,
          d.bi.b2 * r.S3_at_0 * d.sp0_prime};
}

// Levin t-transform of the series with the given terms, using the next term as
// remainder estimate. The regularized edge terms alternate in sign and decay
// algebraically, where this is far better than plain partial sums.
// Returns {value, |difference to the transform with one term fewer|}.
inline std::pair<cplx, double> levin_sum(const std::vector<cplx>& terms) {
  auto transform = [&](int k) {  // uses partial sums s_0..s_k and terms 1..k+1
    cplx num = 0, den = 0, s = 0;
    double binom = 1;
    for (int j = 0; j <= k; ++j) {
      s += terms[j];
      double f = std::pow((1.0 + j) / (1.0 + k), k - 1);
      double c = (j % 2 ? -1.0 : 1.0) * binom * f;
      num += c * s / terms[j + 1];
      den += c / terms[j + 1];
      binom = binom * (k - j) / (j + 1);
    }
    return num / den;
  };
  int n = int(terms.size());
  bool any_zero = false;
  for (auto& t : terms) any_zero = any_zero || t == 0.0;
  if (n < 4 || any_zero) {
    cplx s = 0;
    for (auto& t : terms) s += t;
    return {s, n ? std::abs(terms.back()) : 0.0};
  }
  cplx v = transform(n - 2), w = transform(n - 3);
  return {v, std::abs(v - w)};
}

inline EdgeSeries edge_series(const std::vector<ModeData>& modes, int m, cplx gamma) {
  EdgeSeries es;
  es.m = m;
  es.gamma = gamma;
  es.n_sum_max = modes.back().coeffs.n;
  auto tot = edge_leading_totals(m, gamma);
  es.sa1_lead = tot[0];
  es.sb1_lead = tot[1];
  es.sa2_lead = tot[2];
  es.sb2_lead = tot[3];
  std::array<std::vector<cplx>, 4> reg;
  for (const auto& d : modes) {
    auto t = edge_terms(d);
    bool even = (d.coeffs.n - std::abs(m)) % 2 == 0;
    for (int k = 0; k < 4; ++k) {
      if (even != (k < 2)) continue;  // parity zeros
      reg[k].push_back(t[k] - edge_leading_term(k, d.coeffs.n, m, gamma));
    }
  }
  std::array<cplx, 4> s;
  for (int k = 0; k < 4; ++k) {
    bool empty = true;
    for (auto& v : reg[k]) empty = empty && v == 0.0;
    if (empty) {
      s[k] = tot[k];
      continue;
    }
    auto [v, spread] = levin_sum(reg[k]);
    s[k] = v + tot[k];
    if (std::abs(s[k]) > 0) es.tail = std::max(es.tail, spread / std::abs(s[k]));
  }
  es.sa1 = s[0];
  es.sb1 = s[1];
  es.sa2 = s[2];
  es.sb2 = s[3];
  return es;
}

inline std::vector<ModeData> make_modes(int m, cplx gamma, int n_last) {
  std::vector<ModeData> v;
  for (int n = std::abs(m); n <= n_last; ++n) v.push_back(make_mode(n, m, gamma));
  return v;
}

// default: enough terms for about a dozen per parity class
inline int default_n_sum_max(int m, int l_max) { return std::max(l_max + 14, std::abs(m) + 25); }

inline EdgeSeries edge_series(int m, cplx gamma, int n_sum_max) {
  if (n_sum_max < std::abs(m) + 8) throw domain_error("edge_series: n_sum_max must be >= |m| + 8");
  auto es = edge_series(make_modes(m, gamma, n_sum_max), m, gamma);
  if (es.tail > 1e-6) throw truncation_error("edge_series: regularized tail not converged; raise n_sum_max", es.tail);
  return es;
}

// ---- edge coefficients and T-matrix blocks --------------------------------

struct EdgeRatios {
  cplx q1, q2;  // sa2/sb2, sa1/sb1
};

inline EdgeRatios edge_ratios(const EdgeSeries& es) {
  if (es.m == 0) throw domain_error("edge_ratios: m must be nonzero");
  if (es.sb2 == 0.0 || es.sb1 == 0.0) throw numerical_error("edge_ratios: degenerate frequency, vanishing sb sum");
  return {es.sa2 / es.sb2, es.sa1 / es.sb1};
}

inline EdgeRatios edge_ratios(int m, cplx gamma) {
  return edge_ratios(edge_series(m, gamma, default_n_sum_max(m, 0)));
}

enum class IncidentCase { Pi1_in, Pi2_in };

struct AlphaBeta {
  cplx alpha, beta;
};

// Coefficients of the edge solution for incoming mode n0 (given by its ModeData).
// For m0 = 0 alpha is 0 and beta carries the whole solution.
inline AlphaBeta alpha_beta(const ModeData& d0, const EdgeSeries& es, IncidentCase cs) {
  const int n0 = d0.coeffs.n, m0 = d0.coeffs.m;
  const bool even = (n0 - std::abs(m0)) % 2 == 0;
  const auto& r = d0.radial;
  if (cs == IncidentCase::Pi1_in) {
    if (!even) return {0.0, 0.0};
    cplx src = r.S3prime_at_0 * d0.sp0 * r.S1_at_0 / r.S3_at_0;
    if (m0 == 0) return {0.0, src / es.sb1};
    cplx q1 = es.sa2 / es.sb2;
    cplx a = src / (es.sa1 - q1 * es.sb1);
    return {a, -q1 * a};
  }
  if (even) return {0.0, 0.0};
  cplx src = r.S3_at_0 * d0.sp0_prime * r.S1prime_at_0 / r.S3prime_at_0;
  if (m0 == 0) return {0.0, src / es.sb2};
  cplx q2 = es.sa1 / es.sb1;
  cplx a = src / (es.sa2 - q2 * es.sb2);
  return {a, -q2 * a};
}

inline AlphaBeta alpha_beta(int n0, int m0, cplx gamma, IncidentCase cs) {
  if (n0 < std::abs(m0)) throw domain_error("alpha_beta: n0 < |m0|");
  auto modes = make_modes(m0, gamma, std::max(n0, default_n_sum_max(m0, 0)));
  return alpha_beta(modes[n0 - std::abs(m0)], edge_series(modes, m0, gamma), cs);
}

enum class Basis { spheroidal, rescaled, spherical };

// One m block. Channel (P, n) sits at index P*K + (n - n_lo), K = n_hi - n_lo + 1.
// Entry (row, col) = T_{n,m,n0,m}: row is the outgoing channel, col the incoming.
struct TMatrixBlock {
  int m = 0;
  cplx gamma;
  Basis basis = Basis::spheroidal;
  int n_lo = 0, n_hi = 0;
  Eigen::MatrixXcd entries;

  int size() const { return n_hi - n_lo + 1; }
  int index(Polarization P, int n) const { return int(P) * size() + (n - n_lo); }
  cplx operator()(Polarization P, int n, Polarization P0, int n0) const { return entries(index(P, n), index(P0, n0)); }
};

// The spheroidal block from precomputed modes (n = |m| .. n_max) and edge sums.
inline TMatrixBlock assemble_block(const std::vector<ModeData>& modes, const EdgeSeries& es, int n_max) {
  const int m = es.m, lo = std::abs(m);
  if (n_max < lo) throw domain_error("assemble_block: n_max < |m|");
  TMatrixBlock b;
  b.m = m;
  b.gamma = es.gamma;
  b.n_lo = lo;
  b.n_hi = n_max;
  const int K = b.size();
  b.entries = Eigen::MatrixXcd::Zero(2 * K, 2 * K);
  using enum Polarization;
  for (int n0 = lo; n0 <= n_max; ++n0) {
    const auto& d0 = modes[n0 - lo];
    const auto& r = d0.radial;
    if ((n0 - lo) % 2 == 0) {
      auto ab = alpha_beta(d0, es, IncidentCase::Pi1_in);
      b.entries(b.index(E, n0), b.index(E, n0)) = -r.S1_at_0 / r.S3_at_0;
      for (int n = lo; n <= n_max; ++n) {
        const auto& bi = modes[n - lo].bi;
        b.entries(b.index(E, n), b.index(E, n0)) += ab.alpha * bi.a1 + ab.beta * bi.b1;
        if (m != 0) b.entries(b.index(M, n), b.index(E, n0)) = ab.alpha * bi.a2 + ab.beta * bi.b2;
      }
    } else {
      auto ab = alpha_beta(d0, es, IncidentCase::Pi2_in);
      b.entries(b.index(M, n0), b.index(M, n0)) = -r.S1prime_at_0 / r.S3prime_at_0;
      for (int n = lo; n <= n_max; ++n) {
        const auto& bi = modes[n - lo].bi;
        b.entries(b.index(M, n), b.index(M, n0)) += ab.alpha * bi.a2 + ab.beta * bi.b2;
        if (m != 0) b.entries(b.index(E, n), b.index(M, n0)) = ab.alpha * bi.a1 + ab.beta * bi.b1;
      }
    }
  }
  return b;
}

inline TMatrixBlock assemble_block(int m, cplx gamma, int n_max, int n_sum_max = -1) {
  if (n_max < std::abs(m)) throw domain_error("assemble_block: n_max < |m|");
  if (n_sum_max < 0) n_sum_max = default_n_sum_max(m, n_max);
  auto modes = make_modes(m, gamma, std::max(n_max, n_sum_max));
  auto es = edge_series(modes, m, gamma);
  if (es.tail > 1e-6) throw truncation_error("assemble_block: edge series not converged", es.tail);
  return assemble_block(modes, es, n_max);
}

// Entrywise factor i^{n0-n} sqrt(N_{n0,m}/N_{n,m}).
inline TMatrixBlock rescale_block(const TMatrixBlock& b) {
  if (b.basis != Basis::spheroidal) throw domain_error("rescale_block: block is not in the spheroidal basis");
  TMatrixBlock r = b;
  r.basis = Basis::rescaled;
  const int K = b.size();
  for (int i = 0; i < 2 * K; ++i)
    for (int j = 0; j < 2 * K; ++j) {
      int n = b.n_lo + i % K, n0 = b.n_lo + j % K;
      r.entries(i, j) *= ipow(n0 - n) * std::sqrt(norm_N(n0, b.m) / norm_N(n, b.m));
    }
  return r;
}

// Change of basis between spheroidal n (|m|..n_max) and spherical l (max(1,|m|)..l_max),
// one polarization; the block matrices act identically on E and M.
struct BasisMatrix {
  int m = 0, l_lo = 1, l_max = 0, n_lo = 0, n_max = 0;
  Eigen::MatrixXcd M;      // rows l, cols n
  Eigen::MatrixXcd M_inv;  // rows n, cols l
};

inline BasisMatrix basis_matrix(int m, cplx gamma, int n_max, int l_max) {
  const int a = std::abs(m);
  if (l_max < std::max(1, a)) throw domain_error("basis_matrix: l_max < max(1, |m|)");
  if (n_max < l_max) throw domain_error("basis_matrix: n_max must be >= l_max");
  BasisMatrix bm;
  bm.m = m;
  bm.l_lo = std::max(1, a);
  bm.l_max = l_max;
  bm.n_lo = a;
  bm.n_max = n_max;
  const int L = l_max - bm.l_lo + 1, K = n_max - a + 1;
  bm.M = Eigen::MatrixXcd::Zero(L, K);
  bm.M_inv = Eigen::MatrixXcd::Zero(K, L);
  for (int n = a; n <= n_max; ++n) {
    auto c = spheroidal_coefficients(n, m, gamma, 1e-13, mode_nu_max(n, gamma));
    for (int l = bm.l_lo; l <= l_max; ++l) {
      if ((l - n) % 2 != 0) continue;
      double ll = std::sqrt(double(l) * (l + 1));
      double nr = std::sqrt(norm_N(n, m) / norm_N(l, m));
      double sg = ((l - n) / 2) % 2 == 0 ? 1.0 : -1.0;
      cplx A = c.A(l);
      bm.M(l - bm.l_lo, n - a) = ll * nr * sg * A;
      bm.M_inv(n - a, l - bm.l_lo) = nr * sg * A / ll;
    }
  }
  return bm;
}

// Truncation of the spheroidal sum used when converting to spherical waves.
inline int default_n_max(int l_max) { return l_max + 6; }

// T in the orthonormal spherical basis: M (rescaled T) M^{-1} per polarization block.
inline TMatrixBlock to_spherical(const TMatrixBlock& rescaled, const BasisMatrix& bm) {
  if (rescaled.basis != Basis::rescaled) throw domain_error("to_spherical: block is not rescaled");
  const int K = rescaled.size(), L = bm.l_max - bm.l_lo + 1;
  TMatrixBlock t;
  t.m = rescaled.m;
  t.gamma = rescaled.gamma;
  t.basis = Basis::spherical;
  t.n_lo = bm.l_lo;
  t.n_hi = bm.l_max;
  t.entries = Eigen::MatrixXcd::Zero(2 * L, 2 * L);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      t.entries.block(p * L, q * L, L, L) = bm.M * rescaled.entries.block(p * K, q * K, K, K) * bm.M_inv;
  return t;
}

inline TMatrixBlock spherical_tmatrix(int m, cplx gamma, int l_max, int n_max = -1) {
  if (n_max < 0) n_max = default_n_max(l_max);
  auto bm = basis_matrix(m, gamma, n_max, l_max);
  return to_spherical(rescale_block(assemble_block(m, gamma, n_max)), bm);
}

}  // namespace disk_casimir
