#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "disk_tmatrix.hpp"
#include "errors.hpp"
#include "legendre.hpp"
#include "quadrature.hpp"

namespace disk_casimir {

// Disk center at distance d from the plane, normal tilted by theta from the
// plane normal. Lengths in units of the disk radius unless R is set.
struct Geometry {
  double d = 2.0;
  double theta = 0.0;
  double R = 1.0;

  void validate() const {
    if (!(R > 0)) throw domain_error("geometry: R must be positive");
    if (!(d > R))
      throw geometry_error("geometry: need d > R, so that the sphere enclosing the disk does not intersect the plane");
    if (theta < 0 || theta > std::numbers::pi / 2 + 1e-12) throw domain_error("geometry: theta must lie in [0, pi/2]");
  }
};

inline double chi(Polarization P) { return P == Polarization::E ? 1.0 : -1.0; }

inline double conversion_prefactor(int l, int m) {
  return std::sqrt(4 * std::numbers::pi * norm_N(l, m) / (l * (l + 1.0)));
}

// Spherical-to-plane-wave conversion for the untilted disk (azimuthal factor
// e^{i m phi_k} stripped). Legendre functions at kpar/kappa > 1 through the
// continuation of legendre_p.
inline cplx conversion_element_axial(int l, int m, Polarization P, Polarization Q, double kperp, double kappa) {
  if (!(kappa > 0) || kperp < 0) throw domain_error("conversion_element_axial: need kappa > 0, kperp >= 0");
  if (l < 1 || std::abs(m) > l) throw domain_error("conversion_element_axial: need l >= 1, |m| <= l");
  const double kpar = std::hypot(kperp, kappa), x = kpar / kappa;
  const double C = conversion_prefactor(l, m);
  const int a = std::abs(m);
  if (kperp == 0) {
    // (kperp/kappa) P_l^m' -> i l(l+1)/2, -i/2 and (i m kappa/kperp) P_l^m -> -l(l+1)/2, -1/2 for m = 1, -1
    if (a != 1) return 0.0;
    double v = m == 1 ? l * (l + 1) / 2.0 : 0.5;
    return P == Q ? C * cplx(0, m * v) : -C * chi(P) * v;
  }
  // P_l^m at x > 1 on the continuation sqrt(1 - x^2) = -i kperp/kappa, taken
  // from kperp directly so nothing cancels near x = 1
  const cplx sn(0, -kperp / kappa);
  auto r0 = detail::reduced_column(a, l, x), r1 = detail::reduced_column(a + 1, l, x);
  double neg = m < 0 ? (a % 2 ? -1.0 : 1.0) * factorial_ratio(l - a, l + a) : 1.0;
  double sg = a % 2 ? -1.0 : 1.0;
  cplx R0 = r0.back(), R1 = l > a ? r1.back() : cplx(0);
  if (P == Q) {
    // (kperp/kappa) d/dx[(-s)^a R0] with ds/dx = -x/s
    cplx v = sg * (std::pow(sn, a) * R1 - double(a) * x * std::pow(sn, a - 2) * R0);
    return C * neg * (kperp / kappa) * v;
  }
  if (m == 0) return 0.0;
  return C * cplx(0, m) * (kappa / kperp) * chi(P) * neg * sg * std::pow(sn, a) * R0;
}

namespace detail {
// Direction data of the plane wave seen from the tilted disk frame:
// u = cos theta_q, wp/wm = sin theta_q e^{+-i phi_q}.
struct TiltedDirection {
  cplx u, wp, wm;
};

inline TiltedDirection tilted_direction(double kperp, double phi_k, double kappa, double theta) {
  const cplx I(0, 1);
  const double kpar = std::hypot(kperp, kappa);
  cplx a = kperp * std::cos(phi_k) / (I * kappa), b = kperp * std::sin(phi_k) / (I * kappa);
  double c = kpar / kappa, ct = std::cos(theta), st = std::sin(theta);
  cplx x = a * ct + c * st;
  return {c * ct - a * st, x + I * b, x - I * b};
}

// Both polarizations Q of D_{lmP,kQ}(theta) for l = max(1,|m|)..lmax, written
// with polynomials in (u, wp, wm) so no branch of sin theta_q is ever chosen.
// out[(l - l_lo)][P][Q]
inline void conversion_column_rotated(int m, int lmax, const TiltedDirection& dir, double kperp, double kappa,
                                      double theta, std::vector<std::array<std::array<cplx, 2>, 2>>& out) {
  const int a = std::abs(m), l_lo = std::max(1, a);
  const cplx I(0, 1);
  const cplx u = dir.u, s2 = dir.wp * dir.wm;
  const cplx ws = m >= 0 ? dir.wp : dir.wm;
  const double ct = std::cos(theta), st = std::sin(theta);
  auto r0 = reduced_column(a, lmax, u), r1 = reduced_column(a + 1, lmax, u);
  cplx wpow = std::pow(ws, a), wpow_r = a > 0 ? std::pow(ws, a - 1) : cplx(0);
  out.assign(lmax - l_lo + 1, {});
  for (int l = l_lo; l <= lmax; ++l) {
    // E0 = e^{i m phi} P_l^m(u), E1 the same with one more derivative of P_l
    double c = m >= 0 ? (a % 2 ? -1.0 : 1.0) : factorial_ratio(l - a, l + a);
    cplx R0 = r0[l - a], R1 = l > a ? r1[l - a - 1] : cplx(0);
    cplx E0 = c * wpow * R0, E0r = c * wpow_r * R0, E1 = c * wpow * R1;
    double pre = conversion_prefactor(l, m) * kappa / kperp;
    cplx same = st * (double(a) * E0 * ws / 2.0 - double(a) * (1.0 + u * u) * E0r / 2.0 + u * (dir.wp + dir.wm) * E1 / 2.0) +
                ct * (double(a) * u * E0 - s2 * E1);
    cplx cross = I * double(m) * ct * E0 - I * double(m) * u * st * E0r + st * (dir.wp - dir.wm) * E1 / (2.0 * I);
    auto& o = out[l - l_lo];
    for (int P = 0; P < 2; ++P) {
      double cp = chi(Polarization(P));
      o[P][P] = pre * same;
      o[P][1 - P] = pre * cp * cross;
    }
  }
}
}  // namespace detail

// D_{lmP,kQ}(theta) for a plane wave of transverse momentum kperp at azimuth phi_k.
inline cplx conversion_element_rotated(int l, int m, Polarization P, Polarization Q, double kperp, double phi_k,
                                       double kappa, double theta) {
  if (!(kappa > 0) || !(kperp > 0)) throw domain_error("conversion_element_rotated: need kappa, kperp > 0");
  if (l < 1 || std::abs(m) > l) throw domain_error("conversion_element_rotated: need l >= 1, |m| <= l");
  std::vector<std::array<std::array<cplx, 2>, 2>> col;
  detail::conversion_column_rotated(m, l, detail::tilted_direction(kperp, phi_k, kappa, theta), kperp, kappa, theta,
                                    col);
  return col.back()[int(P)][int(Q)];
}

// cos theta_q of the tilted frame (exposed for checks)
inline cplx tilted_cos(double kperp, double phi_k, double kappa, double theta) {
  return detail::tilted_direction(kperp, phi_k, kappa, theta).u;
}

// ---- channel bookkeeping ---------------------------------------------------

// Channels (l, m, P), grouped by m = -lmax..lmax; inside a group P-major then l,
// matching the TMatrixBlock layout.
struct ChannelLayout {
  int l_max = 0;
  std::vector<int> offset;  // start of group m, indexed m + l_max; offset.back() = total

  explicit ChannelLayout(int lmax) : l_max(lmax) {
    if (lmax < 1) throw domain_error("ChannelLayout: l_max must be >= 1");
    int o = 0;
    for (int m = -lmax; m <= lmax; ++m) {
      offset.push_back(o);
      o += 2 * block_l(m);
    }
    offset.push_back(o);
  }
  int l_lo(int m) const { return std::max(1, std::abs(m)); }
  int block_l(int m) const { return l_max - l_lo(m) + 1; }
  int size() const { return offset.back(); }
  int start(int m) const { return offset[m + l_max]; }
  int index(int l, int m, Polarization P) const { return start(m) + int(P) * block_l(m) + (l - l_lo(m)); }
};

// ---- plane operator ----------------------------------------------------------

struct PlaneQuadrature {
  int u_nodes = 96;       // Gauss-Legendre nodes in u (kperp = kappa sinh u)
  double cutoff = 37.0;   // stop where 2 d kappa (cosh u - 1) exceeds this (e^-37 ~ 1e-16)
  int phi_nodes = 0;      // trapezoid nodes in phi_k; 0 = 4 l_max + 8
};

// Overall factor of the plane operator fixed by the large-distance
// sphere-plane limit -9 R^3 / (16 pi d^4); the bare k-integral gives half.
inline constexpr double plane_normalization = 2.0;

inline double u_upper(double d, double kappa, double cutoff) {
  return std::acosh(1.0 + cutoff / (2 * d * kappa));
}

// U(theta): reflection off the plane mapping outgoing to regular waves of the disk.
// theta = 0 uses the one-dimensional kperp integral and is block diagonal in m.
inline Eigen::MatrixXcd translation_operator(const Geometry& g, double kappa, int l_max,
                                             const PlaneQuadrature& q = {}) {
  g.validate();
  if (!(kappa > 0)) throw domain_error("translation_operator: kappa must be positive");
  const ChannelLayout lay(l_max);
  const int N = lay.size();
  const double d = g.d / g.R, kap = kappa * g.R;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(N, N);
  const double umax = u_upper(d, kap, q.cutoff);
  const auto& rule = gauss_legendre(q.u_nodes);
  const double pi = std::numbers::pi;
  using enum Polarization;

  if (g.theta == 0.0) {
    for (int i = 0; i < q.u_nodes; ++i) {
      double uu = umax / 2 * (1 + rule.x[i]), w = umax / 2 * rule.w[i];
      double kperp = kap * std::sinh(uu), kpar = kap * std::cosh(uu);
      double weight = plane_normalization * w * std::sinh(uu) * std::exp(-2 * d * kpar) / (4 * pi);
      for (int m = -l_max; m <= l_max; ++m) {
        int L = lay.block_l(m), lo = lay.l_lo(m);
        // D_{l m P, Q} and D_{l', -m, P', Q}
        std::vector<std::array<std::array<cplx, 2>, 2>> A(L), B(L);
        for (int l = lo; l <= l_max; ++l)
          for (int P = 0; P < 2; ++P)
            for (int Q = 0; Q < 2; ++Q) {
              A[l - lo][P][Q] = conversion_element_axial(l, m, Polarization(P), Polarization(Q), kperp, kap);
              B[l - lo][P][Q] = conversion_element_axial(l, -m, Polarization(P), Polarization(Q), kperp, kap);
            }
        for (int l = lo; l <= l_max; ++l)
          for (int P = 0; P < 2; ++P)
            for (int l2 = lo; l2 <= l_max; ++l2)
              for (int P2 = 0; P2 < 2; ++P2) {
                cplx s = 0;
                for (int Q = 0; Q < 2; ++Q) s += A[l - lo][P][Q] * B[l2 - lo][P2][Q];
                U(lay.index(l, m, Polarization(P)), lay.index(l2, m, Polarization(P2))) +=
                    weight * chi(Polarization(P2)) * s;
              }
      }
    }
    return U;
  }

  const int nphi = q.phi_nodes > 0 ? q.phi_nodes : 4 * l_max + 8;
  // per node: D(theta) for (l,m,P) and D(-theta) for (l',-m',P'), both polarizations Q
  Eigen::MatrixXcd Dp(N, 2), Dm(N, 2);
  std::vector<std::array<std::array<cplx, 2>, 2>> col;
  for (int i = 0; i < q.u_nodes; ++i) {
    double uu = umax / 2 * (1 + rule.x[i]), w = umax / 2 * rule.w[i];
    double kperp = kap * std::sinh(uu), kpar = kap * std::cosh(uu);
    double weight = plane_normalization * w * std::sinh(uu) * std::exp(-2 * d * kpar) / (4 * pi) / nphi;
    for (int j = 0; j < nphi; ++j) {
      double phi = 2 * pi * j / nphi;
      auto dp = detail::tilted_direction(kperp, phi, kap, g.theta);
      auto dm = detail::tilted_direction(kperp, phi, kap, -g.theta);
      for (int m = -l_max; m <= l_max; ++m) {
        int lo = lay.l_lo(m);
        detail::conversion_column_rotated(m, l_max, dp, kperp, kap, g.theta, col);
        for (int l = lo; l <= l_max; ++l)
          for (int P = 0; P < 2; ++P)
            for (int Q = 0; Q < 2; ++Q) Dp(lay.index(l, m, Polarization(P)), Q) = col[l - lo][P][Q];
        // second factor: row (l', m', P') holds D_{l', -m', P'}(-theta)
        detail::conversion_column_rotated(-m, l_max, dm, kperp, kap, -g.theta, col);
        for (int l = lo; l <= l_max; ++l)
          for (int P = 0; P < 2; ++P)
            for (int Q = 0; Q < 2; ++Q)
              Dm(lay.index(l, m, Polarization(P)), Q) = chi(Polarization(P)) * col[l - lo][P][Q];
      }
      U.noalias() += weight * Dp * Dm.transpose();
    }
  }
  return U;
}

// ---- disk T-matrix in the basis of the plane operator -------------------------

// Regular waves i_l Y_lm, outgoing k_l Y_lm, N = curl curl / kappa: the
// spheroidal-route block picks up -(-1)^{l0}, and the 1/(ik) = -1/kappa in the
// E-mode definition flips the sign of the cross-polarization blocks.
inline Eigen::MatrixXcd plane_basis_block(const TMatrixBlock& t) {
  if (t.basis != Basis::spherical) throw domain_error("plane_basis_block: need a spherical block");
  const int L = t.size();
  Eigen::MatrixXcd out = t.entries;
  for (int i = 0; i < 2 * L; ++i)
    for (int j = 0; j < 2 * L; ++j) {
      int l0 = t.n_lo + j % L;
      double s = (l0 % 2 ? 1.0 : -1.0);
      if ((i < L) != (j < L)) s = -s;
      out(i, j) *= s;
    }
  return out;
}

// All m blocks of the disk at one imaginary frequency, in the plane basis.
struct DiskResponse {
  double kappa = 0;
  int l_max = 0, n_max = 0;
  std::vector<Eigen::MatrixXcd> blocks;  // index m + l_max
};

inline DiskResponse disk_response(double kappaR, int l_max, int n_max) {
  DiskResponse r;
  r.kappa = kappaR;
  r.l_max = l_max;
  r.n_max = n_max;
  for (int m = -l_max; m <= l_max; ++m)
    r.blocks.push_back(plane_basis_block(spherical_tmatrix(m, cplx(0, kappaR), l_max, n_max)));
  return r;
}

inline Eigen::MatrixXcd assemble_response(const DiskResponse& r) {
  const ChannelLayout lay(r.l_max);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(lay.size(), lay.size());
  for (int m = -r.l_max; m <= r.l_max; ++m) {
    int n = 2 * lay.block_l(m);
    T.block(lay.start(m), lay.start(m), n, n) = r.blocks[m + r.l_max];
  }
  return T;
}

// ---- log-det ------------------------------------------------------------------

struct LogDet {
  cplx value;
  double im_residual = 0;    // |Im| / |Re|
  double spectral_radius = 0;
};

inline LogDet logdet_one_minus(const Eigen::MatrixXcd& M, bool check_radius = true) {
  const int N = M.rows();
  cplx s = 0;
  const double fro = M.norm();
  if (fro < 0.25) {
    // far apart the log-det sits below the round-off of 1 - M; use -sum tr(M^k)/k
    Eigen::MatrixXcd P = M;
    for (int k = 1; k < 200; ++k) {
      cplx t = P.trace() / double(k);
      s -= t;
      if (std::pow(fro, k + 1) / (k + 1) <= 1e-17 * std::abs(s)) break;
      P = P * M;
    }
  } else {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N) - M;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const auto& LU = lu.matrixLU();
    for (int i = 0; i < N; ++i) s += std::log(LU(i, i));
    if (lu.permutationP().determinant() < 0) s += cplx(0, std::numbers::pi);
  }
  double im = std::remainder(s.imag(), 2 * std::numbers::pi);
  LogDet r{cplx(s.real(), im), 0, 0};
  r.im_residual = s.real() != 0 ? std::abs(im) / std::abs(s.real()) : std::abs(im);
  if (check_radius) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    r.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();
    if (r.spectral_radius >= 1)
      throw geometry_error("logdet: round-trip spectral radius >= 1; d too close to R for this truncation");
  }
  return r;
}

// T_{ll'} ~ kappa^{l+l'+1} and U_{ll'} ~ kappa^{-l-l'-1} at small kappa; the
// similarity S T U S^-1 with S = diag(kappa^-l) keeps the product O(1)
// entrywise so pivoting and the eigenvalue check see a balanced matrix.
inline LogDet logdet_integrand(const Geometry& g, const DiskResponse& r, const PlaneQuadrature& q = {}) {
  Eigen::MatrixXcd U = translation_operator(g, r.kappa / g.R, r.l_max, q);
  Eigen::MatrixXcd T = assemble_response(r);
  const ChannelLayout lay(r.l_max);
  Eigen::VectorXd s(lay.size());
  for (int m = -r.l_max; m <= r.l_max; ++m)
    for (int l = lay.l_lo(m); l <= r.l_max; ++l)
      for (int P = 0; P < 2; ++P) s(lay.index(l, m, Polarization(P))) = std::pow(r.kappa, -l);
  T = s.asDiagonal() * T * s.asDiagonal();
  U = s.cwiseInverse().asDiagonal() * U * s.cwiseInverse().asDiagonal();
  return logdet_one_minus(T * U);
}

inline LogDet logdet_integrand(const Geometry& g, double kappa, int l_max, int n_max = -1) {
  g.validate();
  if (n_max < 0) n_max = default_n_max(l_max);
  return logdet_integrand(g, disk_response(kappa * g.R, l_max, n_max));
}

// ---- energy ---------------------------------------------------------------------

struct KappaQuadrature {
  int nodes = 40;
  double lo = 1.0 / 128, hi = 4.0;  // in 1/R

  struct Node {
    double kappa, weight;
  };
  // Gauss-Legendre in log(kappa)
  std::vector<Node> rule() const {
    if (!(lo > 0) || !(hi > lo) || nodes < 2) throw domain_error("kappa quadrature: need 0 < lo < hi, nodes >= 2");
    const auto& gl = gauss_legendre(nodes);
    double span = std::log(hi / lo);
    std::vector<Node> v;
    for (int i = 0; i < nodes; ++i) {
      double t = (1 + gl.x[i]) / 2, k = lo * std::exp(span * t);
      v.push_back({k, gl.w[i] / 2 * span * k});
    }
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.kappa < b.kappa; });
    return v;
  }
};

struct ReferenceValues {
  double pfa, edge_pfa, dipole;  // hbar c / R units
};

inline constexpr double alpha_E_disk = 4.0 / (3 * std::numbers::pi);   // R^3
inline constexpr double alpha_M_disk = -2.0 / (3 * std::numbers::pi);  // R^3

inline ReferenceValues reference_values(const Geometry& g) {
  g.validate();
  const double pi = std::numbers::pi, d = g.d / g.R;
  ReferenceValues r;
  r.pfa = -(1 / (d * d * d)) * (pi * pi / 720) * pi;
  r.edge_pfa = -0.0067415 * pi * std::sqrt(1 / (2 * std::pow(d - 1, 3)));
  r.dipole = -(1 / (8 * pi * std::pow(d, 4))) * (2 * alpha_E_disk - alpha_M_disk);
  return r;
}

struct EnergyResult {
  Geometry geometry;
  int l_max = 0, n_max = 0;
  KappaQuadrature quadrature;
  std::vector<double> kappa, weight, integrand;
  double energy = 0;       // hbar c / R, over [lo, hi]
  double head = 0;         // estimate of the [0, lo] part
  double tail = 0;         // estimate of the [hi, inf) part
  double max_im_residual = 0;
  double max_spectral_radius = 0;
  ReferenceValues references{};

  double total() const { return energy + head + tail; }
};

inline int thread_budget() {
  int n = int(std::thread::hardware_concurrency());
  if (const char* e = std::getenv("CASIMIR_DISK_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) n = v;
  }
  return std::max(1, n);
}

// Run f(i) for i in [0, n) on up to thread_budget() workers.
inline void parallel_for(int n, const std::function<void(int)>& f) {
  int nt = std::min(thread_budget(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Disk responses at the nodes of a kappa rule; independent of d and theta, so
// one table serves a whole sweep.
struct ResponseTable {
  int l_max = 0, n_max = 0;
  std::vector<KappaQuadrature::Node> nodes;
  std::vector<DiskResponse> responses;
};

inline ResponseTable response_table(const KappaQuadrature& kq, int l_max, int n_max) {
  ResponseTable t;
  t.l_max = l_max;
  t.n_max = n_max;
  t.nodes = kq.rule();
  t.responses.resize(t.nodes.size());
  parallel_for(int(t.nodes.size()),
               [&](int i) { t.responses[i] = disk_response(t.nodes[i].kappa, l_max, n_max); });
  return t;
}

inline EnergyResult casimir_energy(const Geometry& g, const ResponseTable& table, const KappaQuadrature& kq,
                                   const PlaneQuadrature& pq = {}, double im_tol = 1e-8) {
  g.validate();
  EnergyResult res;
  res.geometry = g;
  res.l_max = table.l_max;
  res.n_max = table.n_max;
  res.quadrature = kq;
  const int n = int(table.nodes.size());
  std::vector<LogDet> ld(n);
  parallel_for(n, [&](int i) { ld[i] = logdet_integrand(g, table.responses[i], pq); });
  const double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    res.kappa.push_back(table.nodes[i].kappa / g.R);
    res.weight.push_back(table.nodes[i].weight / g.R);
    res.integrand.push_back(ld[i].value.real());
    res.energy += table.nodes[i].weight * ld[i].value.real() / (2 * pi);
    res.max_im_residual = std::max(res.max_im_residual, ld[i].im_residual);
    res.max_spectral_radius = std::max(res.max_spectral_radius, ld[i].spectral_radius);
  }
  res.energy /= g.R;
  if (res.max_im_residual > im_tol)
    throw convergence_error("casimir_energy: log-det not real at some kappa node", res.max_im_residual);
  // head: f ~ f0 + f2 kappa^2 through the two lowest nodes; tail: exponential
  // through the two highest.
  if (n >= 2) {
    double k0 = table.nodes[0].kappa, k1 = table.nodes[1].kappa;
    double f0 = res.integrand[0], f1 = res.integrand[1];
    double c2 = (f1 - f0) / (k1 * k1 - k0 * k0), c0 = f0 - c2 * k0 * k0, lo = kq.lo;
    res.head = (c0 * lo + c2 * lo * lo * lo / 3) / (2 * pi) / g.R;
    double ka = table.nodes[n - 2].kappa, kb = table.nodes[n - 1].kappa;
    double fa = res.integrand[n - 2], fb = res.integrand[n - 1];
    if (fa != 0 && fb / fa > 0 && fb / fa < 1) {
      double b = std::log(fa / fb) / (kb - ka);
      res.tail = fb * std::exp(-b * (kq.hi - kb)) / b / (2 * pi) / g.R;
    }
  }
  res.references = reference_values(g);
  return res;
}

inline EnergyResult casimir_energy(const Geometry& g, const KappaQuadrature& kq = {}, int l_max = 5,
                                   int n_max = -1) {
  g.validate();
  if (n_max < 0) n_max = default_n_max(l_max);
  return casimir_energy(g, response_table(kq, l_max, n_max), kq);
}

}  // namespace disk_casimir
