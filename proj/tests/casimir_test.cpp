#include <disk_casimir/casimir.hpp>
#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <numbers>
#include <random>

using namespace disk_casimir;
using enum Polarization;
constexpr double pi = std::numbers::pi;

// ---- plane-wave conversion ----------------------------------------------------

TEST(Conversion, AxialNoCrossPolarizationAtMZero) {
  for (int l = 1; l <= 5; ++l)
    for (double kp : {0.0, 0.1, 0.8, 3.0}) {
      EXPECT_EQ(conversion_element_axial(l, 0, E, M, kp, 0.6), 0.0);
      EXPECT_EQ(conversion_element_axial(l, 0, M, E, kp, 0.6), 0.0);
    }
}

TEST(Conversion, DipoleAxialValue) {
  // P_1' = 1, so the element is C kperp / kappa with C^2 = 4 pi N_{1,0} / 2
  EXPECT_NEAR(norm_N(1, 0), 1.5, 1e-15);
  const double C = std::sqrt(4 * pi * 1.5 / 2);
  for (double kp : {0.2, 0.8, 2.5}) {
    EXPECT_NEAR(std::abs(conversion_element_axial(1, 0, E, E, kp, 0.6) - C * kp / 0.6), 0, 1e-12);
    EXPECT_NEAR(std::abs(conversion_element_axial(1, 0, M, M, kp, 0.6) - C * kp / 0.6), 0, 1e-12);
  }
}

TEST(Conversion, ContinuousAtNormalIncidence) {
  for (int l = 1; l <= 4; ++l)
    for (int m = -l; m <= l; ++m)
      for (int P = 0; P < 2; ++P)
        for (int Q = 0; Q < 2; ++Q) {
          cplx a = conversion_element_axial(l, m, Polarization(P), Polarization(Q), 0.0, 0.7);
          cplx b = conversion_element_axial(l, m, Polarization(P), Polarization(Q), 1e-7, 0.7);
          EXPECT_NEAR(std::abs(a - b), 0, 1e-5) << l << " " << m << " " << P << Q;
        }
}

TEST(Conversion, RotatedReducesToAxialWithoutTilt) {
  const double kp = 0.9, ka = 0.5;
  for (double phi : {0.0, 0.4, 2.9})
    for (int l = 1; l <= 4; ++l)
      for (int m = -l; m <= l; ++m)
        for (int P = 0; P < 2; ++P)
          for (int Q = 0; Q < 2; ++Q) {
            auto p = Polarization(P), q = Polarization(Q);
            cplx want = conversion_element_axial(l, m, p, q, kp, ka) * std::exp(cplx(0, m * phi));
            cplx got = conversion_element_rotated(l, m, p, q, kp, phi, ka, 0.0);
            EXPECT_NEAR(std::abs(got - want), 0, 1e-12 * (1 + std::abs(want)));
          }
}

TEST(Conversion, EdgeOnMirrorSymmetry) {
  // edge-on, the mirror phi -> -phi maps m -> -m with a sign (-1)^m, flipped for cross polarization
  const double kp = 0.8, ka = 0.6;
  for (double phi : {0.37, 1.9})
    for (int l = 1; l <= 4; ++l)
      for (int m = -l; m <= l; ++m)
        for (int P = 0; P < 2; ++P)
          for (int Q = 0; Q < 2; ++Q) {
            auto p = Polarization(P), q = Polarization(Q);
            cplx a = conversion_element_rotated(l, m, p, q, kp, phi, ka, pi / 2);
            cplx b = conversion_element_rotated(l, -m, p, q, kp, -phi, ka, pi / 2);
            double s = (m % 2 ? -1.0 : 1.0) * (P == Q ? 1.0 : -1.0);
            EXPECT_NEAR(std::abs(b - s * a), 0, 1e-12 * (1 + std::abs(a)));
          }
}

TEST(Conversion, TiltedCosineWithoutTilt) {
  for (double kp : {0.0, 0.3, 2.0})
    for (double phi : {0.0, 1.0}) {
      cplx c = tilted_cos(kp, phi, 0.7, 0.0);
      EXPECT_NEAR(std::abs(c - std::hypot(kp, 0.7) / 0.7), 0, 1e-14);
    }
}

// ---- plane operator --------------------------------------------------------------

TEST(PlaneOperator, BlockDiagonalInMWithoutTilt) {
  const ChannelLayout lay(4);
  auto U = translation_operator(Geometry{2.5, 0.0}, 0.4, 4);
  for (int m = -4; m <= 4; ++m)
    for (int m2 = -4; m2 <= 4; ++m2) {
      if (m == m2) continue;
      int a = 2 * lay.block_l(m), b = 2 * lay.block_l(m2);
      EXPECT_EQ(U.block(lay.start(m), lay.start(m2), a, b).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(PlaneOperator, DistanceDependence) {
  // l = 1, m = 0, same polarization: the kperp integral collapses to
  // int_kappa^inf (x^2 - kappa^2) e^{-2 d x} dx = e^{-2 d kappa} (kappa / (2 d^2) + 1 / (4 d^3))
  const double k = 0.5;
  const ChannelLayout lay(3);
  auto g = [&](double d) { return std::exp(-2 * d * k) * (k / (2 * d * d) + 1 / (4 * d * d * d)); };
  auto U6 = translation_operator(Geometry{6, 0.0}, k, 3);
  auto U8 = translation_operator(Geometry{8, 0.0}, k, 3);
  for (auto P : {E, M}) {
    int i = lay.index(1, 0, P);
    double r = std::abs(U8(i, i) / U6(i, i));
    EXPECT_NEAR(r / (g(8) / g(6)), 1, 1e-9);
    // the log-slope is -2 kappa up to the algebraic factor
    double slope = std::log(r) / 2;
    EXPECT_NEAR(slope + 2 * k, std::log((k / 128 + 1 / 2048.0) / (k / 72 + 1 / 864.0)) / 2, 1e-9);
  }
}

TEST(PlaneOperator, EdgeOnDiffersAndStaysReal) {
  const Geometry face{3, 0.0}, edge{3, pi / 2};
  auto U0 = translation_operator(face, 0.5, 4), U1 = translation_operator(edge, 0.5, 4);
  EXPECT_GT((U1 - U0).norm(), 1e-2 * U0.norm());
  auto r = disk_response(0.5, 4, default_n_max(4));
  auto a = logdet_integrand(face, r), b = logdet_integrand(edge, r);
  EXPECT_LT(a.im_residual, 1e-10);
  EXPECT_LT(b.im_residual, 1e-10);
  EXPECT_LT(a.value.real(), 0);
  EXPECT_LT(b.value.real(), 0);
  EXPECT_GT(std::abs(b.value.real() - a.value.real()), 1e-3 * std::abs(a.value.real()));
}

// ---- log-det ---------------------------------------------------------------------

TEST(LogDet, SeriesAgreesWithDirect) {
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  for (double size : {0.05, 0.2}) {
    Eigen::MatrixXcd A(12, 12);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) A(i, j) = cplx(nd(rng), nd(rng));
    A *= size / A.norm();
    cplx direct = std::log((Eigen::MatrixXcd::Identity(12, 12) - A).determinant());
    auto r = logdet_one_minus(A);
    EXPECT_NEAR(std::abs(r.value - direct), 0, 1e-13);
  }
}

TEST(LogDet, RejectsRoundTripAtUnity) {
  Eigen::MatrixXcd A = 1.2 * Eigen::MatrixXcd::Identity(4, 4);
  EXPECT_THROW(logdet_one_minus(A), geometry_error);
}

TEST(LogDet, SumOverAzimuthalBlocksWithoutTilt) {
  const int L = 4;
  const Geometry g{2, 0.0};
  const double k = 0.4;
  auto r = disk_response(k, L, default_n_max(L));
  auto U = translation_operator(g, k, L);
  const ChannelLayout lay(L);
  cplx sum = 0;
  for (int m = -L; m <= L; ++m) {
    int n = 2 * lay.block_l(m), s = lay.start(m);
    Eigen::MatrixXcd M = r.blocks[m + L] * U.block(s, s, n, n);
    sum += std::log((Eigen::MatrixXcd::Identity(n, n) - M).determinant());
  }
  auto full = logdet_integrand(g, r);
  EXPECT_NEAR(std::abs(full.value - sum), 0, 1e-10 * std::abs(sum));
}

// ---- integrand -------------------------------------------------------------------

TEST(Integrand, VanishesFromBelowFarAway) {
  double prev = -1;
  for (double d : {10.0, 20.0, 40.0}) {
    double f = logdet_integrand(Geometry{d, 0.0}, 0.3, 5).value.real();
    EXPECT_LT(f, 0);
    EXPECT_LT(std::abs(f), std::abs(prev));
    prev = f;
  }
  EXPECT_LT(std::abs(prev), 1e-12);
}

TEST(Integrand, FiniteStaticLimit) {
  // T ~ kappa^3 and U ~ kappa^-3 for the dipoles, so the integrand goes to a
  // negative constant as kappa -> 0 rather than to zero
  const Geometry g{3, 0.0};
  auto a = logdet_integrand(g, 1e-6, 5), b = logdet_integrand(g, 1e-5, 5), c = logdet_integrand(g, 1e-2, 5);
  EXPECT_LT(a.value.real(), 0);
  EXPECT_NEAR(a.value.real() / b.value.real(), 1, 1e-6);
  EXPECT_NEAR(a.value.real() / c.value.real(), 1, 1e-3);
  EXPECT_LT(a.im_residual, 1e-8);
}

TEST(Integrand, TruncationAtModerateDistance) {
  const Geometry g{4, 0.0};
  for (double k : {0.1, 0.25, 0.6}) {
    double f5 = logdet_integrand(g, k, 5).value.real(), f7 = logdet_integrand(g, k, 7).value.real();
    EXPECT_LT(std::abs(f7 / f5 - 1), 0.01) << k;
  }
}

// ---- energy ------------------------------------------------------------------------

class Energy : public ::testing::Test {
 protected:
  static const ResponseTable& table() {
    static const ResponseTable t = response_table(KappaQuadrature{}, 5, default_n_max(5));
    return t;
  }
  static EnergyResult at(double d, double theta) { return casimir_energy(Geometry{d, theta}, table(), {}); }
};

TEST_F(Energy, BelowProximityFaceOn) {
  for (double d : {1.5, 2.0, 3.0, 4.0}) {
    auto e = at(d, 0);
    double r = e.energy / e.references.pfa;
    EXPECT_GT(r, 0) << d;
    EXPECT_LT(r, 1) << d;
    EXPECT_LT(e.max_im_residual, 1e-8);
  }
}

TEST_F(Energy, BelowEdgeProximityEdgeOn) {
  for (double d : {1.5, 2.0, 3.0, 4.0}) {
    auto e = at(d, pi / 2);
    double r = e.energy / e.references.edge_pfa;
    EXPECT_GT(r, 0) << d;
    EXPECT_LT(r, 1) << d;
    EXPECT_LT(e.max_im_residual, 1e-8);
  }
}

TEST_F(Energy, DipoleLimit) {
  const double target = -5 / (12 * pi * pi);
  double prev = 1;
  for (double d : {6.0, 8.0, 10.0}) {
    double dev = std::abs(at(d, 0).total() * std::pow(d, 4) / target - 1);
    EXPECT_LT(dev, prev) << d;
    prev = dev;
  }
  EXPECT_LT(std::abs(at(8, 0).total() * 4096 / target - 1), 0.1);
}

TEST_F(Energy, MagnitudeFallsWithDistance) {
  for (double th : {0.0, pi / 2}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double d : {1.5, 2.0, 3.0, 4.0, 6.0}) {
      double e = std::abs(at(d, th).energy);
      EXPECT_LT(e, prev) << d;
      prev = e;
    }
  }
}

TEST_F(Energy, ContinuousInTilt) {
  double a = at(2, 0).energy, b = at(2, 1e-4).energy;
  EXPECT_LT(std::abs(b / a - 1), 1e-3);
}

// Share of the energy from kappa < 2/d. In the dipole limit the image of an
// in-plane electric dipole weighs kappa by (1 + x + x^2) e^-x and a normal
// magnetic one by 2 (1 + x) e^-x, x = 2 kappa d, both integrating to 4.
static double dipole_low_fraction() {
  const double x = 4, e = std::exp(-x);
  double in_plane = 4 - e * (x * x + 3 * x + 4);  // int_0^4 (1 + x + x^2) e^-x
  double normal = 2 * (2 - e * (2 + x));                                 // int_0^4 2 (1 + x) e^-x
  double aE = alpha_E_disk, aM = -alpha_M_disk;
  return (2 * aE * in_plane + aM * normal) / (4 * (2 * aE + aM));
}

TEST(Integrand, LowFrequenciesDominateFarAway) {
  // split at 2/d exactly; the energy-grid nodes straddle it
  using GL = boost::math::quadrature::gauss<double, 20>;
  auto fraction = [](double d, int L) {
    auto f = [&](double k) { return logdet_integrand(Geometry{d, 0.0}, k, L).value.real(); };
    double low = GL::integrate(f, 1e-5, 2 / d);
    double high = GL::integrate(f, 2 / d, 6 / d) + GL::integrate(f, 6 / d, 20 / d);
    return low / (low + high);
  };
  const double f0 = dipole_low_fraction();
  EXPECT_NEAR(f0, 0.8718, 1e-4);
  double f8 = fraction(8, 5), f16 = fraction(16, 3);
  EXPECT_NEAR(f8, f0, 0.01);
  EXPECT_LT(std::abs(f16 - f0), std::abs(f8 - f0));
}

TEST(EnergyGeometry, RejectsOverlap) {
  try {
    casimir_energy(Geometry{1.0, 0.0});
    FAIL() << "expected geometry_error";
  } catch (const geometry_error& e) {
    EXPECT_NE(std::string(e.what()).find("sphere enclosing the disk does not intersect the plane"),
              std::string::npos);
  }
  EXPECT_THROW(translation_operator(Geometry{0.5, 0.3}, 0.5, 2), geometry_error);
}

// ---- reference curves ----------------------------------------------------------------

TEST(References, ClosedForms) {
  for (double d : {1.5, 2.0, 5.0})
    EXPECT_NEAR(reference_values(Geometry{d, 0}).pfa * d * d * d, -std::pow(pi, 3) / 720, 1e-15);
  EXPECT_NEAR(reference_values(Geometry{10, 0}).dipole, -5 / (12 * pi * pi) * 1e-4, 1e-18);
  EXPECT_NEAR(reference_values(Geometry{2, 0}).edge_pfa, -0.0067415 * pi / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(alpha_E_disk, 4 / (3 * pi), 1e-16);
  EXPECT_NEAR(alpha_M_disk, -2 / (3 * pi), 1e-16);
}
