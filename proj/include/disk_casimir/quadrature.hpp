#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace disk_casimir {

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Gauss-Legendre nodes by Newton iteration on P_n; cached per order.
inline const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
      }
      pp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2 / ((1 - z * z) * pp * pp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

// Integrate f over [a, b] with an n-point rule.
template <class F>
auto gauss_integrate(F&& f, double a, double b, int n) {
  const auto& r = gauss_legendre(n);
  double h = 0.5 * (b - a), c = 0.5 * (b + a);
  auto s = f(c + h * r.x[0]) * r.w[0];
  for (int i = 1; i < n; ++i) s += f(c + h * r.x[i]) * r.w[i];
  return s * h;
}

}  // namespace disk_casimir
