#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "casimir.hpp"
#include "disk_tmatrix.hpp"
#include "spheroidal.hpp"

namespace disk_casimir::io {

using nlohmann::json;

inline json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

// %.17g keeps doubles round-trippable and the output reproducible
inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// one JSON object per line: n, m, gamma, eigenvalue, coefficient list
inline std::string specfun_dump_line(const SpheroidalCoefficients& c) {
  json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["gamma"] = cjson(c.gamma);
  j["eigenvalue"] = cjson(c.eigenvalue);
  j["nu_min"] = c.nu_min;
  j["nu_max"] = c.nu_max;
  json co = json::array();
  for (auto& v : c.d) co.push_back(cjson(v));
  j["coefficients"] = co;
  return j.dump();
}

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::spheroidal: return "spheroidal";
    case Basis::rescaled: return "rescaled";
    default: return "spherical";
  }
}

inline json tmatrix_json(const TMatrixBlock& b) {
  json j;
  j["m"] = b.m;
  j["gamma"] = cjson(b.gamma);
  j["basis"] = basis_name(b.basis);
  j[b.basis == Basis::spherical ? "l_max" : "n_max"] = b.n_hi;
  j["index_lo"] = b.n_lo;
  j["rows"] = b.entries.rows();
  j["cols"] = b.entries.cols();
  json e = json::array();
  for (int r = 0; r < b.entries.rows(); ++r)
    for (int c = 0; c < b.entries.cols(); ++c) e.push_back(cjson(b.entries(r, c)));
  j["entries"] = e;
  return j;
}

inline TMatrixBlock tmatrix_from_json(const json& j) {
  TMatrixBlock b;
  b.m = j.at("m");
  b.gamma = cplx(j.at("gamma")[0], j.at("gamma")[1]);
  std::string bs = j.at("basis");
  b.basis = bs == "spheroidal" ? Basis::spheroidal : bs == "rescaled" ? Basis::rescaled : Basis::spherical;
  b.n_lo = j.at("index_lo");
  b.n_hi = j.contains("l_max") ? int(j["l_max"]) : int(j.at("n_max"));
  int rows = j.at("rows"), cols = j.at("cols");
  b.entries.resize(rows, cols);
  const auto& e = j.at("entries");
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) b.entries(r, c) = cplx(e[r * cols + c][0], e[r * cols + c][1]);
  return b;
}

// ---- energy tables -----------------------------------------------------------

inline constexpr const char* csv_schema = "# disk_casimir energy csv v1";

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> c = {"d_over_R",   "theta_rad",      "energy_hbar_c_over_R",
                                             "scaled_d3",  "ratio_pfa",      "ratio_edge_pfa",
                                             "ratio_dipole", "lmax",         "kappa_nodes",
                                             "max_im_residual"};
  return c;
}

inline void write_csv_header(std::ostream& os) {
  os << csv_schema << "; units hbar*c/R; kappa in 1/R\n";
  for (size_t i = 0; i < csv_columns().size(); ++i) os << (i ? "," : "") << csv_columns()[i];
  os << "\n";
}

inline void write_csv_row(std::ostream& os, const EnergyResult& r) {
  const double d = r.geometry.d / r.geometry.R, E = r.energy;
  os << num(d) << "," << num(r.geometry.theta) << "," << num(E) << "," << num(E * d * d * d) << ","
     << num(E / r.references.pfa) << "," << num(E / r.references.edge_pfa) << "," << num(E / r.references.dipole)
     << "," << r.l_max << "," << r.quadrature.nodes << "," << num(r.max_im_residual) << "\n";
}

inline json energy_json(const EnergyResult& r, bool with_nodes = true) {
  const double d = r.geometry.d / r.geometry.R;
  json j;
  j["d_over_R"] = d;
  j["theta_rad"] = r.geometry.theta;
  j["energy_hbar_c_over_R"] = r.energy;
  j["scaled_d3"] = r.energy * d * d * d;
  j["ratio_pfa"] = r.energy / r.references.pfa;
  j["ratio_edge_pfa"] = r.energy / r.references.edge_pfa;
  j["ratio_dipole"] = r.energy / r.references.dipole;
  j["lmax"] = r.l_max;
  j["nmax"] = r.n_max;
  j["kappa_nodes"] = r.quadrature.nodes;
  j["kappa_interval"] = {r.quadrature.lo, r.quadrature.hi};
  j["max_im_residual"] = r.max_im_residual;
  j["max_spectral_radius"] = r.max_spectral_radius;
  j["head_estimate"] = r.head;
  j["tail_estimate"] = r.tail;
  j["energy_with_estimates"] = r.total();
  j["references"] = {{"pfa", r.references.pfa}, {"edge_pfa", r.references.edge_pfa}, {"dipole", r.references.dipole}};
  if (with_nodes) {
    j["kappa"] = r.kappa;
    j["weight"] = r.weight;
    j["logdet"] = r.integrand;
  }
  return j;
}

// ---- oracle records ----------------------------------------------------------

struct OracleRecord {
  std::string name, provenance;
  double computed = 0, reference = 0, tolerance = 0;
  bool relative = true;  // tolerance applies to the relative deviation
  bool expect_mismatch = false;

  double abs_dev() const { return std::abs(computed - reference); }
  double rel_dev() const { return reference != 0 ? abs_dev() / std::abs(reference) : abs_dev(); }
  bool within() const { return (relative ? rel_dev() : abs_dev()) <= tolerance; }
  bool pass() const { return expect_mismatch ? !within() : within(); }
};

inline json oracle_json(const OracleRecord& r) {
  json j;
  j["name"] = r.name;
  j["computed"] = r.computed;
  j["reference"] = r.reference;
  j["provenance"] = r.provenance;
  j["abs_dev"] = r.abs_dev();
  j["rel_dev"] = r.rel_dev();
  j["tolerance"] = r.tolerance;
  j["tolerance_kind"] = r.relative ? "relative" : "absolute";
  if (r.expect_mismatch) j["expect"] = "mismatch";
  j["pass"] = r.pass();
  return j;
}

}  // namespace disk_casimir::io
