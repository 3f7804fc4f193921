// casimir_disk: disk/plane Casimir energies, T-matrix dumps and references.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <disk_casimir/casimir.hpp>
#include <disk_casimir/io.hpp>

using namespace disk_casimir;
using io::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, sep);)
    if (!t.empty()) out.push_back(t);
  return out;
}

double to_double(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw CLI::ValidationError("number", "cannot parse '" + s + "'");
  return v;
}

// "a,b,c" or "a:b:step" (end inclusive); a trailing "deg" on an item or range
// switches that item to degrees
std::vector<double> parse_list(const std::string& spec, bool allow_deg) {
  std::vector<double> out;
  for (auto item : split(spec, ',')) {
    double scale = 1;
    if (allow_deg && item.size() > 3 && item.substr(item.size() - 3) == "deg") {
      item.resize(item.size() - 3);
      scale = std::numbers::pi / 180;
    }
    auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(to_double(parts[0]) * scale);
    } else if (parts.size() == 3) {
      double a = to_double(parts[0]), b = to_double(parts[1]), h = to_double(parts[2]);
      if (!(h > 0) || b < a) throw CLI::ValidationError("range", "need a <= b and step > 0 in '" + item + "'");
      int n = int(std::floor((b - a) / h + 1e-9));
      for (int i = 0; i <= n; ++i) out.push_back((a + i * h) * scale);
    } else {
      throw CLI::ValidationError("list", "bad item '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("list", "empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_list(spec, false)) {
    if (v != std::floor(v)) throw CLI::ValidationError("integer", "not an integer");
    out.push_back(int(v));
  }
  return out;
}

// "0.3" real, "0.5i" imaginary, "0.2+0.4i"
cplx parse_gamma(std::string s) {
  if (s.empty()) throw CLI::ValidationError("gamma", "empty");
  if (s.back() != 'i') return to_double(s);
  s.pop_back();
  auto k = s.find_last_of("+-");
  if (k == std::string::npos || k == 0) return cplx(0, s.empty() ? 1.0 : to_double(s));
  return cplx(to_double(s.substr(0, k)), to_double(s.substr(k)));
}

struct Config {
  std::string d_over_r = "2", theta = "0", lmax = "5", kappa_nodes = "40", gamma = "0.3,0.5i";
  int nmax = -1;
  double kappa_lo = 1.0 / 128, kappa_hi = 4.0;
  std::string mode = "energy", out = "-", format = "csv";
};

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Output(const std::string& path) {
    if (path != "-") {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open " + path);
      os = &file;
    }
  }
};

std::vector<Geometry> sweep(const Config& c) {
  std::vector<Geometry> g;
  for (double d : parse_list(c.d_over_r, false))
    for (double t : parse_list(c.theta, true)) {
      Geometry x{d, t};
      x.validate();
      g.push_back(x);
    }
  // rows ordered by (d, theta) regardless of how the lists were given
  auto key = [](const Geometry& x) { return std::pair(x.d, x.theta); };
  std::sort(g.begin(), g.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  g.erase(std::unique(g.begin(), g.end(), [&](auto& a, auto& b) { return key(a) == key(b); }), g.end());
  return g;
}

int run_energy(const Config& c) {
  auto ls = parse_ints(c.lmax), ns = parse_ints(c.kappa_nodes);
  if (ls.size() != 1 || ns.size() != 1) throw CLI::ValidationError("energy mode takes a single --lmax and --kappa-nodes");
  const int L = ls[0], N = c.nmax > 0 ? c.nmax : L;
  KappaQuadrature kq{ns[0], c.kappa_lo, c.kappa_hi};
  auto geoms = sweep(c);
  auto table = response_table(kq, L, N);
  Output out(c.out);
  json arr = json::array();
  if (c.format == "csv") io::write_csv_header(*out.os);
  for (auto& g : geoms) {
    auto r = casimir_energy(g, table, kq);
    if (c.format == "csv")
      io::write_csv_row(*out.os, r);
    else
      arr.push_back(io::energy_json(r));
  }
  if (c.format == "json") *out.os << json{{"schema", "disk_casimir energy json v1"}, {"rows", arr}}.dump(1) << "\n";
  return 0;
}

int run_convergence(const Config& c) {
  auto ls = parse_ints(c.lmax), ns = parse_ints(c.kappa_nodes);
  auto geoms = sweep(c);
  json rows = json::array();
  for (int nodes : ns)
    for (int L : ls) {
      KappaQuadrature kq{nodes, c.kappa_lo, c.kappa_hi};
      auto table = response_table(kq, L, c.nmax > 0 ? std::max(c.nmax, L) : L);
      for (auto& g : geoms) {
        auto r = casimir_energy(g, table, kq);
        rows.push_back({{"d_over_R", g.d}, {"theta_rad", g.theta}, {"lmax", L}, {"nmax", r.n_max},
                        {"kappa_nodes", nodes}, {"energy_hbar_c_over_R", r.energy},
                        {"energy_with_estimates", r.total()}, {"max_im_residual", r.max_im_residual}});
      }
    }
  // order by (d, theta, nodes, lmax) and attach the change from the previous lmax
  std::stable_sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
    return std::tie(a["d_over_R"].get_ref<const double&>(), a["theta_rad"].get_ref<const double&>()) <
           std::tie(b["d_over_R"].get_ref<const double&>(), b["theta_rad"].get_ref<const double&>());
  });
  for (size_t i = 0; i < rows.size(); ++i) {
    rows[i]["rel_change"] = nullptr;
    if (i && rows[i]["d_over_R"] == rows[i - 1]["d_over_R"] && rows[i]["theta_rad"] == rows[i - 1]["theta_rad"] &&
        rows[i]["kappa_nodes"] == rows[i - 1]["kappa_nodes"]) {
      double a = rows[i - 1]["energy_hbar_c_over_R"], b = rows[i]["energy_hbar_c_over_R"];
      rows[i]["rel_change"] = std::abs(b - a) / std::abs(a);
    }
  }
  Output out(c.out);
  if (c.format == "json") {
    *out.os << json{{"schema", "disk_casimir convergence json v1"}, {"rows", rows}}.dump(1) << "\n";
    return 0;
  }
  auto& os = *out.os;
  os << "# disk_casimir convergence csv v1; units hbar*c/R\n"
     << "d_over_R,theta_rad,lmax,nmax,kappa_nodes,energy_hbar_c_over_R,energy_with_estimates,rel_change,"
        "max_im_residual\n";
  for (auto& r : rows)
    os << io::num(r["d_over_R"]) << "," << io::num(r["theta_rad"]) << "," << r["lmax"] << "," << r["nmax"] << ","
       << r["kappa_nodes"] << "," << io::num(r["energy_hbar_c_over_R"]) << ","
       << io::num(r["energy_with_estimates"]) << "," << (r["rel_change"].is_null() ? "" : io::num(r["rel_change"]))
       << "," << io::num(r["max_im_residual"]) << "\n";
  return 0;
}

int run_references(const Config& c) {
  Output out(c.out);
  json rows = json::array();
  auto ds = parse_list(c.d_over_r, false);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (double d : ds) {
    Geometry g{d, 0.0};
    auto r = reference_values(g);
    rows.push_back({{"d_over_R", d}, {"pfa", r.pfa}, {"edge_pfa", r.edge_pfa}, {"dipole", r.dipole}});
  }
  if (c.format == "json") {
    *out.os << json{{"schema", "disk_casimir references json v1"}, {"rows", rows}}.dump(1) << "\n";
    return 0;
  }
  *out.os << "# disk_casimir references csv v1; units hbar*c/R\nd_over_R,pfa,edge_pfa,dipole\n";
  for (auto& r : rows)
    *out.os << io::num(r["d_over_R"]) << "," << io::num(r["pfa"]) << "," << io::num(r["edge_pfa"]) << ","
            << io::num(r["dipole"]) << "\n";
  return 0;
}

int run_tmatrix_dump(const Config& c) {
  auto ls = parse_ints(c.lmax);
  if (ls.size() != 1) throw CLI::ValidationError("tmatrix_dump takes a single --lmax");
  const int L = ls[0];
  json blocks = json::array();
  for (auto& gs : split(c.gamma, ',')) {
    cplx g = parse_gamma(gs);
    for (int m = -L; m <= L; ++m) blocks.push_back(io::tmatrix_json(spherical_tmatrix(m, g, L, c.nmax)));
  }
  Output out(c.out);
  *out.os << json{{"schema", "disk_casimir tmatrix json v1"}, {"blocks", blocks}}.dump(1) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy of a perfectly conducting disk opposite a conducting plane"};
  Config c;
  app.add_option("--d-over-r", c.d_over_r, "center distance / radius: list a,b,c or range a:b:step")
      ->capture_default_str();
  app.add_option("--theta", c.theta, "tilt in radians, or degrees with a 'deg' suffix (list or range)")
      ->capture_default_str();
  app.add_option("--lmax", c.lmax, "spherical truncation (a list in convergence mode)")->capture_default_str();
  app.add_option("--nmax", c.nmax, "spheroidal truncation for the basis change (default: lmax)");
  app.add_option("--kappa-nodes", c.kappa_nodes, "Gauss-Legendre nodes in log kappa (a list in convergence mode)")
      ->capture_default_str();
  app.add_option("--kappa-lo", c.kappa_lo, "lower kappa in 1/R")->capture_default_str();
  app.add_option("--kappa-hi", c.kappa_hi, "upper kappa in 1/R")->capture_default_str();
  app.add_option("--gamma", c.gamma, "size parameters for tmatrix_dump, e.g. 0.3,0.5i")->capture_default_str();
  app.add_option("--mode", c.mode, "what to compute")
      ->check(CLI::IsMember({"energy", "tmatrix_dump", "convergence", "references"}))
      ->capture_default_str();
  app.add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
  app.add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    if (!(c.kappa_lo > 0 && c.kappa_lo < c.kappa_hi)) throw CLI::ValidationError("kappa interval", "need 0 < lo < hi");
    for (int L : parse_ints(c.lmax))
      if (L < 1) throw CLI::ValidationError("--lmax", "must be >= 1");
    if (c.mode == "energy") return run_energy(c);
    if (c.mode == "convergence") return run_convergence(c);
    if (c.mode == "references") return run_references(c);
    return run_tmatrix_dump(c);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const geometry_error& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
