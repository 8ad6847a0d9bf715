#ifndef TWOEDGE_RUN_HPP
#define TWOEDGE_RUN_HPP

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "config.hpp"
#include "observables.hpp"
#include "spectral.hpp"
#include "wigner.hpp"

namespace twoedge {

inline constexpr int kSchemaVersion = 1;

/** \brief A file produced by a task, held in memory until the run has succeeded. */
struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  int status = 0;
  std::vector<OutputFile> files;
  std::string message;
};

/** \brief %.17g, the fixed float format of every CSV field. */
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/** \brief Column-oriented table serialised as CSV or as a JSON array of row objects. */
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<double> row) { rows_.push_back(std::move(row)); }
  std::size_t size() const { return rows_.size(); }

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto &r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt17(r[i]);
      os << '\n';
    }
    return os.str();
  }

  std::string json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows_) {
      nlohmann::ordered_json o;
      for (std::size_t i = 0; i < r.size(); ++i) o[columns_[i]] = r[i];
      arr.push_back(o);
    }
    return arr.dump(1) + "\n";
  }

  OutputFile file(const std::string &stem, OutputFormat f) const {
    return f == OutputFormat::csv ? OutputFile{stem + ".csv", csv()} : OutputFile{stem + ".json", json()};
  }

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

using ojson = nlohmann::ordered_json;

inline OutputFile json_file(const std::string &name, const ojson &j) { return {name, j.dump(2) + "\n"}; }

namespace detail {

inline ojson graph_json(const TwoEdgeGraph &g) {
  ojson j;
  j["m1"] = g.m1();
  j["m2"] = g.m2();
  j["l1"] = g.l1();
  j["l2"] = g.l2();
  j["hbar"] = g.hbar();
  j["omega1"] = g.omega1();
  j["omega2"] = g.omega2();
  return j;
}

inline ojson summary_header(const RunConfig &c) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["task"] = std::string(task_name(*c.task));
  j["bc"] = c.bc_label();
  j["graph"] = graph_json(c.graph.graph());
  return j;
}

inline ojson measured_vs_closed(double measured, std::optional<double> closed) {
  ojson j;
  j["measured"] = measured;
  if (closed) {
    j["closed_form"] = *closed;
    j["abs_deviation"] = std::abs(measured - *closed);
  } else {
    j["closed_form"] = nullptr;
    j["abs_deviation"] = nullptr;
  }
  return j;
}

inline ScanOptions scan_options(const RunConfig &c) {
  ScanOptions o;
  o.threads = resolve_threads(c.threads);
  return o;
}

// Scan bounded by kappa_max, e_max or a root count, in that order of precedence.
inline SpectralScan configured_scan(const RunConfig &c, const BoundaryCondition &bc, long default_roots) {
  const TwoEdgeGraph g = c.graph.graph();
  if (c.kappa_max) return full_scan(g, bc, *c.kappa_max, scan_options(c));
  if (c.e_max) return full_scan(g, bc, std::sqrt(2.0 * *c.e_max) / g.hbar(), scan_options(c));
  return scan_first_roots(g, bc, static_cast<std::size_t>(c.roots.value_or(default_roots)), scan_options(c));
}

inline PresetTag require_preset(const RunConfig &c, const char *why) {
  if (!c.preset) throw ValidationError("preset", std::string("task needs a named preset: ") + why);
  return *c.preset;
}

// Catalog branch of each root, matched by nearest catalog root.
inline std::vector<int> branch_labels(PresetTag t, const TwoEdgeGraph &g, const std::vector<SpectralRoot> &roots) {
  std::vector<int> out(roots.size(), 0);
  if (roots.empty()) return out;
  const auto cat = catalog_roots(t, g, roots.back().kappa * (1.0 + 1e-9) + 1e-9);
  std::size_t j = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    while (j + 1 < cat.size() && std::abs(cat[j + 1].kappa - roots[i].kappa) <= std::abs(cat[j].kappa - roots[i].kappa))
      ++j;
    if (!cat.empty() && std::abs(cat[j].kappa - roots[i].kappa) <= 1e-8 * std::max(1.0, roots[i].kappa))
      out[i] = cat[j].branch;
  }
  return out;
}

inline RunResult run_spectrum(const RunConfig &c) {
  const BoundaryCondition bc = c.boundary_condition();
  const SpectralScan scan = configured_scan(c, bc, 200);
  Table t({"kappa", "energy", "residual", "multiplicity"});
  if (scan.zero_mode_multiplicity > 0) t.add({0.0, 0.0, 0.0, static_cast<double>(scan.zero_mode_multiplicity)});
  for (const auto &r : scan.roots) t.add({r.kappa, scan.energy(r), r.residual, static_cast<double>(r.multiplicity)});
  ojson s = summary_header(c);
  s["kappa_max"] = scan.kappa_max;
  s["indicator"] = scan.indicator == Indicator::real_part ? "real_part" : "singular_gap";
  s["root_count"] = scan.roots.size();
  s["zero_mode_multiplicity"] = scan.zero_mode_multiplicity;
  s["near_resonant"] = scan.near_resonant;
  const double e = 0.5 * std::pow(scan.graph.hbar() * scan.kappa_max, 2);
  const auto w = weyl_count(scan, e);
  s["weyl"] = {{"energy", e}, {"count", w.count}, {"asymptotic", w.asymptotic}};
  return {0, {t.file("roots", c.format), json_file("summary.json", s)}, ""};
}

inline RunResult run_leaning(const RunConfig &c) {
  const BoundaryCondition bc = c.boundary_condition();
  const SpectralScan scan = configured_scan(c, bc, 2000);
  const LeaningSeries series = leaning_series(bc, scan, c.bc_label(), resolve_threads(c.threads));
  Table t({"kappa", "leaning"});
  for (const auto &e : series.entries) t.add({e.kappa, e.leaning});
  const TwoEdgeGraph g = scan.graph;
  const double ces = cesaro_mean(series);
  const auto ex = running_extremes(series);
  ojson s = summary_header(c);
  s["count"] = series.entries.size();
  s["cesaro"] = measured_vs_closed(ces, cesaro_closed_form(g));
  std::optional<double> lo, hi;
  if (c.preset) {
    const auto band = leaning_extremes(*c.preset, g);
    lo = band.first;
    hi = band.second;
  }
  s["tail_min"] = measured_vs_closed(ex.min_tail, lo);
  s["tail_max"] = measured_vs_closed(ex.max_tail, hi);
  if (c.preset) {
    // per-branch tail extremes; localised branches sit at +-1
    const auto labels = branch_labels(*c.preset, g, scan.roots);
    ojson br = ojson::array();
    for (int b = 1; b <= branch_count(*c.preset); ++b) {
      double mn = 1.0, mx = -1.0;
      long n = 0;
      for (std::size_t i = scan.roots.size() / 2; i < scan.roots.size(); ++i) {
        if (labels[i] != b) continue;
        const double l = leaning(build_eigensolution(g, bc, scan.roots[i]));
        mn = std::min(mn, l);
        mx = std::max(mx, l);
        ++n;
      }
      br.push_back({{"branch", b}, {"tail_count", n}, {"tail_min", n ? ojson(mn) : ojson(nullptr)},
                    {"tail_max", n ? ojson(mx) : ojson(nullptr)}});
    }
    s["branches"] = br;
  }
  return {0, {t.file("leaning", c.format), json_file("summary.json", s)}, ""};
}

inline RunResult run_bg(const RunConfig &c) {
  const PresetTag p = require_preset(c, "the analytic density is known only for the presets");
  const BoundaryCondition bc = c.boundary_condition();
  const SpectralScan scan = configured_scan(c, bc, 5000);
  const TwoEdgeGraph g = scan.graph;
  const auto sample = torus_sample(scan);
  const auto hist = bg_histogram(sample, c.bins);
  const BGDensity d = bg_density(p, g);
  const auto prob = bin_probabilities(d, c.bins);
  Table h({"bin_lo", "bin_hi", "count", "empirical", "analytic"});
  for (int i = 0; i < c.bins; ++i) {
    const auto k = static_cast<std::size_t>(i);
    h.add({i * hist.width(), (i + 1) * hist.width(), static_cast<double>(hist.bins[k]),
           static_cast<double>(hist.bins[k]) / static_cast<double>(hist.total), prob[k]});
  }
  Table dens({"phi1", "density"});
  for (int i = 0; i <= 512; ++i) {
    const double phi = numerics::two_pi * i / 512.0;
    dens.add({phi, d(phi)});
  }
  ojson s = summary_header(c);
  s["samples"] = hist.total;
  s["bins"] = c.bins;
  s["l1_distance"] = l1_distance(hist, d);
  s["analytic_mass"] = bg_total_mass(d);
  ojson atoms = ojson::array();
  for (const auto &a : d.atoms) atoms.push_back({{"branch", a.branch}, {"phi1", a.location}, {"mass", a.mass}});
  s["atoms"] = atoms;
  s["cesaro_from_density"] = measured_vs_closed(bg_cesaro_prediction(p, g), cesaro_closed_form(g));
  return {0, {h.file("hist", c.format), dens.file("density", c.format), json_file("summary.json", s)}, ""};
}

inline RunResult run_torus(const RunConfig &c) {
  const BoundaryCondition bc = c.boundary_condition();
  const SpectralScan scan = configured_scan(c, bc, 1000);
  Table t({"kappa", "phi1", "phi2"});
  for (const auto &r : scan.roots)
    t.add({r.kappa, numerics::wrap_angle(scan.graph.omega1() * r.kappa),
           numerics::wrap_angle(scan.graph.omega2() * r.kappa)});
  ojson s = summary_header(c);
  s["points"] = t.size();
  s["omega"] = {scan.graph.omega1(), scan.graph.omega2()};
  return {0, {t.file("points", c.format), json_file("summary.json", s)}, ""};
}

inline Table grid_table(const WignerGrid &g, const char *xname) {
  Table t({xname, "p", "value"});
  for (std::size_t i = 0; i < g.x_axis.size(); ++i)
    for (std::size_t j = 0; j < g.p_axis.size(); ++j)
      t.add({g.x_axis[i], g.p_axis[j], g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
  return t;
}

inline RunResult run_wigner(const RunConfig &c) {
  const BoundaryCondition bc = c.boundary_condition();
  const TwoEdgeGraph g = c.graph.graph();
  const SpectralScan scan = scan_first_roots(g, bc, static_cast<std::size_t>(c.root_index), scan_options(c));
  const SpectralRoot root = scan.roots.back();
  const EigenSolution sol = build_eigensolution(g, bc, root);
  const double pw = g.hbar() * std::max(sol.k1, sol.k2) + 20.0;
  const auto xs = linspace(c.x_min.value_or(-g.l1()), c.x_max.value_or(g.l2()), static_cast<std::size_t>(c.nx));
  const auto ps = linspace(c.p_min.value_or(-pw), c.p_max.value_or(pw), static_cast<std::size_t>(c.np));
  if (xs.front() < -g.l1() || xs.back() > g.l2()) throw ValidationError("x_min", "x axis must lie in [-l1, l2]");
  const WignerGrid grid = wigner_grid(sol, xs, ps, resolve_threads(c.threads));
  ojson s = summary_header(c);
  s["root_index"] = c.root_index;
  s["kappa"] = root.kappa;
  s["energy"] = sol.energy();
  s["leaning"] = leaning(sol);
  s["max_imag_residue"] = grid.max_imag_residue;
  s["x_axis"] = xs;
  s["p_axis"] = ps;
  return {0, {grid_table(grid, "x").file("wigner", c.format), json_file("summary.json", s)}, ""};
}

inline RunResult run_semiclassical(const RunConfig &c) {
  const PresetTag p = require_preset(c, "the limit coefficients are given for the segment");
  if (p != PresetTag::segment) throw ValidationError("preset", "semiclassical task supports the segment only");
  if (!c.target_phi1) throw ValidationError("target_phi1", "missing");
  const TwoEdgeGraph g = c.graph.graph();
  const double phi1 = numerics::wrap_angle(*c.target_phi1);
  const double phi2 = numerics::wrap_angle(c.target_phi2.value_or(branch_phi2(p, 1, g, phi1)));
  const SemiclassicalPoint pt = semiclassical_point(g, c.energy, phi1, phi2);
  const auto us = linspace(c.u_min.value_or(-2.0), c.u_max.value_or(2.0), static_cast<std::size_t>(c.nu));
  const double pw = std::max(pt.p1, pt.p2) + 4.0;
  const auto ps = linspace(c.p_min.value_or(-pw), c.p_max.value_or(pw), static_cast<std::size_t>(c.np));
  const WignerGrid grid = semiclassical_grid(pt, us, ps);

  // engine coefficients along the subsequence approaching the target
  const BoundaryCondition bc = c.boundary_condition();
  const SpectralScan scan = configured_scan(c, bc, 5000);
  const auto sub = subsequence_near(scan, phi1, phi2, c.delta);
  Table seq({"kappa", "phi1", "phi2", "torus_distance", "coefficient_distance"});
  for (const auto &r : sub) {
    const double a = numerics::wrap_angle(g.omega1() * r.kappa), b = numerics::wrap_angle(g.omega2() * r.kappa);
    const auto sol = build_eigensolution(g, bc, r);
    seq.add({r.kappa, a, b, torus_distance(a, b, phi1, phi2), phase_distance(sol.coeffs, pt.coeffs)});
  }
  ojson s = summary_header(c);
  s["phi1"] = phi1;
  s["phi2"] = phi2;
  s["energy"] = pt.energy;
  s["p1"] = pt.p1;
  s["p2"] = pt.p2;
  ojson co = ojson::array();
  for (int i = 0; i < 4; ++i) co.push_back({pt.coeffs[i].real(), pt.coeffs[i].imag()});
  s["limit_coefficients"] = co;
  s["subsequence_length"] = sub.size();
  s["u_axis"] = us;
  s["p_axis"] = ps;
  return {0,
          {grid_table(grid, "u").file("semiclassical", c.format), seq.file("subsequence", c.format),
           json_file("summary.json", s)},
          ""};
}

struct SuiteResult {
  std::string suite;
  bool passed;
  double value;
  double tolerance;
  std::string detail;
};

// Invariant suites on the configured graph and boundary condition.
inline std::vector<SuiteResult> verify_suites(const RunConfig &c) {
  std::vector<SuiteResult> out;
  const TwoEdgeGraph g = c.graph.graph();
  const BoundaryCondition bc = c.boundary_condition();
  auto add = [&](std::string name, double value, double tol, std::string detail = {}) {
    out.push_back({std::move(name), value <= tol, value, tol, std::move(detail)});
  };
  add("unitarity", max_abs(bc.u() * bc.u().adjoint() - Mat4::Identity()), 1e-12);
  const long n = c.roots.value_or(400);
  const SpectralScan scan = scan_first_roots(g, bc, static_cast<std::size_t>(n), scan_options(c));

  double kern = 0.0, norm = 0.0, dom = 0.0, orth = 0.0, lean = 0.0, order = 0.0;
  for (std::size_t i = 0; i < scan.roots.size(); ++i) {
    const auto &r = scan.roots[i];
    if (i > 0 && r.kappa <= scan.roots[i - 1].kappa) order = 1.0;
    for (const auto &s : build_eigensolutions(g, bc, r)) {
      const Vec4 ac = assemble_spectral_matrix(g, bc, r.kappa).a * s.coeffs;
      kern = std::max(kern, ac.norm() / s.coeffs.norm());
      norm = std::max(norm, std::abs(s.norm_sq_I1 + s.norm_sq_I2 - 1.0));
      const BoundaryTrace t = trace_of(s);
      const double scale = t.gamma.norm() + t.nu.norm() + 1.0;
      const Vec4 res = cplx(0.0, 1.0) * ((Mat4::Identity() + bc.u()) * t.gamma) - (Mat4::Identity() - bc.u()) * t.nu;
      dom = std::max(dom, res.norm() / scale);
      if (bc.scale_free()) orth = std::max(orth, std::abs(scale_free_orthogonality(t)) / (scale * scale));
      const double l = leaning(s);
      lean = std::max(lean, std::max(0.0, std::abs(l) - 1.0));
    }
  }
  add("roots_increasing", order, 0.0);
  add("kernel_residual", kern, 1e-8);
  add("normalization", norm, 1e-10);
  add("domain_check", dom, 1e-8);
  if (bc.scale_free()) add("scale_free_orthogonality", orth, 1e-8);
  add("leaning_range", lean, 0.0);
  const double kw = scan.kappa_max;
  const auto w = weyl_count(scan, 0.5 * std::pow(g.hbar() * kw, 2));
  add("weyl_law", std::abs(static_cast<double>(w.count) / w.asymptotic - 1.0), 0.05, "relative deviation");

  if (c.preset) {
    const PresetTag p = *c.preset;
    const auto cat = catalog_roots(p, g, scan.kappa_max * (1.0 + 1e-9));
    double worst = cat.size() == scan.roots.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < std::min(cat.size(), scan.roots.size()); ++i)
      worst = std::max(worst, std::abs(cat[i].kappa - scan.roots[i].kappa) / cat[i].kappa);
    add("catalog_roots", worst, 1e-9, "relative deviation, counts must agree");
    const BGDensity d = bg_density(p, g);
    add("bg_mass", std::abs(bg_total_mass(d) - 1.0), 1e-10);
    add("bg_cesaro", std::abs(bg_cesaro_prediction(p, g) - cesaro_closed_form(g)), 1e-8);
    const LeaningSeries series = leaning_series(bc, scan, c.bc_label(), resolve_threads(c.threads));
    add("cesaro", std::abs(cesaro_mean(series) - cesaro_closed_form(g)), 0.05, "finite-series deviation");
    double fmax = 0.0;
    for (const auto &r : scan.roots)
      fmax = std::max(fmax, std::abs(f_P(p, g, g.omega1() * r.kappa, g.omega2() * r.kappa)));
    add("torus_residual", fmax, 1e-8);
  }
  return out;
}

inline RunResult run_verify(const RunConfig &c) {
  const auto suites = verify_suites(c);
  ojson s = summary_header(c);
  ojson arr = ojson::array();
  bool all = true;
  for (const auto &r : suites) {
    all = all && r.passed;
    arr.push_back({{"suite", r.suite},
                   {"passed", r.passed},
                   {"value", r.value},
                   {"tolerance", r.tolerance},
                   {"detail", r.detail}});
  }
  s["suites"] = arr;
  s["all_passed"] = all;
  return {all ? 0 : 1, {json_file("report.json", s)}, all ? "" : "one or more suites failed"};
}

} // namespace detail

/** \brief Runs the configured task; no file I/O. */
inline RunResult compute(const RunConfig &c) {
  if (!c.task) throw ValidationError("task", "missing");
  switch (*c.task) {
  case Task::spectrum: return detail::run_spectrum(c);
  case Task::leaning: return detail::run_leaning(c);
  case Task::bg: return detail::run_bg(c);
  case Task::torus: return detail::run_torus(c);
  case Task::wigner: return detail::run_wigner(c);
  case Task::semiclassical: return detail::run_semiclassical(c);
  case Task::verify: return detail::run_verify(c);
  }
  return {};
}

/** \brief Writes all files or none: anything already written is removed if a later write fails. */
inline void write_outputs(const std::vector<OutputFile> &files, const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> written;
  try {
    for (const auto &f : files) {
      const fs::path p = dir / f.name;
      std::ofstream os(p, std::ios::binary | std::ios::trunc);
      if (!os) throw std::runtime_error("cannot open " + p.string());
      written.push_back(p);
      os << f.content;
      if (!os.flush()) throw std::runtime_error("write failed for " + p.string());
    }
  } catch (...) {
    std::error_code ec;
    for (const auto &p : written) fs::remove(p, ec);
    throw;
  }
}

} // namespace twoedge

#endif // TWOEDGE_RUN_HPP
