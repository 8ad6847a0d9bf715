#ifndef TWOEDGE_OBSERVABLES_HPP
#define TWOEDGE_OBSERVABLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace twoedge {

/** \brief (N2 - N1) / (N2 + N1) from the closed-form interval norms. */
inline double leaning(const EigenSolution &s) {
  const auto [n1, n2] = interval_norms(s);
  return (n2 - n1) / (n2 + n1);
}

struct LeaningEntry {
  double kappa;
  double energy;
  double leaning;
};

struct LeaningSeries {
  TwoEdgeGraph graph;
  std::string bc_label;
  std::vector<LeaningEntry> entries;
};

/**
 * \brief Leanings of every eigenfunction with kappa <= scan.kappa_max.
 *
 * Degenerate eigenspaces contribute one entry per basis vector; zero modes
 * are included at kappa = 0.
 */
inline LeaningSeries leaning_series(const BoundaryCondition &bc, const SpectralScan &scan, std::string label = {},
                                    unsigned threads = 1, double rank_tol = 1e-8) {
  const TwoEdgeGraph &g = scan.graph;
  LeaningSeries out{g, std::move(label), {}};
  for (const auto &z : detect_zero_modes(g, bc)) out.entries.push_back({0.0, 0.0, leaning(z)});
  std::vector<std::vector<LeaningEntry>> per_root(scan.roots.size());
  parallel_for(scan.roots.size(), threads, [&](std::size_t i) {
    const auto &r = scan.roots[i];
    for (const auto &s : build_eigensolutions(g, bc, r, rank_tol))
      per_root[i].push_back({r.kappa, s.energy(), leaning(s)});
  });
  for (auto &v : per_root) out.entries.insert(out.entries.end(), v.begin(), v.end());
  return out;
}

/** \brief Scans until at least n positive roots are found and keeps the first n. */
inline SpectralScan scan_first_roots(const TwoEdgeGraph &g, const BoundaryCondition &bc, std::size_t n,
                                     const ScanOptions &opts = {}) {
  double kmax = kappa_for_count(g, n);
  for (int attempt = 0; attempt < 8; ++attempt) {
    SpectralScan s = full_scan(g, bc, kmax, opts);
    if (s.roots.size() >= n) {
      s.roots.resize(n);
      s.kappa_max = s.roots.empty() ? s.kappa_max : s.roots.back().kappa;
      return s;
    }
    kmax *= 1.5;
  }
  throw ScanIncomplete("fewer than " + std::to_string(n) + " roots below kappa = " + std::to_string(kmax));
}

/** \brief Mean leaning over entries with energy <= e_max. */
inline double cesaro_mean(const LeaningSeries &series, double e_max) {
  std::vector<double> v;
  for (const auto &e : series.entries)
    if (e.energy <= e_max) v.push_back(e.leaning);
  if (v.empty()) throw EmptySeries("no eigenvalue below E_max");
  return numerics::pairwise_sum(v) / static_cast<double>(v.size());
}

inline double cesaro_mean(const LeaningSeries &series) {
  if (series.entries.empty()) throw EmptySeries("empty leaning series");
  double e_max = 0.0;
  for (const auto &e : series.entries) e_max = std::max(e_max, e.energy);
  return cesaro_mean(series, e_max);
}

struct TailExtremes {
  double min_tail;
  double max_tail;
};

/** \brief Extremes over the second half of the series (entries ordered by energy). */
inline TailExtremes running_extremes(const LeaningSeries &series) {
  const auto n = series.entries.size();
  if (n == 0) throw EmptySeries("empty leaning series");
  TailExtremes t{1.0, -1.0};
  for (std::size_t i = n / 2; i < n; ++i) {
    t.min_tail = std::min(t.min_tail, series.entries[i].leaning);
    t.max_tail = std::max(t.max_tail, series.entries[i].leaning);
  }
  return t;
}

struct WeylCount {
  long count;
  double asymptotic;
};

/** \brief N(E) with multiplicities and zero modes, and (omega1 + omega2) sqrt(2E) / (hbar pi). */
inline WeylCount weyl_count(const SpectralScan &scan, double energy) {
  const double h = scan.graph.hbar();
  const double k = std::sqrt(2.0 * std::max(energy, 0.0)) / h;
  if (k > scan.kappa_max * (1.0 + 1e-12)) throw ScanTooShort("scan stops below sqrt(2E)/hbar");
  long n = energy >= 0.0 ? scan.zero_mode_multiplicity : 0;
  for (const auto &r : scan.roots)
    if (r.kappa <= k) n += r.multiplicity;
  const double w = scan.graph.omega1() + scan.graph.omega2();
  return {n, w * k / numerics::pi};
}

struct TorusSample {
  double omega1;
  double omega2;
  std::vector<std::pair<double, double>> points;
};

/** \brief Torus points (omega1 kappa, omega2 kappa) mod 2 pi, one per eigenvalue counted with multiplicity. */
inline TorusSample torus_sample(const SpectralScan &scan) {
  TorusSample t{scan.graph.omega1(), scan.graph.omega2(), {}};
  for (const auto &r : scan.roots) {
    if (r.is_zero_mode || r.kappa <= 0.0) continue;
    for (int m = 0; m < r.multiplicity; ++m)
      t.points.emplace_back(numerics::wrap_angle(t.omega1 * r.kappa), numerics::wrap_angle(t.omega2 * r.kappa));
  }
  return t;
}

/** \brief Same map applied to a list of roots. */
inline TorusSample torus_sample(const TwoEdgeGraph &g, const std::vector<double> &kappas) {
  TorusSample t{g.omega1(), g.omega2(), {}};
  for (double k : kappas)
    if (k > 0.0) t.points.emplace_back(numerics::wrap_angle(t.omega1 * k), numerics::wrap_angle(t.omega2 * k));
  return t;
}

struct BranchHistogram {
  std::vector<long> bins;
  int bin_count = 0;
  long total = 0;
  int branch = 0;

  double width() const { return numerics::two_pi / bin_count; }
};

/** \brief Index of the uniform bin holding angle v; values within 1e-9 bin widths below an edge round up. */
inline int bin_index(double v, int bins) {
  const double w = numerics::two_pi / bins;
  auto i = static_cast<int>(std::floor(numerics::wrap_angle(v) / w + 1e-9));
  return i >= bins ? i - bins : i;
}

inline BranchHistogram bg_histogram(const TorusSample &sample, int bins) {
  BranchHistogram h;
  h.bin_count = bins;
  h.bins.assign(static_cast<std::size_t>(bins), 0);
  for (const auto &pt : sample.points) ++h.bins[static_cast<std::size_t>(bin_index(pt.first, bins))];
  h.total = static_cast<long>(sample.points.size());
  return h;
}

/** \brief Probability of each bin under the analytic density, atoms included. */
inline std::vector<double> bin_probabilities(const BGDensity &d, int bins) {
  std::vector<double> p(static_cast<std::size_t>(bins));
  const double w = numerics::two_pi / bins;
  for (int i = 0; i < bins; ++i) p[static_cast<std::size_t>(i)] = numerics::gauss16(d, i * w, (i + 1) * w);
  for (const auto &a : d.atoms) p[static_cast<std::size_t>(bin_index(a.location, bins))] += a.mass;
  return p;
}

/** \brief sum over bins of |empirical frequency - analytic probability|. */
inline double l1_distance(const BranchHistogram &h, const BGDensity &d) {
  const auto p = bin_probabilities(d, h.bin_count);
  std::vector<double> diff(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    diff[i] = std::abs(static_cast<double>(h.bins[i]) / static_cast<double>(h.total) - p[i]);
  return numerics::pairwise_sum(diff);
}

/** \brief Integral of fn(phi1) against the density, atoms included. */
inline double bg_expectation(const BGDensity &d, const std::function<double(double)> &fn, int panels = 256) {
  double s = 0.0;
  for (const auto &b : d.branches)
    s += numerics::gauss16_composite([&](double p) { return fn(p) * b.density(p); }, 0.0, numerics::two_pi, panels);
  for (const auto &a : d.atoms) s += a.mass * fn(a.location);
  return s;
}

/** \brief Total mass of a branch-resolved density. */
inline double bg_total_mass(const BGDensity &d, int panels = 256) {
  return bg_expectation(d, [](double) { return 1.0; }, panels);
}

/** \brief Cesaro limit predicted by integrating the asymptotic leaning of each branch. */
inline double bg_cesaro_prediction(PresetTag t, const TwoEdgeGraph &g, int panels = 256) {
  const BGDensity d = bg_density(t, g);
  double s = 0.0;
  for (const auto &b : d.branches)
    s += numerics::gauss16_composite(
        [&](double p) { return leaning_asymptotic(t, b.branch, g, p) * b.density(p); }, 0.0, numerics::two_pi,
        panels);
  for (const auto &a : d.atoms) s += a.mass * leaning_asymptotic(t, a.branch, g, a.location);
  return s;
}

struct TimeAverage {
  double time_avg;
  double space_avg;
};

/**
 * \brief (1/K) int_0^K f(omega kappa) dkappa against (1/4 pi^2) int_T2 f.
 *
 * Both by composite 16-point Gauss-Legendre; the time panels resolve one
 * turn of the faster angle per panel quarter.
 */
inline TimeAverage time_average_check(const TwoEdgeGraph &g, const std::function<double(double, double)> &f,
                                      double K, int space_panels = 32) {
  const double w1 = g.omega1(), w2 = g.omega2();
  const int tp = std::max(16, static_cast<int>(std::ceil(4.0 * K * std::max(w1, w2) / numerics::two_pi)));
  const double t = numerics::gauss16_composite([&](double k) { return f(w1 * k, w2 * k); }, 0.0, K, tp) / K;
  const double s = numerics::gauss16_composite(
                       [&](double a) {
                         return numerics::gauss16_composite([&](double b) { return f(a, b); }, 0.0, numerics::two_pi,
                                                            space_panels);
                       },
                       0.0, numerics::two_pi, space_panels) /
                   (4.0 * numerics::pi * numerics::pi);
  return {t, s};
}

} // namespace twoedge

#endif // TWOEDGE_OBSERVABLES_HPP
