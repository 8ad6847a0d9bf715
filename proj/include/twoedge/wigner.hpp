/*
 * Wigner function of an eigenfunction psi = psi1 chi_I1 + psi2 chi_I2,
 *
 *     W(x, p) = (1 / 2 pi hbar) int conj(psi(x - y/2)) psi(x + y/2) e^{-i p y / hbar} dy,
 *
 * split as W11 + W22 + W12 + W21 over the y-regions where both factors live on
 * the indicated edges.  Each block of plane waves integrates to sinc envelopes
 * of width a_ij(x) (tent functions of x, in units of 1/momentum) centred at the
 * mean wave momentum, with a phase e^{-+i at12(x) q} for the off-centre
 * cross regions.  All four blocks are evaluated as complex numbers so the
 * imaginary part of the sum measures the rounding error.
 */
#ifndef TWOEDGE_WIGNER_HPP
#define TWOEDGE_WIGNER_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "catalog.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace twoedge {

/** \brief Tent widths of the four y-regions as functions of x. */
struct RegionGeometry {
  double l1, l2, hbar;

  bool in_i1(double x) const { return x >= -l1 && x <= 0.0; }
  bool in_i2(double x) const { return x >= 0.0 && x <= l2; }
  bool in_i12(double x) const { return x >= -0.5 * l1 && x <= 0.5 * l2; }

  double a11(double x) const { return in_i1(x) ? std::max(0.0, l1 - 2.0 * std::abs(x + 0.5 * l1)) / hbar : 0.0; }
  double a22(double x) const { return in_i2(x) ? std::max(0.0, l2 - 2.0 * std::abs(x - 0.5 * l2)) / hbar : 0.0; }
  double a12(double x) const {
    if (!in_i12(x)) return 0.0;
    return std::max(0.0, 0.5 * (l1 + l2) - std::abs(x - 0.5 * (l2 - l1)) - std::abs(x)) / hbar;
  }
  double at12(double x) const { return (0.5 * (l1 + l2) - std::abs(x - 0.5 * (l2 - l1)) + std::abs(x)) / hbar; }

  /** \brief y-interval of region R_mn(x); empty (lo > hi) where the block vanishes. */
  std::pair<double, double> region(int m, int n, double x) const {
    if (m == 1 && n == 1) {
      if (!in_i1(x)) return {1.0, -1.0};
      return {-hbar * a11(x), hbar * a11(x)};
    }
    if (m == 2 && n == 2) {
      if (!in_i2(x)) return {1.0, -1.0};
      return {-hbar * a22(x), hbar * a22(x)};
    }
    if (!in_i12(x)) return {1.0, -1.0};
    const double c = hbar * at12(x), w = hbar * a12(x);
    return m == 1 ? std::pair{c - w, c + w} : std::pair{-c - w, -c + w};
  }

  /** \brief Breakpoints of the tents inside [-l1, l2], sorted. */
  std::vector<double> kinks() const {
    std::vector<double> k = {-l1, -0.5 * l1, 0.0, 0.5 * (l2 - l1), 0.5 * l2, l2};
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
  }
};

inline RegionGeometry region_geometry(const TwoEdgeGraph &g, double hbar) { return {g.l1(), g.l2(), hbar}; }
inline RegionGeometry region_geometry(const TwoEdgeGraph &g) { return region_geometry(g, g.hbar()); }

struct WignerBlocks {
  cplx w11, w22, w12, w21;
  cplx total() const { return w11 + w22 + w12 + w21; }
};

namespace detail {

// One plane-wave component: amplitude, signed wavenumber, edge.
struct Wave {
  cplx amp;
  double k;
};

inline std::array<Wave, 2> waves(const EigenSolution &s, int edge) {
  const int o = edge == 1 ? 0 : 2;
  const double k = edge == 1 ? s.k1 : s.k2;
  return {Wave{s.coeffs[o], k}, Wave{s.coeffs[o + 1], -k}};
}

inline void require_plane_waves(const EigenSolution &s) {
  if (s.is_zero_mode) throw std::invalid_argument("Wigner blocks are defined for kappa > 0 eigenfunctions");
}

} // namespace detail

/** \brief The four blocks at (x, p); hbar is taken from the geometry. */
inline WignerBlocks wigner_blocks(const EigenSolution &s, double x, double p, const RegionGeometry &geo) {
  detail::require_plane_waves(s);
  if (!(x >= -geo.l1 && x <= geo.l2)) throw OutOfDomain("x = " + std::to_string(x));
  const double hb = geo.hbar;
  WignerBlocks b{};
  auto auto_block = [&](int edge, double a) {
    cplx acc = 0.0;
    if (a <= 0.0) return acc;
    const auto w = detail::waves(s, edge);
    for (const auto &u : w)
      for (const auto &v : w) {
        // conj(u e^{i ku (x - y/2)}) v e^{i kv (x + y/2)}
        const double kmean = 0.5 * (u.k + v.k);
        acc += std::conj(u.amp) * v.amp * std::polar(1.0, (v.k - u.k) * x) * numerics::sinc(a * (p - hb * kmean));
      }
    return acc * (a / numerics::pi);
  };
  b.w11 = auto_block(1, geo.a11(x));
  b.w22 = auto_block(2, geo.a22(x));
  const double a = geo.a12(x);
  if (a > 0.0) {
    const double at = geo.at12(x);
    const auto w1 = detail::waves(s, 1), w2 = detail::waves(s, 2);
    for (const auto &u : w1)
      for (const auto &v : w2) {
        const double q = p - hb * 0.5 * (u.k + v.k);
        const double env = numerics::sinc(a * q) * a / numerics::pi;
        b.w12 += std::conj(u.amp) * v.amp * std::polar(1.0, (v.k - u.k) * x - at * q) * env;
        b.w21 += std::conj(v.amp) * u.amp * std::polar(1.0, (u.k - v.k) * x + at * q) * env;
      }
  }
  return b;
}

inline double wigner_eval(const EigenSolution &s, double x, double p, const RegionGeometry &geo) {
  return wigner_blocks(s, x, p, geo).total().real();
}

inline double wigner_eval(const EigenSolution &s, double x, double p) {
  return wigner_eval(s, x, p, region_geometry(s.graph));
}

/**
 * \brief Direct quadrature of the defining integral over the y-regions.
 *
 * Independent of the closed form; panels resolve the faster of the phase
 * p y / hbar and the wave oscillations.
 */
inline cplx wigner_integral_oracle(const EigenSolution &s, double x, double p, const RegionGeometry &geo) {
  detail::require_plane_waves(s);
  const double hb = geo.hbar;
  auto psi = [&](int edge, double t) { return evaluate_on_edge(s, edge, t); };
  cplx total = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n) {
      const auto [lo, hi] = geo.region(m, n, x);
      if (!(hi > lo)) continue;
      const double freq = std::abs(p) / hb + std::max(s.k1, s.k2);
      const int panels = std::max(8, static_cast<int>(std::ceil((hi - lo) * freq / numerics::pi)) + 8);
      auto re = [&](double y) {
        return (std::conj(psi(m, x - 0.5 * y)) * psi(n, x + 0.5 * y) * std::polar(1.0, -p * y / hb)).real();
      };
      auto im = [&](double y) {
        return (std::conj(psi(m, x - 0.5 * y)) * psi(n, x + 0.5 * y) * std::polar(1.0, -p * y / hb)).imag();
      };
      total += cplx(numerics::gauss16_composite(re, lo, hi, panels), numerics::gauss16_composite(im, lo, hi, panels));
    }
  return total / (2.0 * numerics::pi * hb);
}

enum class WignerKind { finite_hbar, semiclassical };

struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  /** \brief values(i, j) = W(x_axis[i], p_axis[j]). */
  Eigen::MatrixXd values;
  WignerKind kind = WignerKind::finite_hbar;
  double max_imag_residue = 0.0;
};

inline WignerGrid wigner_grid(const EigenSolution &s, const std::vector<double> &x_axis,
                              const std::vector<double> &p_axis, unsigned threads = 1) {
  if (!std::is_sorted(x_axis.begin(), x_axis.end()) || !std::is_sorted(p_axis.begin(), p_axis.end()))
    throw std::invalid_argument("grid axes must be sorted");
  const RegionGeometry geo = region_geometry(s.graph);
  WignerGrid g{x_axis, p_axis, Eigen::MatrixXd(x_axis.size(), p_axis.size()), WignerKind::finite_hbar, 0.0};
  std::vector<double> resid(x_axis.size(), 0.0);
  parallel_for(x_axis.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < p_axis.size(); ++j) {
      const cplx w = wigner_blocks(s, x_axis[i], p_axis[j], geo).total();
      g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w.real();
      resid[i] = std::max(resid[i], std::abs(w.imag()));
    }
  });
  for (double r : resid) g.max_imag_residue = std::max(g.max_imag_residue, r);
  return g;
}

/** \brief Evenly spaced axis of n points on [lo, hi]. */
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) v.back() = hi;
  return v;
}

namespace detail {

// int over all p of W(x, p): [-P, P] by quadrature, the rest in closed form.
inline double momentum_integral(const EigenSolution &s, double x, const RegionGeometry &geo, double pmax) {
  const double amax = std::max({geo.a11(x), geo.a22(x), geo.a12(x)});
  if (amax <= 0.0) return 0.0;
  const int panels = std::max(16, static_cast<int>(std::ceil(2.0 * pmax * amax / numerics::pi)));
  const double inner =
      numerics::gauss16_composite([&](double p) { return wigner_blocks(s, x, p, geo).total().real(); }, -pmax, pmax,
                                  panels);
  const double hb = geo.hbar;
  cplx tail = 0.0;
  auto add_auto = [&](int edge, double a) {
    if (a <= 0.0) return;
    const auto w = waves(s, edge);
    for (const auto &u : w)
      for (const auto &v : w) {
        const double c = hb * 0.5 * (u.k + v.k);
        tail += std::conj(u.amp) * v.amp * std::polar(1.0, (v.k - u.k) * x) * (a / numerics::pi) *
                numerics::sinc_tail(a, 0.0, -pmax - c, pmax - c);
      }
  };
  add_auto(1, geo.a11(x));
  add_auto(2, geo.a22(x));
  const double a = geo.a12(x);
  if (a > 0.0) {
    const double at = geo.at12(x);
    for (const auto &u : waves(s, 1))
      for (const auto &v : waves(s, 2)) {
        const double c = hb * 0.5 * (u.k + v.k);
        const cplx cu = std::conj(u.amp) * v.amp * std::polar(1.0, (v.k - u.k) * x);
        tail += cu * (a / numerics::pi) * numerics::sinc_tail(a, -at, -pmax - c, pmax - c);
        tail += std::conj(cu) * (a / numerics::pi) * numerics::sinc_tail(a, at, -pmax - c, pmax - c);
      }
  }
  return inner + tail.real();
}

} // namespace detail

/** \brief Momentum cutoff: largest wave momentum plus 40 pi over the smallest tent height. */
inline double normalization_cutoff(const EigenSolution &s, const RegionGeometry &geo) {
  const double amin = std::min(geo.l1, geo.l2) / geo.hbar;
  return geo.hbar * std::max(s.k1, s.k2) + 40.0 * numerics::pi / amin;
}

/**
 * \brief int int W dx dp.
 *
 * x by composite Gauss-Legendre between the tent vertices, p by quadrature on
 * the cutoff window plus exact sinc tails.
 */
inline double wigner_normalization(const EigenSolution &s, unsigned threads = 1) {
  detail::require_plane_waves(s);
  const RegionGeometry geo = region_geometry(s.graph);
  const double pmax = normalization_cutoff(s, geo);
  const auto k = geo.kinks();
  const double kmax = std::max(s.k1, s.k2);
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) pieces.emplace_back(k[i], k[i + 1]);
  std::vector<double> parts(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto [lo, hi] = pieces[i];
    const int panels = std::max(4, static_cast<int>(std::ceil((hi - lo) * 2.0 * kmax / numerics::pi)) + 2);
    // Gauss nodes are gathered first so that the p-integrals can run in parallel.
    std::vector<double> xs, ws;
    const auto &gx = boost::math::quadrature::gauss<double, 16>::abscissa();
    const auto &gw = boost::math::quadrature::gauss<double, 16>::weights();
    const double h = (hi - lo) / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
      const double c = lo + (pnl + 0.5) * h;
      for (std::size_t j = 0; j < gx.size(); ++j) {
        const double wj = gw[j] * 0.5 * h;
        if (gx[j] == 0.0) {
          xs.push_back(c);
          ws.push_back(wj);
        } else {
          xs.push_back(c - gx[j] * 0.5 * h);
          ws.push_back(wj);
          xs.push_back(c + gx[j] * 0.5 * h);
          ws.push_back(wj);
        }
      }
    }
    std::vector<double> vals(xs.size());
    parallel_for(xs.size(), threads,
                 [&](std::size_t j) { vals[j] = ws[j] * detail::momentum_integral(s, xs[j], geo, pmax); });
    parts[i] = numerics::pairwise_sum(vals);
  }
  return numerics::pairwise_sum(parts);
}

/** \brief dp * sum_j W(x, p_j) on a uniform grid of spacing dp over [-pmax, pmax]. */
inline double momentum_marginal(const EigenSolution &s, double x, double pmax, double dp) {
  const RegionGeometry geo = region_geometry(s.graph);
  const auto n = static_cast<long>(std::floor(pmax / dp));
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(2 * n + 1));
  for (long j = -n; j <= n; ++j) v.push_back(wigner_blocks(s, x, static_cast<double>(j) * dp, geo).total().real());
  return dp * numerics::pairwise_sum(v);
}

/** \brief Data of a semiclassical limit: energy, classical momenta, limiting coefficients, torus point. */
struct SemiclassicalPoint {
  double energy = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  Vec4 coeffs = Vec4::Zero();
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/**
 * \brief Limit of the normalised segment coefficients along roots whose torus
 * points converge to (phi1, phi2).
 */
inline Vec4 limit_coefficients(const TwoEdgeGraph &g, double phi1, double phi2) {
  const double s1 = std::sin(phi1), s2 = std::sin(phi2);
  if (std::abs(s1) < 1e-12 || std::abs(s2) < 1e-12)
    throw SingularTorusPoint("sin phi1 or sin phi2 vanishes at the torus point");
  const double norm = 1.0 / std::sqrt(2.0 * g.l1() / (s1 * s1) + 2.0 * g.l2() / (s2 * s2));
  Vec4 c;
  c << std::polar(1.0, phi1) / s1, -std::polar(1.0, -phi1) / s1, -std::polar(1.0, -phi2) / s2,
      std::polar(1.0, phi2) / s2;
  return norm * c;
}

/** \brief Semiclassical point for the segment at energy E; the torus point must lie on the zero set. */
inline SemiclassicalPoint semiclassical_point(const TwoEdgeGraph &g, double energy, double phi1, double phi2) {
  const double f = f_P(PresetTag::segment, g, phi1, phi2);
  if (std::abs(f) > 1e-8) throw OffBranch("f_P = " + std::to_string(f) + " at the torus point");
  SemiclassicalPoint pt;
  pt.energy = energy;
  pt.p1 = std::sqrt(2.0 * g.m1() * energy);
  pt.p2 = std::sqrt(2.0 * g.m2() * energy);
  pt.coeffs = limit_coefficients(g, phi1, phi2);
  pt.phi1 = phi1;
  pt.phi2 = phi2;
  return pt;
}

/** \brief The limiting function W_E(u, p) built from the point's coefficients. */
inline double semiclassical_wigner(const SemiclassicalPoint &pt, double u, double p) {
  using numerics::sinc;
  const cplx c1 = pt.coeffs[0], d1 = pt.coeffs[1], c2 = pt.coeffs[2], d2 = pt.coeffs[3];
  const double p1 = pt.p1, p2 = pt.p2, au = std::abs(u);
  double w = 0.0;
  if (u < 0.0)
    w += 2.0 * u / numerics::pi *
         (std::norm(c1) * sinc(2.0 * u * (p - p1)) + std::norm(d1) * sinc(2.0 * u * (p + p1)) +
          2.0 * (c1 * std::conj(d1) * std::polar(1.0, 2.0 * p1 * u)).real() * sinc(2.0 * u * p));
  if (u > 0.0)
    w -= 2.0 * u / numerics::pi *
         (std::norm(c2) * sinc(2.0 * u * (p - p2)) + std::norm(d2) * sinc(2.0 * u * (p + p2)) +
          2.0 * (c2 * std::conj(d2) * std::polar(1.0, 2.0 * p2 * u)).real() * sinc(2.0 * u * p));
  const cplx cross = c1 * std::conj(c2) * std::polar(1.0, (p1 - p2) * u) * sinc(2.0 * au * (p - 0.5 * (p1 + p2))) +
                     c1 * std::conj(d2) * std::polar(1.0, (p1 + p2) * u) * sinc(2.0 * au * (p - 0.5 * (p1 - p2))) +
                     d1 * std::conj(c2) * std::polar(1.0, -(p1 + p2) * u) * sinc(2.0 * au * (p + 0.5 * (p1 - p2))) +
                     d1 * std::conj(d2) * std::polar(1.0, -(p1 - p2) * u) * sinc(2.0 * au * (p + 0.5 * (p1 + p2)));
  w -= 2.0 * au / numerics::pi * cross.real();
  return w;
}

/**
 * \brief Pointwise limit of the auto blocks of W(hbar u, p) near the junction.
 *
 * On I1 the tent height is a11 = 2|u| for |hbar u| < l1/2, so the block is
 * (2|u|/pi)[|c1|^2 sinc(2|u|(p - p1)) + |d1|^2 sinc(2|u|(p + p1))
 *           + 2 Re(c1 conj(d1) e^{2 i p1 u}) sinc(2|u| p)],
 * and likewise on I2.
 */
inline double semiclassical_auto_blocks(const SemiclassicalPoint &pt, double u, double p) {
  using numerics::sinc;
  const double au = std::abs(u);
  const bool left = u < 0.0;
  const cplx c = left ? pt.coeffs[0] : pt.coeffs[2], d = left ? pt.coeffs[1] : pt.coeffs[3];
  const double pk = left ? pt.p1 : pt.p2;
  if (u == 0.0) return 0.0;
  return 2.0 * au / numerics::pi *
         (std::norm(c) * sinc(2.0 * au * (p - pk)) + std::norm(d) * sinc(2.0 * au * (p + pk)) +
          2.0 * (c * std::conj(d) * std::polar(1.0, 2.0 * pk * u)).real() * sinc(2.0 * au * p));
}

/** \brief Auto blocks W11 + W22 of an eigenfunction at x = hbar u. */
inline double auto_blocks_at(const EigenSolution &s, double u, double p) {
  const RegionGeometry geo = region_geometry(s.graph);
  const auto b = wigner_blocks(s, geo.hbar * u, p, geo);
  return (b.w11 + b.w22).real();
}

/** \brief W_E on a (u, p) grid. */
inline WignerGrid semiclassical_grid(const SemiclassicalPoint &pt, const std::vector<double> &u_axis,
                                     const std::vector<double> &p_axis) {
  WignerGrid g{u_axis, p_axis, Eigen::MatrixXd(u_axis.size(), p_axis.size()), WignerKind::semiclassical, 0.0};
  for (std::size_t i = 0; i < u_axis.size(); ++i)
    for (std::size_t j = 0; j < p_axis.size(); ++j)
      g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          semiclassical_wigner(pt, u_axis[i], p_axis[j]);
  return g;
}

/** \brief Distance on the torus in the max norm of the wrapped coordinates. */
inline double torus_distance(double a1, double a2, double b1, double b2) {
  return std::max(numerics::angle_distance(a1, b1), numerics::angle_distance(a2, b2));
}

/** \brief Roots of the scan whose torus points lie within delta of the target. */
inline std::vector<SpectralRoot> subsequence_near(const SpectralScan &scan, double phi1, double phi2, double delta) {
  std::vector<SpectralRoot> out;
  const double w1 = scan.graph.omega1(), w2 = scan.graph.omega2();
  for (const auto &r : scan.roots)
    if (r.kappa > 0.0 && torus_distance(w1 * r.kappa, w2 * r.kappa, phi1, phi2) < delta) out.push_back(r);
  return out;
}

/** \brief min over global phases theta of ||a - e^{i theta} b||. */
inline double phase_distance(const Vec4 &a, const Vec4 &b) {
  const cplx ov = b.dot(a);
  const cplx rot = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0);
  return (a - rot * b).norm();
}

} // namespace twoedge

#endif // TWOEDGE_WIGNER_HPP
