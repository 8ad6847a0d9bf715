// Reference computations for the tests, written without the library's own
// numerics: cofactor determinants, adaptive Gauss-Kronrod quadrature, plain
// bisection and direct evaluation of the defining integrals.
#ifndef TWOEDGE_TESTS_ORACLES_HPP
#define TWOEDGE_TESTS_ORACLES_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "twoedge.hpp"

namespace oracle {

using twoedge::cplx;
using twoedge::Mat4;
using twoedge::Vec4;

inline constexpr double pi = std::numbers::pi;
inline constexpr double e = std::numbers::e;

/** Values frozen from independent arithmetic on the closed forms (m1, m2, l1, l2) = (16, 1, e, pi). */
namespace frozen {
inline constexpr double segment_liminf = -0.865266295479450;   // (pi - 16e) / (pi + 16e)
inline constexpr double segment_limsup = 0.072238889489446;    // (pi - e) / (pi + e)
inline constexpr double cesaro = -0.551672432857494;           // (pi - 4e) / (pi + 4e)
inline constexpr double pendant_liminf = -0.964524151696248;   // (pi - 64e) / (pi + 64e)
inline constexpr double omega1 = 10.87312731383618;            // 4e
} // namespace frozen

inline twoedge::TwoEdgeGraph reference_graph(double hbar = 1.0) { return {16.0, 1.0, e, pi, hbar}; }

/** Determinant by cofactor expansion along the first row. */
inline cplx det3(const Mat4 &m, int skip_row, int skip_col) {
  int r[3], c[3];
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_row) r[k++] = i;
  for (int j = 0, k = 0; j < 4; ++j)
    if (j != skip_col) c[k++] = j;
  auto a = [&](int i, int j) { return m(r[i], c[j]); };
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline cplx det4(const Mat4 &m) {
  cplx d = 0.0;
  for (int j = 0; j < 4; ++j) d += (j % 2 == 0 ? 1.0 : -1.0) * m(0, j) * det3(m, 0, j);
  return d;
}

/** Adaptive 61-point Gauss-Kronrod on [a, b] split into `pieces` equal parts. */
inline double integrate(const std::function<double(double)> &f, double a, double b, int pieces = 1) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double s = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) s += GK::integrate(f, a + i * h, a + (i + 1) * h, 6, 1e-11);
  return s;
}

inline cplx integrate_c(const std::function<cplx(double)> &f, double a, double b, int pieces = 1) {
  return {integrate([&](double t) { return f(t).real(); }, a, b, pieces),
          integrate([&](double t) { return f(t).imag(); }, a, b, pieces)};
}

/** Plain bisection on a sign change of f over [a, b]. */
inline double bisect(const std::function<double(double)> &f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/** Sorted union of pi n / omega_j up to kmax, with coincident values kept twice. */
inline std::vector<double> dirichlet_roots(double w1, double w2, double kmax) {
  std::vector<double> r;
  for (double w : {w1, w2})
    for (int n = 1; n * pi / w <= kmax; ++n) r.push_back(n * pi / w);
  std::sort(r.begin(), r.end());
  return r;
}

/** Segment eigenfunction as a sine on each edge, normalised to 1 at the junction. */
inline double segment_psi(const twoedge::TwoEdgeGraph &g, double kappa, double x) {
  const double k1 = kappa * std::sqrt(g.m1()), k2 = kappa * std::sqrt(g.m2());
  if (x <= 0.0) return std::sin(k1 * (x + g.l1())) / std::sin(kappa * g.omega1());
  return -std::sin(k2 * (x - g.l2())) / std::sin(kappa * g.omega2());
}

/** int |psi|^2 over I1 and I2 by quadrature. */
inline std::pair<double, double> quad_norms(const twoedge::EigenSolution &s) {
  const int pieces = 8 + static_cast<int>(std::max(s.k1 * s.graph.l1(), s.k2 * s.graph.l2()));
  const double n1 = integrate([&](double x) { return std::norm(twoedge::evaluate_on_edge(s, 1, x)); },
                              -s.graph.l1(), 0.0, pieces);
  const double n2 = integrate([&](double x) { return std::norm(twoedge::evaluate_on_edge(s, 2, x)); }, 0.0,
                              s.graph.l2(), pieces);
  return {n1, n2};
}

/**
 * (1 / 2 pi hbar) int conj(psi(x - y/2)) psi(x + y/2) e^{-i p y / hbar} dy,
 * psi extended by zero outside [-l1, l2].  The y-line is cut where either
 * argument crosses the junction or an endpoint.
 */
inline cplx wigner_defining(const twoedge::EigenSolution &s, double x, double p) {
  const double l1 = s.graph.l1(), l2 = s.graph.l2(), hb = s.graph.hbar();
  auto psi = [&](double t) -> cplx {
    if (t < -l1 || t > l2) return 0.0;
    return twoedge::evaluate_on_edge(s, t <= 0.0 ? 1 : 2, t);
  };
  // x - y/2 and x + y/2 both in [-l1, l2]  <=>  |y| <= 2 min(x + l1, l2 - x)
  const double ymax = 2.0 * std::min(x + l1, l2 - x);
  if (ymax <= 0.0) return 0.0;
  std::vector<double> cuts = {-ymax, ymax, 2.0 * x, -2.0 * x};
  std::sort(cuts.begin(), cuts.end());
  const double freq = std::abs(p) / hb + 2.0 * std::max(s.k1, s.k2);
  cplx total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], -ymax), b = std::min(cuts[i + 1], ymax);
    if (!(b > a)) continue;
    const int pieces = 4 + static_cast<int>((b - a) * freq / pi);
    total += integrate_c(
        [&](double y) { return std::conj(psi(x - 0.5 * y)) * psi(x + 0.5 * y) * std::polar(1.0, -p * y / hb); }, a,
        b, pieces);
  }
  return total / (2.0 * pi * hb);
}

/** Haar-like random unitary from the QR factor of a Gaussian matrix. */
inline Mat4 random_unitary(std::mt19937_64 &rng) {
  std::normal_distribution<double> n;
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Mat4> qr(a);
  return qr.householderQ() * Mat4::Identity();
}

inline Vec4 random_vec(std::mt19937_64 &rng) {
  std::normal_distribution<double> n;
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = cplx(n(rng), n(rng));
  return v;
}

} // namespace oracle

#endif // TWOEDGE_TESTS_ORACLES_HPP
