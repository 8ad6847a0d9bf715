#ifndef TWOEDGE_NUMERICS_HPP
#define TWOEDGE_NUMERICS_HPP

#include <boost/math/quadrature/gauss.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace twoedge::numerics {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/** \brief sin(x)/x with a Taylor fallback near the origin. */
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

/** \brief Representative of x modulo 2 pi in [0, 2 pi). */
inline double wrap_angle(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

/** \brief Shortest signed distance between two angles. */
inline double angle_distance(double a, double b) {
  double d = std::remainder(a - b, two_pi);
  return std::abs(d);
}

/** \brief Pairwise summation; order-deterministic. */
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

/** \brief 16-point Gauss-Legendre rule on [a, b]. */
template <class F>
double gauss16(F &&f, double a, double b) {
  return boost::math::quadrature::gauss<double, 16>::integrate(f, a, b);
}

/** \brief Composite 16-point Gauss-Legendre with n equal panels. */
template <class F>
double gauss16_composite(F &&f, double a, double b, int n) {
  std::vector<double> parts(static_cast<std::size_t>(n));
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) parts[static_cast<std::size_t>(i)] = gauss16(f, a + i * h, a + (i + 1) * h);
  return pairwise_sum(parts);
}

struct MinResult {
  double x;
  double fx;
  int iterations;
  bool converged;
};

/** \brief Golden-section minimisation on [a, b] down to an interval of width tol. */
template <class F>
MinResult golden_section(F &&f, double a, double b, double tol, int max_iter) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++it;
    if (c >= d) break;
  }
  const bool ok = (b - a <= tol) || c >= d;
  return fc < fd ? MinResult{c, fc, it, ok} : MinResult{d, fd, it, ok};
}

struct RootResult {
  double x;
  double lo;
  double hi;
  int iterations;
  bool converged;
};

/**
 * \brief Bisection for a sign change of f on [lo, hi].
 *
 * Stops at width tol or when the midpoint can no longer be represented.
 */
template <class F>
RootResult bisect(F &&f, double lo, double hi, double flo, double tol, int max_iter) {
  int it = 0;
  while (it < max_iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid <= lo || mid >= hi) return {mid, lo, hi, it, true};
    const double fm = f(mid);
    ++it;
    if (fm == 0.0) return {mid, mid, mid, it, true};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), lo, hi, it, hi - lo <= tol};
}

namespace detail {

inline void quiet_gsl() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

// int_X^inf e^{i b q} / q dq for X > 0, b != 0
inline std::complex<double> exp_over_q_tail(double b, double x) {
  const double t = std::abs(b) * x;
  const double sgn = b > 0.0 ? 1.0 : -1.0;
  return {-gsl_sf_Ci(t), sgn * (pi / 2.0 - gsl_sf_Si(t))};
}

// int over q outside [lo, hi] of e^{i b q} / q, with lo < 0 < hi
inline std::complex<double> exp_over_q_outside(double b, double lo, double hi) {
  if (b == 0.0) return {std::log(-lo / hi), 0.0};
  return exp_over_q_tail(b, hi) - exp_over_q_tail(-b, -lo);
}

} // namespace detail

/**
 * \brief Integral of e^{i at q} sinc(a q) over q outside [lo, hi], lo < 0 < hi.
 *
 * Exact via the sine and cosine integrals; used to close truncated momentum
 * quadratures of sinc envelopes.
 */
inline std::complex<double> sinc_tail(double a, double at, double lo, double hi) {
  detail::quiet_gsl();
  if (a <= 0.0) return {0.0, 0.0};
  const std::complex<double> tp = detail::exp_over_q_outside(at + a, lo, hi);
  const std::complex<double> tm = detail::exp_over_q_outside(at - a, lo, hi);
  return (tp - tm) / std::complex<double>(0.0, 2.0 * a);
}

} // namespace twoedge::numerics

#endif // TWOEDGE_NUMERICS_HPP
