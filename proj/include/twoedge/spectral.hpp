/*
 * Secular equation for H_U.
 *
 * With psi_j = c_j e^{i k_j x} + d_j e^{-i k_j x}, k_j = kappa sqrt(m_j) and
 * E = hbar^2 kappa^2 / 2, the trace is gamma = X c and nu = -i kappa G Y c, so
 * the boundary condition becomes A_U(kappa) c = 0 with
 *
 *     A_U(kappa) = (1 + U) X(kappa) + kappa (1 - U) G Y(kappa),
 *     G = diag(1/sqrt(m1), 1/sqrt(m1), 1/sqrt(m2), 1/sqrt(m2)).
 *
 * Eigenvalues are the zeros of S_U(kappa) = det A_U(kappa) on kappa > 0.
 * kappa = 0 is solved separately with affine functions on each edge.
 */
#ifndef TWOEDGE_SPECTRAL_HPP
#define TWOEDGE_SPECTRAL_HPP

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "graph.hpp"
#include "numerics.hpp"
#include "parallel.hpp"

namespace twoedge {

struct SpectralMatrix {
  Mat4 a;
  double kappa;
};

/** \brief X(kappa), or its n-th kappa-derivative. */
inline Mat4 x_matrix(const TwoEdgeGraph &g, double kappa, int n = 0) {
  const cplx i1(0.0, g.omega1()), i2(0.0, g.omega2());
  const cplx e1 = std::polar(1.0, g.omega1() * kappa);
  const cplx e2 = std::polar(1.0, g.omega2() * kappa);
  const double c = n == 0 ? 1.0 : 0.0;
  Mat4 x = Mat4::Zero();
  x(0, 0) = std::pow(-i1, n) * std::conj(e1);
  x(0, 1) = std::pow(i1, n) * e1;
  x(1, 0) = c;
  x(1, 1) = c;
  x(2, 2) = c;
  x(2, 3) = c;
  x(3, 2) = std::pow(i2, n) * e2;
  x(3, 3) = std::pow(-i2, n) * std::conj(e2);
  return x;
}

/** \brief Y(kappa), or its n-th kappa-derivative. */
inline Mat4 y_matrix(const TwoEdgeGraph &g, double kappa, int n = 0) {
  const cplx i1(0.0, g.omega1()), i2(0.0, g.omega2());
  const cplx e1 = std::polar(1.0, g.omega1() * kappa);
  const cplx e2 = std::polar(1.0, g.omega2() * kappa);
  const double c = n == 0 ? 1.0 : 0.0;
  Mat4 y = Mat4::Zero();
  y(0, 0) = std::pow(-i1, n) * std::conj(e1);
  y(0, 1) = -std::pow(i1, n) * e1;
  y(1, 0) = -c;
  y(1, 1) = c;
  y(2, 2) = c;
  y(2, 3) = -c;
  y(3, 2) = -std::pow(i2, n) * e2;
  y(3, 3) = std::pow(-i2, n) * std::conj(e2);
  return y;
}

inline Mat4 g_matrix(const TwoEdgeGraph &g) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = 1.0 / std::sqrt(g.m1());
  m(2, 2) = m(3, 3) = 1.0 / std::sqrt(g.m2());
  return m;
}

inline SpectralMatrix assemble_spectral_matrix(const TwoEdgeGraph &g, const BoundaryCondition &bc,
                                               double kappa) {
  const Mat4 id = Mat4::Identity();
  return {(id + bc.u()) * x_matrix(g, kappa) + kappa * (id - bc.u()) * g_matrix(g) * y_matrix(g, kappa),
          kappa};
}

inline cplx spectral_function(const TwoEdgeGraph &g, const BoundaryCondition &bc, double kappa) {
  return assemble_spectral_matrix(g, bc, kappa).a.determinant();
}

/** \brief (S, S', S'') at kappa, by row-wise multilinearity of the determinant. */
inline std::array<cplx, 3> spectral_derivatives(const TwoEdgeGraph &g, const BoundaryCondition &bc, double kappa) {
  const Mat4 id = Mat4::Identity();
  const Mat4 p = id + bc.u(), q = (id - bc.u()) * g_matrix(g);
  const Mat4 x = x_matrix(g, kappa), y = y_matrix(g, kappa);
  const Mat4 x1 = x_matrix(g, kappa, 1), y1 = y_matrix(g, kappa, 1);
  const Mat4 x2 = x_matrix(g, kappa, 2), y2 = y_matrix(g, kappa, 2);
  const Mat4 a0 = p * x + kappa * q * y;
  const Mat4 a1 = p * x1 + q * (kappa * y1 + y);
  const Mat4 a2 = p * x2 + q * (kappa * y2 + 2.0 * y1);
  cplx d1 = 0.0, d2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    Mat4 m = a0;
    m.row(i) = a1.row(i);
    d1 += m.determinant();
    m.row(i) = a2.row(i);
    d2 += m.determinant();
    for (int j = i + 1; j < 4; ++j) {
      Mat4 mm = a0;
      mm.row(i) = a1.row(i);
      mm.row(j) = a1.row(j);
      d2 += 2.0 * mm.determinant();
    }
  }
  return {a0.determinant(), d1, d2};
}

inline Eigen::Matrix<double, 4, 1> singular_values(const Mat4 &a) {
  return Eigen::JacobiSVD<Mat4>(a).singularValues();
}

/** \brief Smallest singular value of A_U(kappa). */
inline double singular_gap(const TwoEdgeGraph &g, const BoundaryCondition &bc, double kappa) {
  return singular_values(assemble_spectral_matrix(g, bc, kappa).a)[3];
}

struct ScanOptions {
  double safety = 0.1;
  double root_tol = 1e-8;
  double gap_tol = 1e-10;
  double rank_tol = 1e-8;
  double imag_tol = 1e-9;
  int max_iter = 200;
  unsigned threads = 1;
};

struct SpectralRoot {
  double kappa = 0.0;
  double residual = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int multiplicity = 1;
  bool is_zero_mode = false;
};

enum class Indicator { real_part, singular_gap };

struct SpectralScan {
  explicit SpectralScan(const TwoEdgeGraph &g) : graph(g) {}

  TwoEdgeGraph graph;
  double kappa_max = 0.0;
  Indicator indicator = Indicator::singular_gap;
  /** \brief Global phase removed from S_U in real_part mode. */
  double phase = 0.0;
  std::vector<SpectralRoot> roots;
  /** \brief Dimension of the E = 0 eigenspace. */
  int zero_mode_multiplicity = 0;
  bool near_resonant = false;

  double energy(const SpectralRoot &r) const { return 0.5 * graph.hbar() * graph.hbar() * r.kappa * r.kappa; }
};

/** \brief Number of singular values below rank_tol * sigma_max. */
inline int kernel_dimension(const Mat4 &a, double rank_tol) {
  const auto s = singular_values(a);
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (s[i] < rank_tol * s[0]) ++k;
  return k;
}

/** \brief Orthonormal basis of the numerical kernel of a. */
inline std::vector<Vec4> null_space(const SpectralMatrix &a, double rank_tol = 1e-8) {
  Eigen::JacobiSVD<Mat4> svd(a.a, Eigen::ComputeFullV);
  const auto &s = svd.singularValues();
  std::vector<Vec4> basis;
  for (int i = 3; i >= 0; --i)
    if (s[i] < rank_tol * s[0]) basis.push_back(svd.matrixV().col(i));
  if (basis.empty())
    throw EmptyKernel("no singular value below rank_tol at kappa = " + std::to_string(a.kappa));
  return basis;
}

namespace detail {

inline SpectralRoot finish_root(const TwoEdgeGraph &g, const BoundaryCondition &bc, double kappa, double lo,
                                double hi, const ScanOptions &opts) {
  const auto s = singular_values(assemble_spectral_matrix(g, bc, kappa).a);
  SpectralRoot r;
  r.kappa = kappa;
  r.lo = lo;
  r.hi = hi;
  r.residual = s[3];
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (s[i] < opts.rank_tol * s[0]) ++k;
  r.multiplicity = std::max(k, 1);
  return r;
}

// Row-norm product: scale of the rounding error in det A.
inline double hadamard_bound(const Mat4 &a) {
  double h = 1.0;
  for (int i = 0; i < 4; ++i) h *= a.row(i).norm();
  return h;
}

struct Candidate {
  enum Kind { bracket, dip } kind;
  double lo, hi;
  double flo;
};

} // namespace detail

/**
 * \brief All roots of S_U in (0, kappa_max].
 *
 * The grid step is safety * pi / (omega1 + omega2).  When S_U is real up to a
 * constant phase on the whole grid, each cell is cut at the zeros of r'' and
 * r' (r the rotated S_U, derivatives exact) so that r is monotone on every
 * piece; sign changes are then bisected, and extrema that touch zero without
 * crossing are accepted through the kernel test.  Otherwise local minima of
 * sigma_min are refined by golden-section search.
 */
inline SpectralScan scan_roots(const TwoEdgeGraph &g, const BoundaryCondition &bc, double kappa_max,
                               const ScanOptions &opts = {}) {
  if (!(kappa_max > 0.0)) throw std::invalid_argument("kappa_max must be positive");
  SpectralScan scan{g};
  scan.kappa_max = kappa_max;
  scan.near_resonant = nonresonance_report(g).near_resonant;

  const double h0 = opts.safety * numerics::pi / (g.omega1() + g.omega2());
  const double k0 = 1e-3 * h0;
  const auto n = static_cast<std::size_t>(std::ceil((kappa_max - k0) / h0));
  const std::size_t npts = std::max<std::size_t>(n, 2) + 1;
  const double h = (kappa_max - k0) / static_cast<double>(npts - 1);
  std::vector<double> kap(npts);
  for (std::size_t i = 0; i < npts; ++i) kap[i] = k0 + h * static_cast<double>(i);
  kap.back() = kappa_max;

  std::vector<cplx> sval(npts);
  std::vector<double> hbound(npts);
  parallel_for(npts, opts.threads, [&](std::size_t i) {
    const Mat4 a = assemble_spectral_matrix(g, bc, kap[i]).a;
    sval[i] = a.determinant();
    hbound[i] = detail::hadamard_bound(a);
  });

  std::size_t imax = 0;
  for (std::size_t i = 0; i < npts; ++i)
    if (std::abs(sval[i]) > std::abs(sval[imax])) imax = i;
  const double theta = std::arg(sval[imax]);
  const cplx rot = std::polar(1.0, -theta);
  bool real_mode = std::abs(sval[imax]) > 0.0;
  for (std::size_t i = 0; i < npts && real_mode; ++i)
    if (std::abs((sval[i] * rot).imag()) > opts.imag_tol * hbound[i]) real_mode = false;

  std::vector<detail::Candidate> cands;
  std::vector<SpectralRoot> found;

  auto gap = [&](double k) { return singular_gap(g, bc, k); };
  const double minwidth_rel = 1e-12;

  if (real_mode) {
    scan.indicator = Indicator::real_part;
    scan.phase = theta;
    // r, r', r'' of the rotated spectral function
    auto jet = [&](double k) {
      const auto d = spectral_derivatives(g, bc, k);
      return std::array<double, 3>{(d[0] * rot).real(), (d[1] * rot).real(), (d[2] * rot).real()};
    };
    auto r = [&](double k) { return jet(k)[0]; };
    std::vector<std::array<double, 3>> jv(npts);
    parallel_for(npts, opts.threads, [&](std::size_t i) { jv[i] = jet(kap[i]); });

    std::vector<std::vector<SpectralRoot>> out(npts - 1);
    std::vector<std::string> failure(npts - 1);
    parallel_for(npts - 1, opts.threads, [&](std::size_t c) {
      auto fail = [&](const std::string &what, double lo, double hi) {
        if (failure[c].empty())
          failure[c] = what + " on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
      };
      // zero of the order-th derivative between lo and hi, where it changes sign
      auto locate = [&](int order, double lo, double hi, double flo) {
        const auto br = numerics::bisect([&](double k) { return jet(k)[static_cast<std::size_t>(order)]; }, lo, hi,
                                         flo, 0.0, opts.max_iter);
        if (!br.converged) fail("bisection did not converge", lo, hi);
        return br.x;
      };
      auto neg = [](double v) { return v < 0.0; };
      // r is monotone on [lo, hi]: at most one simple root
      auto monotone_piece = [&](double lo, double hi, double rlo, double rhi) {
        if (neg(rlo) == neg(rhi)) return;
        const double k = locate(0, lo, hi, rlo);
        out[c].push_back(detail::finish_root(g, bc, k, lo, hi, opts));
      };
      // r'' keeps its sign on [lo, hi]: r' has at most one zero
      auto convex_piece = [&](double lo, double hi, const std::array<double, 3> &jl, const std::array<double, 3> &jh) {
        if (neg(jl[1]) == neg(jh[1])) {
          monotone_piece(lo, hi, jl[0], jh[0]);
          return;
        }
        const double e = locate(1, lo, hi, jl[1]);
        const double re = r(e);
        monotone_piece(lo, e, jl[0], re);
        monotone_piece(e, hi, re, jh[0]);
        if (neg(re) == neg(jl[0]) && neg(re) == neg(jh[0]) && re != 0.0) {
          // tangential contact: a double root shows up only through the kernel
          const auto sv = singular_values(assemble_spectral_matrix(g, bc, e).a);
          if (sv[3] <= opts.root_tol * sv[0]) out[c].push_back(detail::finish_root(g, bc, e, lo, hi, opts));
        }
      };
      const double lo = kap[c], hi = kap[c + 1];
      const auto &jl = jv[c], &jh = jv[c + 1];
      if (neg(jl[2]) == neg(jh[2])) {
        convex_piece(lo, hi, jl, jh);
      } else {
        const double t = locate(2, lo, hi, jl[2]);
        const auto jt = jet(t);
        convex_piece(lo, t, jl, jt);
        convex_piece(t, hi, jt, jh);
      }
    });
    for (std::size_t c = 0; c + 1 < npts; ++c) {
      if (!failure[c].empty()) throw ScanIncomplete(failure[c]);
      for (auto &rt : out[c]) found.push_back(rt);
    }
  } else {
    scan.indicator = Indicator::singular_gap;
    std::vector<double> sg(npts);
    parallel_for(npts, opts.threads, [&](std::size_t i) { sg[i] = gap(kap[i]); });
    for (std::size_t i = 1; i < npts; ++i) {
      const bool left = sg[i] <= sg[i - 1];
      const bool right = i + 1 == npts || sg[i] <= sg[i + 1];
      if (left && right) cands.push_back({detail::Candidate::dip, kap[i - 1], kap[std::min(i + 1, npts - 1)], sg[i]});
    }
    std::vector<std::vector<SpectralRoot>> out(cands.size());
    std::vector<std::string> failure(cands.size());
    parallel_for(cands.size(), opts.threads, [&](std::size_t c) {
      const auto &cd = cands[c];
      const auto m = numerics::golden_section(gap, cd.lo, cd.hi, minwidth_rel * std::max(1.0, cd.hi), opts.max_iter);
      if (!m.converged) {
        failure[c] = "golden-section search did not converge on [" + std::to_string(cd.lo) + ", " +
                     std::to_string(cd.hi) + "]";
        return;
      }
      const auto sv = singular_values(assemble_spectral_matrix(g, bc, m.x).a);
      if (sv[3] <= opts.root_tol * sv[0]) out[c].push_back(detail::finish_root(g, bc, m.x, cd.lo, cd.hi, opts));
    });
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (!failure[c].empty()) throw ScanIncomplete(failure[c]);
      for (auto &rt : out[c]) found.push_back(rt);
    }
  }

  // a root at kappa_max itself has no sign change to its right
  const auto send = singular_values(assemble_spectral_matrix(g, bc, kappa_max).a);
  if (send[3] <= opts.root_tol * send[0])
    found.push_back(detail::finish_root(g, bc, kappa_max, kap[npts - 2], kappa_max, opts));

  std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) { return a.kappa < b.kappa; });
  for (const auto &rt : found) {
    if (rt.kappa <= 0.0 || rt.kappa > kappa_max) continue;
    const bool close = !scan.roots.empty() &&
                       rt.kappa - scan.roots.back().kappa <= opts.gap_tol * std::max(1.0, rt.kappa);
    // a rounding-split double root: both halves already see a multi-dimensional kernel
    const bool split_double = !scan.roots.empty() && rt.multiplicity > 1 && scan.roots.back().multiplicity > 1 &&
                              rt.kappa - scan.roots.back().kappa <= 1e-6 * std::max(1.0, rt.kappa);
    if (close || split_double) {
      auto &prev = scan.roots.back();
      prev.multiplicity = std::max(prev.multiplicity, rt.multiplicity);
      if (rt.residual < prev.residual) {
        prev.kappa = rt.kappa;
        prev.residual = rt.residual;
      }
      continue;
    }
    scan.roots.push_back(rt);
  }
  return scan;
}

/** \brief Solution of H_U psi = E psi on the two edges. */
struct EigenSolution {
  TwoEdgeGraph graph;
  SpectralRoot root;
  /** \brief (c1, d1, c2, d2); for zero modes the affine data (a1, b1, a2, b2) of a_j + b_j x. */
  Vec4 coeffs = Vec4::Zero();
  double k1 = 0.0;
  double k2 = 0.0;
  double norm_sq_I1 = 0.0;
  double norm_sq_I2 = 0.0;
  bool is_zero_mode = false;

  double kappa() const { return root.kappa; }
  double energy() const { return 0.5 * graph.hbar() * graph.hbar() * root.kappa * root.kappa; }
};

/** \brief Hermitian forms giving the L2 inner products on I1 and I2 of plane-wave data. */
struct IntervalGram {
  Mat4 i1 = Mat4::Zero();
  Mat4 i2 = Mat4::Zero();
};

inline IntervalGram plane_wave_gram(const TwoEdgeGraph &g, double kappa) {
  const double p1 = g.omega1() * kappa;
  const double p2 = g.omega2() * kappa;
  const cplx s1 = std::polar(numerics::sinc(p1), -p1);
  const cplx s2 = std::polar(numerics::sinc(p2), p2);
  IntervalGram m;
  m.i1(0, 0) = m.i1(1, 1) = g.l1();
  m.i1(0, 1) = g.l1() * std::conj(s1);
  m.i1(1, 0) = g.l1() * s1;
  m.i2(2, 2) = m.i2(3, 3) = g.l2();
  m.i2(2, 3) = g.l2() * std::conj(s2);
  m.i2(3, 2) = g.l2() * s2;
  return m;
}

inline IntervalGram affine_gram(const TwoEdgeGraph &g) {
  const double l1 = g.l1(), l2 = g.l2();
  IntervalGram m;
  m.i1(0, 0) = l1;
  m.i1(0, 1) = m.i1(1, 0) = -0.5 * l1 * l1;
  m.i1(1, 1) = l1 * l1 * l1 / 3.0;
  m.i2(2, 2) = l2;
  m.i2(2, 3) = m.i2(3, 2) = 0.5 * l2 * l2;
  m.i2(3, 3) = l2 * l2 * l2 / 3.0;
  return m;
}

/** \brief (int_I1 |psi|^2, int_I2 |psi|^2) in closed form. */
inline std::pair<double, double> interval_norms(const EigenSolution &s) {
  const IntervalGram m = s.is_zero_mode ? affine_gram(s.graph) : plane_wave_gram(s.graph, s.kappa());
  return {s.coeffs.dot(m.i1 * s.coeffs).real(), s.coeffs.dot(m.i2 * s.coeffs).real()};
}

/** \brief Rotates v so that its largest-magnitude entry is real and positive. */
inline Vec4 fix_phase(const Vec4 &v) {
  double vmax = 0.0;
  for (int i = 0; i < 4; ++i) vmax = std::max(vmax, std::abs(v[i]));
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v[i]) >= vmax * (1.0 - 1e-9)) return v * (std::abs(v[i]) / v[i]);
  }
  return v;
}

namespace detail {

// L2-orthonormal basis of span(basis), diagonalising the leaning form
// (N2 - N1) so that degenerate eigenspaces get a deterministic basis.
inline std::vector<Vec4> orthonormalize(const std::vector<Vec4> &basis, const IntervalGram &m) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> v(4, k);
  for (Eigen::Index j = 0; j < k; ++j) v.col(j) = basis[static_cast<std::size_t>(j)];
  const Eigen::MatrixXcd gram = v.adjoint() * (m.i1 + m.i2) * v;
  const Eigen::MatrixXcd lean = v.adjoint() * (m.i2 - m.i1) * v;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(lean, gram);
  std::vector<Vec4> out;
  for (Eigen::Index j = 0; j < k; ++j) {
    Vec4 w = v * es.eigenvectors().col(j);
    const double nrm = std::sqrt(w.dot((m.i1 + m.i2) * w).real());
    out.push_back(fix_phase(w / nrm));
  }
  return out;
}

inline EigenSolution make_solution(const TwoEdgeGraph &g, const SpectralRoot &root, const Vec4 &c,
                                   const IntervalGram &m, bool zero_mode) {
  EigenSolution s{g, root, c};
  s.k1 = root.kappa * std::sqrt(g.m1());
  s.k2 = root.kappa * std::sqrt(g.m2());
  s.norm_sq_I1 = c.dot(m.i1 * c).real();
  s.norm_sq_I2 = c.dot(m.i2 * c).real();
  s.is_zero_mode = zero_mode;
  return s;
}

} // namespace detail

/** \brief L2-normalised basis of the eigenspace at an accepted root. */
inline std::vector<EigenSolution> build_eigensolutions(const TwoEdgeGraph &g, const BoundaryCondition &bc,
                                                       const SpectralRoot &root, double rank_tol = 1e-8) {
  const auto kernel = null_space(assemble_spectral_matrix(g, bc, root.kappa), rank_tol);
  const IntervalGram m = plane_wave_gram(g, root.kappa);
  std::vector<EigenSolution> out;
  for (const auto &c : detail::orthonormalize(kernel, m)) out.push_back(detail::make_solution(g, root, c, m, false));
  return out;
}

inline EigenSolution build_eigensolution(const TwoEdgeGraph &g, const BoundaryCondition &bc, const SpectralRoot &root,
                                         double rank_tol = 1e-8) {
  return build_eigensolutions(g, bc, root, rank_tol).front();
}

/** \brief Orthonormal basis of ker H_U, from psi_j = a_j + b_j x on each edge. */
inline std::vector<EigenSolution> detect_zero_modes(const TwoEdgeGraph &g, const BoundaryCondition &bc) {
  Mat4 gam = Mat4::Zero(), nu = Mat4::Zero();
  gam(0, 0) = 1.0;
  gam(0, 1) = -g.l1();
  gam(1, 0) = 1.0;
  gam(2, 2) = 1.0;
  gam(3, 2) = 1.0;
  gam(3, 3) = g.l2();
  nu(0, 1) = -1.0 / g.m1();
  nu(1, 1) = 1.0 / g.m1();
  nu(2, 3) = -1.0 / g.m2();
  nu(3, 3) = 1.0 / g.m2();
  const Mat4 id = Mat4::Identity();
  const Mat4 sys = cplx(0.0, 1.0) * (id + bc.u()) * gam - (id - bc.u()) * nu;
  Eigen::JacobiSVD<Mat4> svd(sys, Eigen::ComputeFullV);
  const auto &s = svd.singularValues();
  const double scale = std::max(s[0], 1.0);
  std::vector<Vec4> basis;
  for (int i = 3; i >= 0; --i)
    if (s[i] < 1e-10 * scale) basis.push_back(svd.matrixV().col(i));
  std::vector<EigenSolution> out;
  if (basis.empty()) return out;
  const IntervalGram m = affine_gram(g);
  SpectralRoot root;
  root.kappa = 0.0;
  root.residual = s[3];
  root.multiplicity = static_cast<int>(basis.size());
  root.is_zero_mode = true;
  for (const auto &c : detail::orthonormalize(basis, m)) out.push_back(detail::make_solution(g, root, c, m, true));
  return out;
}

/** \brief psi on the given edge (1 or 2), extended analytically to its closure. */
inline cplx evaluate_on_edge(const EigenSolution &s, int edge, double x) {
  const int o = edge == 1 ? 0 : 2;
  if (s.is_zero_mode) return s.coeffs[o] + s.coeffs[o + 1] * x;
  const double k = edge == 1 ? s.k1 : s.k2;
  return s.coeffs[o] * std::polar(1.0, k * x) + s.coeffs[o + 1] * std::polar(1.0, -k * x);
}

inline cplx derivative_on_edge(const EigenSolution &s, int edge, double x) {
  const int o = edge == 1 ? 0 : 2;
  if (s.is_zero_mode) return s.coeffs[o + 1];
  const double k = edge == 1 ? s.k1 : s.k2;
  return cplx(0.0, k) * (s.coeffs[o] * std::polar(1.0, k * x) - s.coeffs[o + 1] * std::polar(1.0, -k * x));
}

/** \brief psi(x) for x in [-l1, l2]; x = 0 is read on the I1 side. */
inline cplx evaluate_eigenfunction(const EigenSolution &s, double x) {
  if (!(x >= -s.graph.l1() && x <= s.graph.l2())) throw OutOfDomain("x = " + std::to_string(x));
  return evaluate_on_edge(s, x <= 0.0 ? 1 : 2, x);
}

inline BoundaryTrace trace_of(const EigenSolution &s) {
  const double l1 = s.graph.l1(), l2 = s.graph.l2();
  Vec4 v, d;
  v << evaluate_on_edge(s, 1, -l1), evaluate_on_edge(s, 1, 0.0), evaluate_on_edge(s, 2, 0.0), evaluate_on_edge(s, 2, l2);
  d << derivative_on_edge(s, 1, -l1), derivative_on_edge(s, 1, 0.0), derivative_on_edge(s, 2, 0.0),
      derivative_on_edge(s, 2, l2);
  return make_trace(s.graph, v, d);
}

/** \brief Scan plus zero-mode count; the usual entry point. */
inline SpectralScan full_scan(const TwoEdgeGraph &g, const BoundaryCondition &bc, double kappa_max,
                              const ScanOptions &opts = {}) {
  SpectralScan s = scan_roots(g, bc, kappa_max, opts);
  s.zero_mode_multiplicity = static_cast<int>(detect_zero_modes(g, bc).size());
  return s;
}

/** \brief kappa_max large enough to hold about n roots, from the Weyl density. */
inline double kappa_for_count(const TwoEdgeGraph &g, std::size_t n) {
  return (static_cast<double>(n) + 10.0) * numerics::pi / (g.omega1() + g.omega2());
}

} // namespace twoedge

#endif // TWOEDGE_SPECTRAL_HPP
