/*
 * Two intervals I1 = (-l1, 0) and I2 = (0, l2) joined at the origin, carrying
 * masses m1 and m2.  Self-adjoint realisations of -(hbar^2/2m) d^2/dx^2 are
 * labelled by a unitary U in U(4) through
 *
 *     i (1 + U) gamma = (1 - U) nu,
 *
 * gamma = (psi1(-l1), psi1(0-), psi2(0+), psi2(l2)),
 * nu    = (-psi1'(-l1)/m1, psi1'(0-)/m1, -psi2'(0+)/m2, psi2'(l2)/m2).
 *
 * U is scale free when its spectrum lies in {-1, +1}; then U = 1 - 2P for an
 * orthogonal projection P.
 */
#ifndef TWOEDGE_GRAPH_HPP
#define TWOEDGE_GRAPH_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace twoedge {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kScaleFreeTol = 1e-10;

class TwoEdgeGraph {
public:
  TwoEdgeGraph(double m1, double m2, double l1, double l2, double hbar = 1.0)
      : m1_(m1), m2_(m2), l1_(l1), l2_(l2), hbar_(hbar) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(m1)) throw InvalidGraph("m1 must be positive");
    if (!positive(m2)) throw InvalidGraph("m2 must be positive");
    if (!positive(l1)) throw InvalidGraph("l1 must be positive");
    if (!positive(l2)) throw InvalidGraph("l2 must be positive");
    if (!positive(hbar)) throw InvalidGraph("hbar must be positive");
  }

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double l1() const { return l1_; }
  double l2() const { return l2_; }
  double hbar() const { return hbar_; }

  double omega1() const { return std::sqrt(m1_) * l1_; }
  double omega2() const { return std::sqrt(m2_) * l2_; }
  double omega_norm() const { return std::hypot(omega1(), omega2()); }

  /** \brief Same graph with a different action scale. */
  TwoEdgeGraph with_hbar(double hbar) const { return {m1_, m2_, l1_, l2_, hbar}; }

  /** \brief Exchange the roles of the two intervals. */
  TwoEdgeGraph swapped() const { return {m2_, m1_, l2_, l1_, hbar_}; }

private:
  double m1_, m2_, l1_, l2_, hbar_;
};

struct Frequencies {
  double omega1;
  double omega2;
};

inline Frequencies frequencies(const TwoEdgeGraph &g) { return {g.omega1(), g.omega2()}; }

inline double max_abs(const Mat4 &m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_unitary(const Mat4 &u, double tol = kUnitaryTol) {
  return max_abs(u * u.adjoint() - Mat4::Identity()) < tol;
}

/** \brief True iff every eigenvalue of the unitary u lies within tol of +1 or -1. */
inline bool is_scale_free(const Mat4 &u, double tol = kScaleFreeTol) {
  if (!is_unitary(u)) throw NonUnitary("||U U^dagger - 1||_max exceeds 1e-12");
  Eigen::ComplexEigenSolver<Mat4> es(u, false);
  for (int i = 0; i < 4; ++i) {
    const cplx z = es.eigenvalues()[i];
    if (std::min(std::abs(z - 1.0), std::abs(z + 1.0)) > tol) return false;
  }
  return true;
}

inline Mat4 projection_from_unitary(const Mat4 &u) { return 0.5 * (Mat4::Identity() - u); }
inline Mat4 unitary_from_projection(const Mat4 &p) { return Mat4::Identity() - 2.0 * p; }

enum class BcKind { general, scale_free };

class BoundaryCondition {
public:
  /** \brief Validates unitarity and classifies the spectrum. */
  static BoundaryCondition from_unitary(const Mat4 &u) {
    BoundaryCondition bc;
    bc.u_ = u;
    if (is_scale_free(u)) {
      bc.kind_ = BcKind::scale_free;
      bc.p_ = projection_from_unitary(u);
      bc.rank_ = static_cast<int>(std::lround(bc.p_.trace().real()));
    }
    return bc;
  }

  /** \brief U = 1 - 2P for an orthogonal projection P. */
  static BoundaryCondition from_projection(const Mat4 &p) {
    if (max_abs(p * p - p) > kUnitaryTol || max_abs(p - p.adjoint()) > kUnitaryTol)
      throw NotScaleFree("P is not an orthogonal projection");
    BoundaryCondition bc;
    bc.u_ = unitary_from_projection(p);
    bc.kind_ = BcKind::scale_free;
    bc.p_ = p;
    bc.rank_ = static_cast<int>(std::lround(p.trace().real()));
    return bc;
  }

  /** \brief Projection onto the span of the given (not necessarily orthonormal) vectors. */
  static BoundaryCondition from_span(const std::vector<Vec4> &vectors) {
    Mat4 p = Mat4::Zero();
    if (!vectors.empty()) {
      Eigen::Matrix<cplx, 4, Eigen::Dynamic> a(4, static_cast<Eigen::Index>(vectors.size()));
      for (std::size_t j = 0; j < vectors.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = vectors[j];
      Eigen::HouseholderQR<Eigen::Matrix<cplx, 4, Eigen::Dynamic>> qr(a);
      const Eigen::Index r = a.cols();
      Eigen::Matrix<cplx, 4, Eigen::Dynamic> q =
          qr.householderQ() * Eigen::Matrix<cplx, 4, Eigen::Dynamic>::Identity(4, r);
      p = q * q.adjoint();
    }
    return from_projection(p);
  }

  const Mat4 &u() const { return u_; }
  BcKind kind() const { return kind_; }
  bool scale_free() const { return kind_ == BcKind::scale_free; }
  /** \brief The projection P; zero matrix for general conditions. */
  const Mat4 &p() const { return p_; }
  /** \brief rank(P) for scale-free conditions, -1 otherwise. */
  int rank() const { return rank_; }

private:
  BoundaryCondition() = default;
  Mat4 u_ = Mat4::Identity();
  BcKind kind_ = BcKind::general;
  Mat4 p_ = Mat4::Zero();
  int rank_ = -1;
};

inline bool is_scale_free(const BoundaryCondition &bc, double tol = kScaleFreeTol) {
  return is_scale_free(bc.u(), tol);
}

struct BoundaryTrace {
  Vec4 gamma = Vec4::Zero();
  Vec4 nu = Vec4::Zero();
};

/**
 * \brief Trace from raw endpoint data.
 *
 * values and derivs are (psi, psi') at -l1, 0-, 0+, l2.
 */
inline BoundaryTrace make_trace(const TwoEdgeGraph &g, const Vec4 &values, const Vec4 &derivs) {
  BoundaryTrace t;
  t.gamma = values;
  t.nu << -derivs[0] / g.m1(), derivs[1] / g.m1(), -derivs[2] / g.m2(), derivs[3] / g.m2();
  return t;
}

/** \brief ||i(1+U)gamma - (1-U)nu|| <= tol (||gamma|| + ||nu|| + 1). */
inline bool domain_check(const BoundaryCondition &bc, const BoundaryTrace &t, double tol) {
  const Mat4 id = Mat4::Identity();
  const Vec4 r = cplx(0.0, 1.0) * ((id + bc.u()) * t.gamma) - (id - bc.u()) * t.nu;
  return r.norm() <= tol * (t.gamma.norm() + t.nu.norm() + 1.0);
}

/**
 * \brief The boundary bracket (hbar^2/2) (<gamma phi, nu psi> - <nu phi, gamma psi>).
 *
 * Inner products are antilinear in the first slot.  Integrating by parts on
 * each interval shows that this equals <H phi, psi> - <phi, H psi>; it
 * vanishes for phi, psi in the same self-adjoint domain.
 */
inline cplx boundary_form(const TwoEdgeGraph &g, const BoundaryTrace &phi, const BoundaryTrace &psi) {
  const double h2 = 0.5 * g.hbar() * g.hbar();
  return h2 * (phi.gamma.dot(psi.nu) - phi.nu.dot(psi.gamma));
}

/** \brief <gamma, nu>; vanishes on the domain of a scale-free realisation. */
inline cplx scale_free_orthogonality(const BoundaryTrace &t) { return t.gamma.dot(t.nu); }

struct Convergent {
  std::int64_t p;
  std::int64_t q;
  double error;
};

struct NonresonanceReport {
  double ratio = 0.0;
  std::vector<Convergent> convergents;
  bool near_resonant = false;
};

/**
 * \brief Continued-fraction convergents of omega1/omega2.
 *
 * near_resonant is set when a convergent with q <= 1e6 approximates the
 * ratio to better than 1e-12 and also beats the generic 1/q^2 rate by a
 * factor of 1e3 (q^2 err < 1e-3).  Advisory only.
 */
inline NonresonanceReport nonresonance_report(const TwoEdgeGraph &g, int depth = 20) {
  NonresonanceReport rep;
  rep.ratio = g.omega1() / g.omega2();
  double x = rep.ratio;
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;
  for (int n = 0; n < std::max(depth, 1); ++n) {
    const double a = std::floor(x);
    if (a > 1e12) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p = ai * p0 + p1;
    const std::int64_t q = ai * q0 + q1;
    p1 = p0;
    q1 = q0;
    p0 = p;
    q0 = q;
    const double err = std::abs(rep.ratio - static_cast<double>(p) / static_cast<double>(q));
    rep.convergents.push_back({p, q, err});
    const double qd = static_cast<double>(q);
    if (q <= 1000000 && err < 1e-12 && qd * qd * err < 1e-3) rep.near_resonant = true;
    const double frac = x - a;
    if (frac < 1e-12 || q > 1000000000000LL) break;
    x = 1.0 / frac;
  }
  return rep;
}

} // namespace twoedge

#endif // TWOEDGE_GRAPH_HPP
