/*
 * Closed forms for six scale-free conditions U = 1 - 2P.
 *
 *   dirichlet  P = 0
 *   neumann    P = 1
 *   segment    P = |u><u|, u = (0,1,1,0)/sqrt2           Kirchhoff at 0, Dirichlet at the ends
 *   ring       P projects on (0,1,1,0)/sqrt2, (1,0,0,1)/sqrt2
 *   pendant    P = |u><u|, u = (0,1,1,1)/sqrt3           Dirichlet at -l1 only
 *   rose       P = |u><u|, u = (1,1,1,1)/2               all four ends joined
 *
 * With phi_j = omega_j kappa the spectral function factors as
 * S(kappa) = kappa^r f_P(phi1, phi2) g_P(kappa), g_P != 0.  The zero set of f_P
 * on the torus splits into branches; each has its own residual, a smooth
 * function of the unwrapped angles whose sign changes along the flow mark the
 * roots on that branch:
 *
 *   dirichlet, neumann  sin phi1 | sin phi2
 *   segment             sqrt(m1) sin phi1 cos phi2 + sqrt(m2) sin phi2 cos phi1
 *   ring                sqrt(m2) s2 c1 + sqrt(m1) s1 c2 | sqrt(m1) s2 c1 + sqrt(m2) s1 c2
 *   pendant             s2 | 2 sqrt(m1) sin phi1 s2 - sqrt(m2) cos phi1 c2
 *   rose                s1 | s2 | sqrt(m2) s1 c2 + sqrt(m1) s2 c1
 *
 * where s_j = sin(phi_j/2), c_j = cos(phi_j/2).  f_P is a constant multiple of
 * the product of the residuals.
 */
#ifndef TWOEDGE_CATALOG_HPP
#define TWOEDGE_CATALOG_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spectral.hpp"

namespace twoedge {

enum class PresetTag { dirichlet, neumann, segment, ring, pendant, rose };

inline constexpr std::array<PresetTag, 6> kAllPresets = {PresetTag::dirichlet, PresetTag::neumann, PresetTag::segment,
                                                         PresetTag::ring,      PresetTag::pendant, PresetTag::rose};

inline std::string_view preset_name(PresetTag t) {
  switch (t) {
  case PresetTag::dirichlet: return "dirichlet";
  case PresetTag::neumann: return "neumann";
  case PresetTag::segment: return "segment";
  case PresetTag::ring: return "ring";
  case PresetTag::pendant: return "pendant";
  case PresetTag::rose: return "rose";
  }
  return "";
}

inline std::optional<PresetTag> preset_from_name(std::string_view name) {
  for (auto t : kAllPresets)
    if (preset_name(t) == name) return t;
  return std::nullopt;
}

struct Preset {
  PresetTag tag;
  BoundaryCondition bc;
};

inline Preset make_preset(PresetTag tag) {
  const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  auto vec = [](double a, double b, double c, double d) {
    Vec4 v;
    v << a, b, c, d;
    return v;
  };
  switch (tag) {
  case PresetTag::dirichlet: return {tag, BoundaryCondition::from_projection(Mat4::Zero())};
  case PresetTag::neumann: return {tag, BoundaryCondition::from_projection(Mat4::Identity())};
  case PresetTag::segment: return {tag, BoundaryCondition::from_span({vec(0, r2, r2, 0)})};
  case PresetTag::ring: return {tag, BoundaryCondition::from_span({vec(0, r2, r2, 0), vec(r2, 0, 0, r2)})};
  case PresetTag::pendant: return {tag, BoundaryCondition::from_span({vec(0, r3, r3, r3)})};
  case PresetTag::rose: return {tag, BoundaryCondition::from_span({vec(0.5, 0.5, 0.5, 0.5)})};
  }
  throw std::invalid_argument("unknown preset");
}

inline int branch_count(PresetTag t) {
  switch (t) {
  case PresetTag::segment: return 1;
  case PresetTag::rose: return 3;
  default: return 2;
  }
}

/** \brief The trigonometric polynomial f_P of the preset. */
inline double f_P(PresetTag t, const TwoEdgeGraph &g, double phi1, double phi2) {
  const double sm1 = std::sqrt(g.m1()), sm2 = std::sqrt(g.m2());
  const double s1 = std::sin(phi1), c1 = std::cos(phi1), s2 = std::sin(phi2), c2 = std::cos(phi2);
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann: return s1 * s2;
  case PresetTag::segment: return sm1 * s1 * c2 + sm2 * s2 * c1;
  case PresetTag::ring: return 2.0 * sm1 * sm2 * (1.0 - c1 * c2) + (g.m1() + g.m2()) * s1 * s2;
  case PresetTag::pendant: {
    const double h = std::sin(0.5 * phi2);
    return h * (2.0 * sm1 * s1 * h - sm2 * c1 * std::cos(0.5 * phi2));
  }
  case PresetTag::rose: return sm1 * s1 * (1.0 - c2) + sm2 * s2 * (1.0 - c1);
  }
  return 0.0;
}

/** \brief Residual of branch j (1-based) at unwrapped angles. */
inline double branch_residual(PresetTag t, int j, const TwoEdgeGraph &g, double phi1, double phi2) {
  const double sm1 = std::sqrt(g.m1()), sm2 = std::sqrt(g.m2());
  const double hs1 = std::sin(0.5 * phi1), hc1 = std::cos(0.5 * phi1);
  const double hs2 = std::sin(0.5 * phi2), hc2 = std::cos(0.5 * phi2);
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann: return j == 1 ? std::sin(phi1) : std::sin(phi2);
  case PresetTag::segment: return f_P(t, g, phi1, phi2);
  case PresetTag::ring: return j == 1 ? sm2 * hs2 * hc1 + sm1 * hs1 * hc2 : sm1 * hs2 * hc1 + sm2 * hs1 * hc2;
  case PresetTag::pendant: return j == 1 ? hs2 : 2.0 * sm1 * std::sin(phi1) * hs2 - sm2 * std::cos(phi1) * hc2;
  case PresetTag::rose:
    if (j == 1) return hs1;
    if (j == 2) return hs2;
    return sm2 * hs1 * hc2 + sm1 * hs2 * hc1;
  }
  return 0.0;
}

struct ZeroSetBranch {
  enum class Kind { curve, line_phi1, line_phi2 };
  PresetTag preset;
  int index;
  int sheet;
  Kind kind;
  /** \brief Constant coordinate of a line branch. */
  double level = 0.0;
  /** \brief phi1 -> phi2 for curve branches. */
  std::function<double(double)> phi2_of_phi1;
  std::string description;

  /** \brief Point on the branch for parameter t in [0, 2 pi). */
  std::pair<double, double> point(double t) const {
    switch (kind) {
    case Kind::curve: return {t, numerics::wrap_angle(phi2_of_phi1(t))};
    case Kind::line_phi1: return {level, t};
    case Kind::line_phi2: return {t, level};
    }
    return {0.0, 0.0};
  }
};

/** \brief Explicit parametrisations of the zero set of f_P. */
inline std::vector<ZeroSetBranch> zero_set_branches(PresetTag t, double m1, double m2) {
  using K = ZeroSetBranch::Kind;
  const double sm1 = std::sqrt(m1), sm2 = std::sqrt(m2);
  const double pi = numerics::pi;
  std::vector<ZeroSetBranch> out;
  auto half_tan = [](double a, double b) {
    // t2 = -(a/b) t1 through atan2 so that phi1 = pi stays regular
    return [a, b](double p1) { return 2.0 * std::atan2(-a * std::sin(0.5 * p1), b * std::cos(0.5 * p1)); };
  };
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann:
    out.push_back({t, 1, 0, K::line_phi1, 0.0, {}, "phi1 = 0"});
    out.push_back({t, 1, 1, K::line_phi1, pi, {}, "phi1 = pi"});
    out.push_back({t, 2, 0, K::line_phi2, 0.0, {}, "phi2 = 0"});
    out.push_back({t, 2, 1, K::line_phi2, pi, {}, "phi2 = pi"});
    break;
  case PresetTag::segment: {
    auto base = [sm1, sm2](double p1) { return std::atan2(-sm1 * std::sin(p1), sm2 * std::cos(p1)); };
    out.push_back({t, 1, 0, K::curve, 0.0, base, "tan phi2 = -sqrt(m1/m2) tan phi1"});
    out.push_back({t, 1, 1, K::curve, 0.0, [base, pi](double p1) { return base(p1) + pi; },
                   "tan phi2 = -sqrt(m1/m2) tan phi1, second sheet"});
    break;
  }
  case PresetTag::ring:
    if (m1 == m2)
      throw DegenerateSplit("ring branches coincide for m1 = m2; f_P = 2m(1 - cos(phi1 + phi2))");
    out.push_back({t, 1, 0, K::curve, 0.0, half_tan(sm1, sm2), "t2 = -sqrt(m1/m2) t1"});
    out.push_back({t, 2, 0, K::curve, 0.0, half_tan(sm2, sm1), "t2 = -sqrt(m2/m1) t1"});
    break;
  case PresetTag::pendant:
    out.push_back({t, 1, 0, K::line_phi2, 0.0, {}, "phi2 = 0"});
    out.push_back({t, 2, 0, K::curve, 0.0,
                   [sm1, sm2](double p1) { return 2.0 * std::atan2(sm2 * std::cos(p1), 2.0 * sm1 * std::sin(p1)); },
                   "t2 = sqrt(m2/m1) (1 - t1^2) / (4 t1)"});
    break;
  case PresetTag::rose:
    out.push_back({t, 1, 0, K::line_phi1, 0.0, {}, "phi1 = 0"});
    out.push_back({t, 2, 0, K::line_phi2, 0.0, {}, "phi2 = 0"});
    out.push_back({t, 3, 0, K::curve, 0.0, half_tan(sm2, sm1), "t2 = -sqrt(m2/m1) t1"});
    break;
  }
  return out;
}

struct CatalogRoot {
  double kappa;
  int branch;
};

/**
 * \brief Roots in (0, kappa_max] with their branch labels.
 *
 * Line branches are exact arithmetic progressions; curve branches are found
 * by bisecting sign changes of the branch residual along the flow.
 */
inline std::vector<CatalogRoot> catalog_roots(PresetTag t, const TwoEdgeGraph &g, double kappa_max) {
  const double w1 = g.omega1(), w2 = g.omega2(), pi = numerics::pi;
  std::vector<CatalogRoot> out;
  auto progression = [&](double step, int branch) {
    for (long n = 1; n * step <= kappa_max; ++n) out.push_back({static_cast<double>(n) * step, branch});
  };
  auto bisect_branch = [&](int branch) {
    auto r = [&](double k) { return branch_residual(t, branch, g, w1 * k, w2 * k); };
    const double h = 0.1 * pi / (w1 + w2);
    const double k0 = 1e-3 * h;
    const auto n = static_cast<long>(std::ceil((kappa_max - k0) / h));
    double prev_k = k0, prev_r = r(k0);
    for (long i = 1; i <= n; ++i) {
      const double k = std::min(kappa_max, k0 + static_cast<double>(i) * h);
      const double rk = r(k);
      if ((rk < 0.0) != (prev_r < 0.0)) {
        const auto br = numerics::bisect(r, prev_k, k, prev_r, 0.0, 400);
        out.push_back({br.x, branch});
      }
      prev_k = k;
      prev_r = rk;
    }
  };
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann:
    progression(pi / w1, 1);
    progression(pi / w2, 2);
    break;
  case PresetTag::segment: bisect_branch(1); break;
  case PresetTag::ring:
    bisect_branch(1);
    bisect_branch(2);
    break;
  case PresetTag::pendant:
    progression(2.0 * pi / w2, 1);
    bisect_branch(2);
    break;
  case PresetTag::rose:
    progression(2.0 * pi / w1, 1);
    progression(2.0 * pi / w2, 2);
    bisect_branch(3);
    break;
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.kappa < b.kappa || (a.kappa == b.kappa && a.branch < b.branch);
  });
  return out;
}

namespace detail {

// coefficients (c, d) of sin(k (x + a)) and cos(k (x + a))
inline std::pair<cplx, cplx> sin_wave(double k, double a) {
  const cplx e = std::polar(1.0, k * a);
  return {e / cplx(0.0, 2.0), -std::conj(e) / cplx(0.0, 2.0)};
}

inline std::pair<cplx, cplx> cos_wave(double k, double a) {
  const cplx e = std::polar(1.0, k * a);
  return {0.5 * e, 0.5 * std::conj(e)};
}

} // namespace detail

/** \brief Closed-form eigenfunction of the branch, normalised and phase fixed. */
inline EigenSolution closed_form_eigenfunction(PresetTag t, int branch, const TwoEdgeGraph &g, double kappa) {
  const double p1 = g.omega1() * kappa, p2 = g.omega2() * kappa;
  const double res = branch_residual(t, branch, g, p1, p2);
  if (std::abs(res) > 1e-8) throw OffBranch("branch residual " + std::to_string(res));
  const double k1 = kappa * std::sqrt(g.m1()), k2 = kappa * std::sqrt(g.m2());
  const double l1 = g.l1(), l2 = g.l2();
  Vec4 c = Vec4::Zero();
  auto put = [&](int edge, std::pair<cplx, cplx> w, cplx scale) {
    const int o = edge == 1 ? 0 : 2;
    c[o] += scale * w.first;
    c[o + 1] += scale * w.second;
  };
  using detail::cos_wave;
  using detail::sin_wave;
  switch (t) {
  case PresetTag::dirichlet:
    if (branch == 1) put(1, sin_wave(k1, 0.0), 1.0);
    else put(2, sin_wave(k2, 0.0), 1.0);
    break;
  case PresetTag::neumann:
    if (branch == 1) put(1, cos_wave(k1, 0.0), 1.0);
    else put(2, cos_wave(k2, 0.0), 1.0);
    break;
  case PresetTag::segment:
    put(1, sin_wave(k1, l1), 1.0 / std::sin(p1));
    put(2, sin_wave(k2, -l2), -1.0 / std::sin(p2));
    break;
  case PresetTag::ring:
    // cos(phi/2)/sin(phi) = 1/(2 sin(phi/2)), sin(phi/2)/sin(phi) = 1/(2 cos(phi/2))
    if (branch == 1) {
      put(1, sin_wave(k1, 0.5 * l1), 0.5 / std::sin(0.5 * p1));
      put(2, sin_wave(k2, -0.5 * l2), -0.5 / std::sin(0.5 * p2));
    } else {
      put(1, cos_wave(k1, 0.5 * l1), 0.5 / std::cos(0.5 * p1));
      put(2, cos_wave(k2, -0.5 * l2), 0.5 / std::cos(0.5 * p2));
    }
    break;
  case PresetTag::pendant:
    if (branch == 1) {
      put(2, sin_wave(k2, 0.0), 1.0);
    } else {
      put(1, sin_wave(k1, l1), 1.0 / std::sin(p1));
      put(2, sin_wave(k2, 0.0), 1.0 / std::sin(p2));
      put(2, sin_wave(k2, -l2), -1.0 / std::sin(p2));
    }
    break;
  case PresetTag::rose:
    if (branch == 1) {
      put(1, sin_wave(k1, 0.0), 1.0);
    } else if (branch == 2) {
      put(2, sin_wave(k2, 0.0), 1.0);
    } else {
      put(1, cos_wave(k1, 0.5 * l1), 1.0 / std::cos(0.5 * p1));
      put(2, cos_wave(k2, -0.5 * l2), 1.0 / std::cos(0.5 * p2));
    }
    break;
  }
  const IntervalGram m = plane_wave_gram(g, kappa);
  const double nrm = std::sqrt(c.dot((m.i1 + m.i2) * c).real());
  SpectralRoot root;
  root.kappa = kappa;
  return detail::make_solution(g, root, fix_phase(c / nrm), m, false);
}

/**
 * \brief Leading term of the leaning on branch j as a function of phi1.
 *
 * From the interval norms of the closed-form eigenfunctions, dropping the
 * O(1/kappa) sinc terms and eliminating phi2 with the branch equation.
 */
inline double leaning_asymptotic(PresetTag t, int j, const TwoEdgeGraph &g, double phi1) {
  const double m1 = g.m1(), m2 = g.m2(), l1 = g.l1(), l2 = g.l2();
  const double c = std::cos(phi1), s = std::sin(phi1);
  auto ratio = [](double a, double b) { return (a - b) / (a + b); };
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann: return j == 1 ? -1.0 : 1.0;
  case PresetTag::segment: return ratio((m1 * s * s + m2 * c * c) * l2, m1 * l1);
  case PresetTag::ring: {
    const double a = j == 1 ? m1 * (1.0 - c) + m2 * (1.0 + c) : m1 * (1.0 + c) + m2 * (1.0 - c);
    return ratio(a * l2, 2.0 * m1 * l1);
  }
  case PresetTag::pendant: {
    if (j == 1) return 1.0;
    const double b = (4.0 * m1 + m2) - (4.0 * m1 - m2) * std::cos(2.0 * phi1);
    return ratio(b * l2, 8.0 * m1 * l1);
  }
  case PresetTag::rose: {
    if (j == 1) return -1.0;
    if (j == 2) return 1.0;
    const double a = m1 * (1.0 + c) + m2 * (1.0 - c);
    return ratio(a * l2, 2.0 * m1 * l1);
  }
  }
  return 0.0;
}

/**
 * \brief Band of accumulation points of the leaning on the dense branches.
 *
 * Localised branches (leaning exactly +-1) are excluded except for the
 * uncoupled presets, whose band is [-1, 1].
 */
inline std::pair<double, double> leaning_extremes(PresetTag t, const TwoEdgeGraph &g) {
  const double m1 = g.m1(), m2 = g.m2(), l1 = g.l1(), l2 = g.l2();
  auto ratio = [](double a, double b) { return (a - b) / (a + b); };
  const double equal_mass = ratio(l2, l1);
  double other = 0.0;
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann: return {-1.0, 1.0};
  case PresetTag::segment:
  case PresetTag::ring:
  case PresetTag::rose: other = ratio(m2 * l2, m1 * l1); break;
  case PresetTag::pendant: other = ratio(m2 * l2, 4.0 * m1 * l1); break;
  }
  return {std::min(equal_mass, other), std::max(equal_mass, other)};
}

/** \brief (omega2 - omega1) / (omega2 + omega1). */
inline double cesaro_closed_form(const TwoEdgeGraph &g) {
  return (g.omega2() - g.omega1()) / (g.omega2() + g.omega1());
}

struct BranchDensity {
  int branch;
  std::function<double(double)> density;
};

struct Atom {
  int branch;
  double location;
  double mass;
};

/** \brief phi1-marginal of the limiting distribution of torus points at the roots. */
struct BGDensity {
  PresetTag preset;
  std::vector<BranchDensity> branches;
  std::vector<Atom> atoms;

  double operator()(double phi1) const {
    double s = 0.0;
    for (const auto &b : branches) s += b.density(phi1);
    return s;
  }
  double atom_mass() const {
    double s = 0.0;
    for (const auto &a : atoms) s += a.mass;
    return s;
  }
};

inline BGDensity bg_density(PresetTag t, const TwoEdgeGraph &g) {
  const double w1 = g.omega1(), w2 = g.omega2(), m1 = g.m1(), m2 = g.m2();
  const double sq = std::sqrt(m1 * m2), pi = numerics::pi;
  const double n2 = 1.0 / (2.0 * pi * (w1 + w2)), n4 = 0.5 * n2;
  BGDensity d{t, {}, {}};
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann:
    d.atoms.push_back({1, 0.0, 0.5 * w1 / (w1 + w2)});
    d.atoms.push_back({1, pi, 0.5 * w1 / (w1 + w2)});
    d.branches.push_back({2, [=](double) { return w2 * n2; }});
    break;
  case PresetTag::segment:
    d.branches.push_back({1, [=](double p) {
                            const double s = std::sin(p), c = std::cos(p);
                            return n2 * (w1 * sq / (m1 * s * s + m2 * c * c) + w2);
                          }});
    break;
  case PresetTag::ring:
    d.branches.push_back(
        {1, [=](double p) { return n4 * (w1 * 2.0 * sq / ((m2 - m1) * std::cos(p) + m1 + m2) + w2); }});
    d.branches.push_back(
        {2, [=](double p) { return n4 * (w1 * 2.0 * sq / ((m1 - m2) * std::cos(p) + m1 + m2) + w2); }});
    break;
  case PresetTag::pendant:
    d.branches.push_back({1, [=](double) { return n4 * w2; }});
    d.branches.push_back({2, [=](double p) {
                            return n4 * (w1 * 8.0 * sq / ((4.0 * m1 + m2) - (4.0 * m1 - m2) * std::cos(2.0 * p)) + w2);
                          }});
    break;
  case PresetTag::rose:
    d.atoms.push_back({1, 0.0, 0.5 * w1 / (w1 + w2)});
    d.branches.push_back({2, [=](double) { return n4 * w2; }});
    d.branches.push_back(
        {3, [=](double p) { return n4 * (w1 * 2.0 * sq / ((m1 - m2) * std::cos(p) + m1 + m2) + w2); }});
    break;
  }
  return d;
}

/** \brief phi2 on the first sheet of a curve branch. */
inline double branch_phi2(PresetTag t, int j, const TwoEdgeGraph &g, double phi1) {
  const double sm1 = std::sqrt(g.m1()), sm2 = std::sqrt(g.m2());
  auto half_tan = [phi1](double a, double b) {
    return 2.0 * std::atan2(-a * std::sin(0.5 * phi1), b * std::cos(0.5 * phi1));
  };
  switch (t) {
  case PresetTag::segment: return std::atan2(-sm1 * std::sin(phi1), sm2 * std::cos(phi1));
  case PresetTag::ring: return j == 1 ? half_tan(sm1, sm2) : half_tan(sm2, sm1);
  case PresetTag::pendant: return 2.0 * std::atan2(sm2 * std::cos(phi1), 2.0 * sm1 * std::sin(phi1));
  case PresetTag::rose: return half_tan(sm2, sm1);
  default: return 0.0;
  }
}

/**
 * \brief Cosine of the angle between omega and the normal of branch j at phi1.
 *
 * Rational forms are multiplied through by their denominators so that they
 * stay finite where a single sine vanishes.
 */
inline double flow_tangency_cos(PresetTag t, int j, const TwoEdgeGraph &g, double phi1) {
  const double w1 = g.omega1(), w2 = g.omega2(), wn = g.omega_norm();
  const double m1 = g.m1(), m2 = g.m2(), sm1 = std::sqrt(m1), sm2 = std::sqrt(m2);
  auto ring_like = [&](double a1, double a2, double phi2) {
    const double u1 = 1.0 + std::cos(phi1), u2 = 1.0 + std::cos(phi2);
    const double den = std::hypot(a1 * u2, a2 * u1);
    if (den < 1e-300) throw SingularPoint("1 + cos phi1 = 1 + cos phi2 = 0");
    return (w1 * a1 * u2 + w2 * a2 * u1) / (wn * den);
  };
  switch (t) {
  case PresetTag::dirichlet:
  case PresetTag::neumann: return (j == 1 ? w1 : w2) / wn;
  case PresetTag::segment: {
    const double phi2 = branch_phi2(t, 1, g, phi1);
    const double s1 = std::sin(phi1), s2 = std::sin(phi2);
    const double a = s1 * s1, b = s2 * s2;
    const double den = std::sqrt(m2 * b * b + m1 * a * a);
    if (den < 1e-300) throw SingularPoint("sin phi1 = sin phi2 = 0");
    return -(w1 * sm2 * b + w2 * sm1 * a) / (wn * den);
  }
  case PresetTag::ring: return j == 1 ? ring_like(sm1, sm2, branch_phi2(t, 1, g, phi1))
                                      : ring_like(sm2, sm1, branch_phi2(t, 2, g, phi1));
  case PresetTag::pendant: {
    if (j == 1) return w2 / wn;
    const double s = std::sin(phi1), c = std::cos(phi1);
    const double b = 4.0 * m1 * s * s + m2 * c * c;
    return (4.0 * w1 * sm1 * sm2 + w2 * b) / (wn * std::sqrt(16.0 * m1 * m2 + b * b));
  }
  case PresetTag::rose:
    if (j == 1) return w1 / wn;
    if (j == 2) return w2 / wn;
    return ring_like(sm2, sm1, branch_phi2(t, 3, g, phi1));
  }
  return 0.0;
}

} // namespace twoedge

#endif // TWOEDGE_CATALOG_HPP
