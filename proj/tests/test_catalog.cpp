#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace twoedge;

namespace {

double l2_overlap(const EigenSolution &a, const EigenSolution &b) {
  const IntervalGram m = plane_wave_gram(a.graph, a.kappa());
  return std::abs(a.coeffs.dot((m.i1 + m.i2) * b.coeffs));
}

std::vector<double> kappas(const std::vector<CatalogRoot> &r) {
  std::vector<double> k;
  for (const auto &c : r) k.push_back(c.kappa);
  return k;
}

} // namespace

TEST(Preset, RanksAndNames) {
  const std::array<int, 6> ranks = {0, 4, 1, 2, 1, 1};
  for (std::size_t i = 0; i < kAllPresets.size(); ++i) {
    const auto t = kAllPresets[i];
    EXPECT_EQ(make_preset(t).bc.rank(), ranks[i]) << preset_name(t);
    EXPECT_EQ(preset_from_name(preset_name(t)), t);
  }
  EXPECT_FALSE(preset_from_name("star").has_value());
}

// Symbolic test functions satisfying each preset's junction rules by construction.
TEST(Preset, DomainOfNamedConditions) {
  const TwoEdgeGraph g(16.0, 1.0, oracle::e, oracle::pi);
  auto trace = [&](Vec4 v, Vec4 d) { return make_trace(g, v, d); };
  // segment: psi(-l1) = psi(l2) = 0, psi(0-) = psi(0+), psi1'(0)/m1 = psi2'(0)/m2
  EXPECT_TRUE(domain_check(make_preset(PresetTag::segment).bc, trace({0, 2, 2, 0}, {5, 16 * 0.3, 0.3, -7}), 1e-12));
  EXPECT_FALSE(domain_check(make_preset(PresetTag::segment).bc, trace({0, 2, 2, 0}, {5, 0.3, 0.3, -7}), 1e-6));
  // ring: continuity at 0 and at -l1 ~ l2, flux balance at both
  EXPECT_TRUE(domain_check(make_preset(PresetTag::ring).bc, trace({1, 2, 2, 1}, {16 * 0.5, 16 * 0.2, 0.2, 0.5}),
                           1e-12));
  // pendant: Dirichlet at -l1, Neumann-Kirchhoff star at 0+, 0-, l2
  EXPECT_TRUE(domain_check(make_preset(PresetTag::pendant).bc,
                           trace({0, 3, 3, 3}, {4, 16 * 0.25, 0.1, -0.15}), 1e-12));
  // rose: all four ends equal, total outward flux zero
  EXPECT_TRUE(domain_check(make_preset(PresetTag::rose).bc, trace({1, 1, 1, 1}, {16 * 0.3, 16 * 0.1, 0.2, 0.4}),
                           1e-12));
}

TEST(FP, SegmentEqualMass) {
  const TwoEdgeGraph g(2.5, 2.5, 1.0, 2.0);
  for (double a : {0.1, 1.3, 2.9})
    for (double b : {0.2, 4.4})
      EXPECT_NEAR(f_P(PresetTag::segment, g, a, b), std::sqrt(2.5) * std::sin(a + b), 1e-12);
}

TEST(FP, RingVanishesAtOrigin) { EXPECT_EQ(f_P(PresetTag::ring, oracle::reference_graph(), 0.0, 0.0), 0.0); }

TEST(FP, RoseEqualMass) {
  const TwoEdgeGraph g(3.0, 3.0, 1.0, 1.0);
  for (double a : {0.1, 1.3, 2.9})
    for (double b : {0.2, 4.4})
      EXPECT_NEAR(f_P(PresetTag::rose, g, a, b), std::sqrt(3.0) * (std::sin(a) + std::sin(b) - std::sin(a + b)),
                  1e-12);
}

TEST(FP, RingEqualMassFactorization) {
  const TwoEdgeGraph g(2.0, 2.0, 1.0, 1.0);
  for (double a : {0.1, 1.3, 2.9})
    for (double b : {0.2, 4.4})
      EXPECT_NEAR(f_P(PresetTag::ring, g, a, b), 4.0 * (1.0 - std::cos(a + b)), 1e-12);
}

TEST(FP, ProductOfBranchResiduals) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2.0 * oracle::pi);
  for (const TwoEdgeGraph &g : {oracle::reference_graph(), TwoEdgeGraph(2.0, 5.0, 1.3, 0.7)}) {
    for (auto t : kAllPresets) {
      // f_P / prod(residuals) is one constant over the torus
      double c0 = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng);
        double prod = 1.0;
        for (int j = 1; j <= branch_count(t); ++j) prod *= branch_residual(t, j, g, a, b);
        if (std::abs(prod) < 1e-3) continue;
        const double c = f_P(t, g, a, b) / prod;
        if (c0 == 0.0) c0 = c;
        EXPECT_NEAR(c, c0, 1e-10 * std::abs(c0)) << preset_name(t);
      }
      EXPECT_NE(c0, 0.0);
    }
  }
}

TEST(ZeroSet, RingBranchOneSlope) {
  const auto br = zero_set_branches(PresetTag::ring, 16.0, 1.0);
  ASSERT_EQ(br.size(), 2u);
  EXPECT_EQ(br[0].index, 1);
  for (double t : {0.3, 1.1, 2.5, 4.0, 5.9}) {
    const auto [p1, p2] = br[0].point(t);
    EXPECT_NEAR(std::tan(0.5 * p2), -4.0 * std::tan(0.5 * p1), 1e-10 * (1.0 + std::abs(std::tan(0.5 * p1))));
  }
}

TEST(ZeroSet, RingEqualMassIsDegenerate) {
  EXPECT_THROW(zero_set_branches(PresetTag::ring, 2.0, 2.0), DegenerateSplit);
}

TEST(ZeroSet, EveryBranchLiesOnTheZeroSet) {
  for (const TwoEdgeGraph &g : {oracle::reference_graph(), TwoEdgeGraph(1.0, 7.0, 2.0, 0.3)}) {
    for (auto t : kAllPresets) {
      for (const auto &b : zero_set_branches(t, g.m1(), g.m2())) {
        for (int i = 0; i < 1000; ++i) {
          const auto [p1, p2] = b.point(2.0 * oracle::pi * i / 1000.0);
          EXPECT_LT(std::abs(f_P(t, g, p1, p2)), 1e-10) << preset_name(t) << " branch " << b.index;
          EXPECT_LT(std::abs(branch_residual(t, b.index, g, p1, p2)), 1e-10);
        }
      }
    }
  }
}

TEST(CatalogRoots, PendantFirstBranchIsProgression) {
  const auto g = oracle::reference_graph();
  const double step = 2.0 * oracle::pi / g.omega2();
  int n = 0;
  for (const auto &r : catalog_roots(PresetTag::pendant, g, 30.0)) {
    if (r.branch != 1) continue;
    ++n;
    EXPECT_NEAR(r.kappa, n * step, 1e-12 * n * step);
  }
  EXPECT_EQ(n, static_cast<int>(30.0 / step));
}

TEST(CatalogRoots, SpectralFunctionVanishesThere) {
  const auto g = oracle::reference_graph();
  for (auto t : kAllPresets) {
    const auto bc = make_preset(t).bc;
    const auto roots = catalog_roots(t, g, kappa_for_count(g, 200));
    ASSERT_GE(roots.size(), 200u);
    for (std::size_t i = 0; i < 200; ++i) {
      const Mat4 a = assemble_spectral_matrix(g, bc, roots[i].kappa).a;
      const auto sv = singular_values(a);
      EXPECT_LT(sv[3], 1e-9 * sv[0]) << preset_name(t) << " root " << i;
    }
  }
}

TEST(CatalogRoots, AgreeWithGenericScan) {
  const auto g = oracle::reference_graph();
  for (auto t : kAllPresets) {
    const auto scan = scan_first_roots(g, make_preset(t).bc, 100);
    const auto cat = catalog_roots(t, g, scan.kappa_max * (1.0 + 1e-12));
    ASSERT_EQ(cat.size(), scan.roots.size()) << preset_name(t);
    for (std::size_t i = 0; i < cat.size(); ++i)
      EXPECT_NEAR(scan.roots[i].kappa, cat[i].kappa, 1e-9 * cat[i].kappa) << preset_name(t);
  }
}

TEST(CatalogRoots, SwapSymmetryExceptPendant) {
  const auto g = oracle::reference_graph();
  const double K = 15.0;
  for (auto t : kAllPresets) {
    const auto a = kappas(catalog_roots(t, g, K));
    const auto b = kappas(catalog_roots(t, g.swapped(), K));
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = std::abs(a[i] - b[i]) < 1e-9 * a[i];
    if (t == PresetTag::pendant)
      EXPECT_FALSE(same);
    else
      EXPECT_TRUE(same) << preset_name(t);
  }
}

TEST(ClosedForm, PendantLocalisedBranch) {
  const auto g = oracle::reference_graph();
  const double k = 2.0 * oracle::pi / g.omega2() * 3;
  const auto s = closed_form_eigenfunction(PresetTag::pendant, 1, g, k);
  EXPECT_NEAR(leaning(s), 1.0, 1e-12);
  const double amp = std::abs(evaluate_eigenfunction(s, 0.3 * g.l2())) / std::abs(std::sin(k * std::sqrt(g.m2()) * 0.3 * g.l2()));
  for (double x : {0.1, 0.5, 0.9})
    EXPECT_NEAR(std::abs(evaluate_eigenfunction(s, x * g.l2())),
                amp * std::abs(std::sin(k * std::sqrt(g.m2()) * x * g.l2())), 1e-12);
  EXPECT_NEAR(std::abs(evaluate_eigenfunction(s, -0.5 * g.l1())), 0.0, 1e-12);
}

TEST(ClosedForm, RoseLocalisedBranches) {
  const auto g = oracle::reference_graph();
  EXPECT_NEAR(leaning(closed_form_eigenfunction(PresetTag::rose, 1, g, 2.0 * oracle::pi / g.omega1())), -1.0, 1e-12);
  EXPECT_NEAR(leaning(closed_form_eigenfunction(PresetTag::rose, 2, g, 4.0 * oracle::pi / g.omega2())), 1.0, 1e-12);
}

TEST(ClosedForm, OffBranchThrows) {
  EXPECT_THROW(closed_form_eigenfunction(PresetTag::segment, 1, oracle::reference_graph(), 0.5), OffBranch);
}

TEST(ClosedForm, MatchesEngineUpToPhase) {
  const auto g = oracle::reference_graph();
  for (auto t : kAllPresets) {
    const auto bc = make_preset(t).bc;
    const auto cat = catalog_roots(t, g, kappa_for_count(g, 100));
    for (std::size_t i = 0; i < 100; ++i) {
      const auto &c = cat[i];
      const auto closed = closed_form_eigenfunction(t, c.branch, g, c.kappa);
      SpectralRoot r;
      r.kappa = c.kappa;
      const auto engine = build_eigensolutions(g, bc, r);
      ASSERT_EQ(engine.size(), 1u) << preset_name(t) << " root " << i;
      EXPECT_GT(l2_overlap(closed, engine[0]), 1.0 - 1e-8) << preset_name(t) << " root " << i;
    }
  }
}

TEST(Leaning, SegmentAsymptoticSpecialPoints) {
  const auto g = oracle::reference_graph();
  const double l1 = g.l1(), l2 = g.l2(), m1 = g.m1(), m2 = g.m2();
  EXPECT_NEAR(leaning_asymptotic(PresetTag::segment, 1, g, 0.5 * oracle::pi), (l2 - l1) / (l2 + l1), 1e-14);
  EXPECT_NEAR(leaning_asymptotic(PresetTag::segment, 1, g, 0.0), (m2 * l2 - m1 * l1) / (m2 * l2 + m1 * l1), 1e-14);
  EXPECT_NEAR(leaning_asymptotic(PresetTag::segment, 1, g, 0.5 * oracle::pi), oracle::frozen::segment_limsup, 1e-12);
  EXPECT_NEAR(leaning_asymptotic(PresetTag::segment, 1, g, 0.0), oracle::frozen::segment_liminf, 1e-12);
}

// The asymptotic leaning is the kappa -> infinity limit of the closed-form leaning.
TEST(Leaning, AsymptoticTracksExactLeaning) {
  const auto g = oracle::reference_graph();
  for (auto t : {PresetTag::segment, PresetTag::ring, PresetTag::pendant, PresetTag::rose}) {
    const auto cat = catalog_roots(t, g, 400.0);
    double worst = 0.0;
    for (const auto &c : cat) {
      if (c.kappa < 300.0) continue;
      const auto s = closed_form_eigenfunction(t, c.branch, g, c.kappa);
      const double phi1 = numerics::wrap_angle(g.omega1() * c.kappa);
      worst = std::max(worst, c.kappa * std::abs(leaning(s) - leaning_asymptotic(t, c.branch, g, phi1)));
    }
    EXPECT_LT(worst, 5.0) << preset_name(t) << ": kappa |L - L_asym| should stay bounded";
  }
}

TEST(Leaning, ExtremesClosedForms) {
  const auto g = oracle::reference_graph();
  const auto seg = leaning_extremes(PresetTag::segment, g);
  EXPECT_NEAR(seg.first, oracle::frozen::segment_liminf, 1e-12);
  EXPECT_NEAR(seg.second, oracle::frozen::segment_limsup, 1e-12);
  EXPECT_EQ(leaning_extremes(PresetTag::dirichlet, g), std::make_pair(-1.0, 1.0));
  EXPECT_EQ(leaning_extremes(PresetTag::neumann, g), std::make_pair(-1.0, 1.0));
  EXPECT_NEAR(leaning_extremes(PresetTag::pendant, g).first, oracle::frozen::pendant_liminf, 1e-12);
  // m2 > m1: the band keeps its orientation (lower end first)
  const TwoEdgeGraph h(1.0, 16.0, oracle::pi, oracle::e);
  const auto sw = leaning_extremes(PresetTag::segment, h);
  EXPECT_LT(sw.first, sw.second);
}

TEST(Leaning, PendantBandFromDerivedFormula) {
  const auto g = oracle::reference_graph();
  double lo = 1.0, hi = -1.0;
  for (int i = 0; i < 100000; ++i) {
    const double l = leaning_asymptotic(PresetTag::pendant, 2, g, 2.0 * oracle::pi * i / 100000.0);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  const auto ext = leaning_extremes(PresetTag::pendant, g);
  EXPECT_NEAR(lo, ext.first, 1e-8);
  EXPECT_NEAR(hi, ext.second, 1e-8);
}

TEST(Cesaro, ClosedForm) {
  EXPECT_NEAR(cesaro_closed_form(oracle::reference_graph()), oracle::frozen::cesaro, 1e-14);
  EXPECT_NEAR(cesaro_closed_form(oracle::reference_graph()), -0.55164, 1e-4);
  EXPECT_EQ(cesaro_closed_form(TwoEdgeGraph(4, 1, 1, 2)), 0.0);
  EXPECT_EQ(cesaro_closed_form(TwoEdgeGraph(3, 3, 2, 2)), 0.0);
}

TEST(BGDensity, SegmentFormula) {
  const auto g = oracle::reference_graph();
  const auto d = bg_density(PresetTag::segment, g);
  const double w1 = g.omega1(), w2 = g.omega2();
  for (double p : {0.0, 0.7, 2.0, 4.5}) {
    const double s = std::sin(p), c = std::cos(p);
    const double want = (w1 * std::sqrt(16.0) / (16.0 * s * s + c * c) + w2) / (2.0 * oracle::pi * (w1 + w2));
    EXPECT_NEAR(d(p), want, 1e-14);
  }
}

TEST(BGDensity, UnitMassAndNonNegative) {
  for (const TwoEdgeGraph &g : {oracle::reference_graph(), TwoEdgeGraph(1.0, 7.0, 2.0, 0.3)}) {
    for (auto t : kAllPresets) {
      const auto d = bg_density(t, g);
      double mass = d.atom_mass();
      for (const auto &b : d.branches)
        mass += oracle::integrate(b.density, 0.0, 2.0 * oracle::pi, 16);
      EXPECT_NEAR(mass, 1.0, 1e-10) << preset_name(t);
      for (int i = 0; i < 1000; ++i) EXPECT_GE(d(2.0 * oracle::pi * i / 1000.0), 0.0);
    }
  }
  EXPECT_EQ(bg_density(PresetTag::rose, oracle::reference_graph()).atoms.size(), 1u);
  EXPECT_EQ(bg_density(PresetTag::rose, oracle::reference_graph()).atoms[0].location, 0.0);
}

TEST(BGDensity, EqualMassSegmentIsUniform) {
  const TwoEdgeGraph g(2.0, 2.0, 1.0, 3.0);
  const auto d = bg_density(PresetTag::segment, g);
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(d(0.13 * i), 1.0 / (2.0 * oracle::pi), 1e-14);
}

TEST(FlowTangency, PendantLineBranch) {
  const auto g = oracle::reference_graph();
  for (double p : {0.1, 2.0, 5.0})
    EXPECT_NEAR(flow_tangency_cos(PresetTag::pendant, 1, g, p), g.omega2() / g.omega_norm(), 1e-15);
}

TEST(FlowTangency, SignsAndNeverTangent) {
  for (const TwoEdgeGraph &g : {oracle::reference_graph(), TwoEdgeGraph(1.0, 7.0, 2.0, 0.3)}) {
    for (auto t : kAllPresets) {
      for (int j = 1; j <= branch_count(t); ++j) {
        for (int i = 0; i < 1000; ++i) {
          const double p = 2.0 * oracle::pi * (i + 0.5) / 1000.0;
          const double c = flow_tangency_cos(t, j, g, p);
          EXPECT_GT(std::abs(c), 1e-3) << preset_name(t) << " branch " << j;
          EXPECT_LE(std::abs(c), 1.0 + 1e-12);
          if (t == PresetTag::segment) {
            EXPECT_LT(c, 0.0);
          }
          if (t == PresetTag::ring) {
            EXPECT_GT(c, 0.0);
          }
        }
      }
    }
  }
}

// Direct geometric cosine from a finite-difference gradient of the residual.
TEST(FlowTangency, MatchesNumericalGradient) {
  const auto g = oracle::reference_graph();
  const double w1 = g.omega1(), w2 = g.omega2();
  for (auto t : {PresetTag::segment, PresetTag::ring, PresetTag::pendant, PresetTag::rose}) {
    const int j = t == PresetTag::rose ? 3 : t == PresetTag::pendant ? 2 : 1;
    for (double p : {0.4, 1.2, 2.2, 3.9, 5.5}) {
      const double q = branch_phi2(t, j, g, p);
      const double h = 1e-6;
      const double gx = (branch_residual(t, j, g, p + h, q) - branch_residual(t, j, g, p - h, q)) / (2 * h);
      const double gy = (branch_residual(t, j, g, p, q + h) - branch_residual(t, j, g, p, q - h)) / (2 * h);
      const double want = (w1 * gx + w2 * gy) / (std::hypot(w1, w2) * std::hypot(gx, gy));
      EXPECT_NEAR(std::abs(flow_tangency_cos(t, j, g, p)), std::abs(want), 1e-6) << preset_name(t) << " at " << p;
    }
  }
}
