#include <gtest/gtest.h>

#include <cmath>

#include "octobundle/projections.hpp"
#include "oracles.hpp"

using namespace octo;
using oracle::odiff;
using oracle::random_octonion;
using oracle::random_unit;

namespace {

const StructureConstants& sc() { return StructureConstants::standard(); }

TEST(Phi0, Components) {
  ThreeForm f = phi0();
  EXPECT_EQ(f.get(0, 1, 2), 1.0);   // (1,2,3)
  EXPECT_EQ(f.get(1, 4, 6), -1.0);  // (2,5,7)
  EXPECT_EQ(f.get(0, 1, 3), 0.0);   // (1,2,4) absent
  EXPECT_EQ(f.get(1, 0, 2), -1.0);  // sign of a swap
  EXPECT_EQ(f.get(1, 1, 2), 0.0);   // repeated index
  int nonzero = 0;
  for (double c : f.comp) nonzero += (c != 0.0);
  EXPECT_EQ(nonzero, 7);
}

TEST(HodgeStar, MatchesLeviCivitaOracle) {
  FourForm lib = hodge_star3(phi0(), Tensor2::identity());
  FourForm ref = oracle::hodge_star3_bruteforce(phi0());
  for (size_t i = 0; i < 35; ++i) EXPECT_EQ(lib.comp[i], ref.comp[i]);
  EXPECT_EQ(lib.get(3, 4, 5, 6), 1.0);  // (4,5,6,7) component
  // residual of the phi-phi contraction identity is exactly zero for phi0
  EXPECT_EQ(phiphi_residual(sc()), 0.0);
}

TEST(HodgeStar, StarTwiceAndLinearity) {
  // 3-form -> 4-form -> 3-form returns phi0 with + sign
  FourForm psi = hodge_star3(phi0(), Tensor2::identity());
  ThreeForm back;
  const auto& t = index_tables();
  // *psi via the same complement trick: (*psi)_{abc} = sign * psi_{complement}
  for (int slot = 0; slot < 35; ++slot) {
    auto [a, b, c, d] = t.quad_of_slot[static_cast<size_t>(slot)];
    const auto& comp = t.quad_complement[static_cast<size_t>(slot)];
    // complement triple slot holds *psi at (comp); sign is the same 7-perm sign
    back.add(comp[0], comp[1], comp[2],
             t.quad_complement_sign[static_cast<size_t>(slot)] *
                 psi.comp[static_cast<size_t>(slot)]);
  }
  EXPECT_LT(max_abs(back - phi0()), 1e-15);

  FourForm doubled = hodge_star3(2.0 * phi0(), Tensor2::identity());
  for (size_t i = 0; i < 35; ++i) EXPECT_EQ(doubled.comp[i], 2.0 * psi.comp[i]);

  Tensor2 bad{};  // zero metric
  EXPECT_THROW(hodge_star3(phi0(), bad), std::domain_error);
}

TEST(MetricFromPhi, EuclideanForPhi0) {
  MetricFromPhi m = metric_from_phi(phi0());
  EXPECT_TRUE(m.positive);
  EXPECT_LT(max_abs(m.g - Tensor2::identity()), 1e-14);
  EXPECT_NEAR(m.volume, 1.0, 1e-14);
}

TEST(MetricFromPhi, NegativePhiFlagged) {
  MetricFromPhi m = metric_from_phi(-phi0());
  EXPECT_FALSE(m.positive);
}

TEST(MetricFromPhi, SigmaPreservesMetric) {
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    Octonion v = random_unit(rng);
    MetricFromPhi m = metric_from_phi(sigma(v, phi0()));
    ASSERT_TRUE(m.positive);
    EXPECT_LT(max_abs(m.g - Tensor2::identity()), 1e-10);
  }
}

TEST(Sigma, FixedPoints) {
  EXPECT_LT(max_abs(sigma(Octonion::one(), phi0()) - phi0()), 1e-15);
  EXPECT_LT(max_abs(sigma(Octonion::real(-1.0), phi0()) - phi0()), 1e-15);
  // scale invariance
  Rng rng(22);
  Octonion a = random_octonion(rng);
  EXPECT_LT(max_abs(sigma(a, phi0()) - sigma(a * 3.7, phi0())), 1e-12);
  EXPECT_THROW(sigma(Octonion{}, phi0()), std::domain_error);
}

TEST(Sigma, CubeOfSixthRootFixesPhi) {
  Vec7 dir = basis_vec(0);
  Octonion v{0.5, dir * (std::sqrt(3.0) / 2.0)};
  Octonion v3 = pow_int(v, 3, sc());
  EXPECT_LT(max_abs(sigma(v3, phi0()) - phi0()), 1e-12);
}

TEST(Sigma, CompositionLaw) {
  // sigma_U(sigma_V phi) = sigma_{UV}(phi), 1000 random unit pairs
  Rng rng(23);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    Octonion u = random_unit(rng), v = random_unit(rng);
    ThreeForm lhs = sigma(u, sigma(v, phi0()));
    ThreeForm rhs = sigma(mul(u, v, sc()), phi0());
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Sigma, InverseComposition) {
  Rng rng(24);
  for (int k = 0; k < 100; ++k) {
    Octonion v = random_unit(rng);
    EXPECT_LT(max_abs(sigma(inverse(v, sc()), sigma(v, phi0())) - phi0()), 1e-11);
  }
}

TEST(Sigma, AdPullback) {
  // sigma_{V^3}(phi)(a,b,c) = phi(Ad_{V^-1} ea, Ad_{V^-1} eb, Ad_{V^-1} ec)
  Rng rng(25);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    Octonion v = random_unit(rng);
    ThreeForm lhs = sigma(pow_int(v, 3, sc()), phi0());
    Tensor2 M = ad_matrix(inverse(v, sc()), sc());
    const auto& t = index_tables();
    for (int slot = 0; slot < 35; ++slot) {
      auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
      double pull = 0;
      for (int m = 0; m < 7; ++m)
        for (int n = 0; n < 7; ++n)
          for (int p = 0; p < 7; ++p)
            pull += phi0().get(m, n, p) * M(m, a) * M(n, b) * M(p, c);
      worst = std::max(worst, std::abs(lhs.comp[static_cast<size_t>(slot)] - pull));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Sigma, DeformedCrossAgreesWithCircV) {
  // the cross product built from sigma_V(phi0) against circ_v on imaginaries
  Rng rng(26);
  for (int k = 0; k < 50; ++k) {
    Octonion v = random_unit(rng);
    StructureConstants def = StructureConstants::from_phi_metric(sigma(v, phi0()),
                                                                 Tensor2::identity());
    Octonion a = Octonion::imaginary(rng.vec());
    Octonion b = Octonion::imaginary(rng.vec());
    Octonion via_def = mul(a, b, def);
    Octonion via_circ = circ_v(a, b, v, sc());
    EXPECT_LT(odiff(via_def, via_circ), 1e-11);
  }
}

TEST(Project2Form, RoundTripAndOrthogonality) {
  Rng rng(27);
  // pure Lambda^2_7 input
  Vec7 v = rng.vec();
  TwoFormSplit s = project_2form(contract(v, sc().phi), sc());
  EXPECT_LT(norm(s.pi7 - v), 1e-13);
  EXPECT_LT(max_abs(s.pi14), 1e-13);

  for (int k = 0; k < 200; ++k) {
    Tensor2 omega;
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) {
        omega(i, j) = rng.sym();
        omega(j, i) = -omega(i, j);
      }
    TwoFormSplit p = project_2form(omega, sc());
    // Lambda^2_14 condition and reassembly
    EXPECT_LT(norm(contract2(p.pi14, sc().phi)), 1e-12);
    EXPECT_LT(max_abs(omega - (contract(p.pi7, sc().phi) + p.pi14)), 1e-13);
    // orthogonality of the two pieces
    Tensor2 w7 = contract(p.pi7, sc().phi);
    double ip = 0;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) ip += w7(i, j) * p.pi14(i, j);
    EXPECT_LT(std::abs(ip), 1e-12);
  }
  // omega with omega . phi = 0 keeps pi7 = 0
  Tensor2 g2elem;
  g2elem(3, 4) = 1.0;
  g2elem(4, 3) = -1.0;
  g2elem(5, 6) = -1.0;
  g2elem(6, 5) = 1.0;  // e^45 - e^67 is in Lambda^2_14 for phi0
  TwoFormSplit q = project_2form(g2elem, sc());
  EXPECT_LT(norm(q.pi7), 1e-14);
}

TEST(Project3Form, RoundTrip) {
  Rng rng(28);
  ThreeFormSplit s = project_3form(phi0(), sc());
  EXPECT_NEAR(s.pi1, 1.0, 1e-14);
  EXPECT_LT(norm(s.pi7), 1e-14);
  EXPECT_LT(max_abs(s.pi27), 1e-13);

  Vec7 v = rng.vec();
  ThreeFormSplit s7 = project_3form(contract(v, sc().psi), sc());
  EXPECT_LT(norm(s7.pi7 - v), 1e-13);
  EXPECT_LT(std::abs(s7.pi1), 1e-14);
  EXPECT_LT(max_abs(s7.pi27), 1e-12);

  for (int k = 0; k < 100; ++k) {
    ThreeForm chi;
    for (auto& c : chi.comp) c = rng.sym();
    ThreeFormSplit p = project_3form(chi, sc());
    // pi27 is symmetric traceless
    EXPECT_LT(std::abs(p.pi27.trace()), 1e-12);
    EXPECT_LT(max_abs(p.pi27 - p.pi27.transposed()), 1e-12);
    ThreeForm re = p.pi1 * sc().phi;
    re += contract(p.pi7, sc().psi);
    re += i_phi(p.pi27, sc());
    EXPECT_LT(max_abs(chi - re), 1e-12);
  }
}

TEST(DecomposeTorsion, ExamplesAndRoundTrip) {
  TorsionComponents c1 = decompose_torsion(Tensor2::identity(), sc());
  EXPECT_NEAR(c1.tau1, 1.0, 1e-15);
  EXPECT_LT(norm(c1.tau7), 1e-15);
  EXPECT_LT(max_abs(c1.tau14), 1e-15);
  EXPECT_LT(max_abs(c1.tau27), 1e-15);

  Rng rng(29);
  Vec7 v = rng.vec();
  TorsionComponents c7 = decompose_torsion(contract(v, sc().phi), sc());
  EXPECT_LT(norm(c7.tau7 - v), 1e-13);
  EXPECT_LT(std::abs(c7.tau1), 1e-14);
  EXPECT_LT(max_abs(c7.tau14), 1e-13);
  EXPECT_LT(max_abs(c7.tau27), 1e-13);

  for (int k = 0; k < 200; ++k) {
    Tensor2 T;
    for (auto& x : T.m) x = rng.sym();
    TorsionComponents c = decompose_torsion(T, sc());
    EXPECT_LT(max_abs(T - c.reassemble(sc())), 1e-13);
    EXPECT_LT(norm(contract2(c.tau14, sc().phi)), 1e-12);
    EXPECT_LT(std::abs(c.tau27.trace()), 1e-13);
    // mutual orthogonality of the four pieces in the full inner product
    Tensor2 p1 = c.tau1 * sc().metric;
    Tensor2 p7 = contract(c.tau7, sc().phi);
    auto ip = [](const Tensor2& x, const Tensor2& y) {
      double s = 0;
      for (int i = 0; i < 49; ++i) s += x.m[static_cast<size_t>(i)] * y.m[static_cast<size_t>(i)];
      return s;
    };
    EXPECT_LT(std::abs(ip(p1, p7)), 1e-12);
    EXPECT_LT(std::abs(ip(p1, c.tau14)), 1e-12);
    EXPECT_LT(std::abs(ip(p1, c.tau27)), 1e-12);
    EXPECT_LT(std::abs(ip(p7, c.tau14)), 1e-12);
    EXPECT_LT(std::abs(ip(p7, c.tau27)), 1e-12);
    EXPECT_LT(std::abs(ip(c.tau14, c.tau27)), 1e-12);
  }
}

TEST(ContractionIdentities, Phi0Exact) {
  Rng rng(30);
  ContractionReport rep = verify_contraction_identities(sc(), rng, 200);
  EXPECT_LT(rep.phiphi, 1e-12);
  EXPECT_LT(rep.phipsi, 1e-12);
  EXPECT_LT(rep.double_cross, 1e-12);
}

TEST(ContractionIdentities, DeformedStructure) {
  Rng rng(31);
  for (int k = 0; k < 5; ++k) {
    Octonion v = random_unit(rng);
    StructureConstants def = StructureConstants::from_phi(sigma(v, phi0()));
    ContractionReport rep = verify_contraction_identities(def, rng, 50);
    EXPECT_LT(rep.phiphi, 1e-10);
    EXPECT_LT(rep.phipsi, 1e-10);
    EXPECT_LT(rep.double_cross, 1e-10);
  }
}

TEST(ContractionIdentities, NonPositiveFormReportsResidual) {
  // a non-G2 3-form: psi from the epsilon-star of a corrupted phi no longer
  // satisfies the contraction identity, and nothing crashes
  ThreeForm broken = phi0();
  broken.comp[0] = -broken.comp[0];
  StructureConstants bad = StructureConstants::from_phi_metric(broken, Tensor2::identity());
  EXPECT_GT(phiphi_residual(bad), 0.5);
}

TEST(Determinant, AgainstBruteForce) {
  Rng rng(32);
  for (int k = 0; k < 20; ++k) {
    Tensor2 m;
    for (auto& x : m.m) x = rng.sym();
    EXPECT_NEAR(determinant(m), oracle::det_bruteforce(m), 1e-10);
  }
}

}  // namespace
