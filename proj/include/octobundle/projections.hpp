#pragma once

// Irreducible-representation projectors for 2-forms, 3-forms and 2-tensors
// under G2, and the isometric deformation map sigma_A.

#include <stdexcept>

#include "octobundle/algebra.hpp"

namespace octo {

// ------------------------- 2-form decomposition -----------------------------

struct TwoFormSplit {
  Vec7 pi7;      // omega_7 = pi7 . phi
  Tensor2 pi14;  // remainder, satisfies pi14 . phi = 0
};

// Lambda^2 = Lambda^2_7 + Lambda^2_14 with (v.phi).phi = 6v.
inline TwoFormSplit project_2form(const Tensor2& omega, const StructureConstants& sc) {
  TwoFormSplit out;
  out.pi7 = contract2(omega, sc.phi) * (1.0 / 6.0);
  out.pi14 = omega - contract(out.pi7, sc.phi);
  return out;
}

// ------------------------- 3-form decomposition -----------------------------

struct ThreeFormSplit {
  double pi1;
  Vec7 pi7;
  Tensor2 pi27;  // traceless symmetric h with chi_27 = i_phi(h)
};

// i_phi(h)_{abc} = h_{[a}^d phi_{bc]d} for symmetric traceless h.
inline ThreeForm i_phi(const Tensor2& h, const StructureConstants& sc) {
  ThreeForm out;
  const auto& t = index_tables();
  auto F = [&](int a, int b, int c) {
    double s = 0;
    for (int d = 0; d < 7; ++d) s += h(a, d) * sc.phi.get(b, c, d);
    return s;
  };
  for (int slot = 0; slot < 35; ++slot) {
    auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
    out.comp[static_cast<size_t>(slot)] = (F(a, b, c) + F(b, c, a) + F(c, a, b)) / 3.0;
  }
  return out;
}

// chi = pi1 phi + pi7 . psi + i_phi(pi27); |phi|^2 = 42, psi.psi = 24 g.
// The 27-part h is recovered from the remainder via h = (3/4) chi_amn phi_b^mn.
inline ThreeFormSplit project_3form(const ThreeForm& chi, const StructureConstants& sc) {
  ThreeFormSplit out;
  out.pi1 = full_inner(chi, sc.phi) / 42.0;
  for (int d = 0; d < 7; ++d) {
    double s = 0;
    const auto& t = index_tables();
    for (int slot = 0; slot < 35; ++slot) {
      auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
      s += 6.0 * chi.comp[static_cast<size_t>(slot)] * sc.psi.get(d, a, b, c);
    }
    out.pi7[d] = s / 24.0;
  }
  ThreeForm rem = chi - out.pi1 * sc.phi - contract(out.pi7, sc.psi);
  Tensor2 K;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      double s = 0;
      for (int m = 0; m < 7; ++m)
        for (int n = 0; n < 7; ++n) s += rem.get(a, m, n) * sc.phi.get(b, m, n);
      K(a, b) = s;
    }
  out.pi27 = 0.375 * (K + K.transposed());  // (3/4) symmetrized
  return out;
}

// ------------------------- torsion decomposition ----------------------------

struct TorsionComponents {
  double tau1 = 0.0;
  Vec7 tau7{};
  Tensor2 tau14;  // antisymmetric, in Lambda^2_14
  Tensor2 tau27;  // symmetric traceless

  Tensor2 reassemble(const StructureConstants& sc) const {
    Tensor2 T = tau1 * sc.metric + contract(tau7, sc.phi);
    T += tau14;
    T += tau27;
    return T;
  }
};

// T = tau1 g + tau7 . phi + tau14 + tau27.
inline TorsionComponents decompose_torsion(const Tensor2& T, const StructureConstants& sc) {
  TorsionComponents out;
  out.tau1 = T.trace() / 7.0;
  Tensor2 asym;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) asym(i, j) = 0.5 * (T(i, j) - T(j, i));
  out.tau7 = contract2(asym, sc.phi) * (1.0 / 6.0);
  out.tau14 = asym - contract(out.tau7, sc.phi);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      out.tau27(i, j) = 0.5 * (T(i, j) + T(j, i)) - out.tau1 * sc.metric(i, j);
  return out;
}

// ------------------------------ sigma map -----------------------------------

// sigma_A(phi) = (1/|A|^2) [ (a^2-|alpha|^2) phi - 2a alpha.(*phi)
//                            + 2 alpha ^ (alpha.phi) ]
// The Hodge dual and the index lowering use the metric associated to phi.
inline ThreeForm sigma(const Octonion& A, const ThreeForm& phi) {
  MetricFromPhi m = metric_from_phi(phi);
  if (!m.positive) throw std::domain_error("sigma: 3-form is not positive");
  FourForm psi = hodge_star3(phi, m.g);
  double n2 = A.re * A.re + dot(A.im, m.g * A.im);
  if (n2 <= 0.0) throw std::domain_error("sigma: zero octonion");
  double a2 = dot(A.im, m.g * A.im);
  Vec7 alpha_low = m.g * A.im;
  ThreeForm out = (A.re * A.re - a2) * phi;
  out -= 2.0 * A.re * contract(A.im, psi);
  out += 2.0 * wedge(alpha_low, contract(A.im, phi));
  out *= 1.0 / n2;
  return out;
}

// sigma against a precomputed structure; avoids re-deriving metric and psi
// when the caller already holds them (the per-site field path).
inline ThreeForm sigma(const Octonion& A, const StructureConstants& sc) {
  double n2 = A.re * A.re + dot(A.im, sc.metric * A.im);
  if (n2 <= 0.0) throw std::domain_error("sigma: zero octonion");
  double a2 = dot(A.im, sc.metric * A.im);
  Vec7 alpha_low = sc.metric * A.im;
  ThreeForm out = (A.re * A.re - a2) * sc.phi;
  out -= 2.0 * A.re * contract(A.im, sc.psi);
  out += 2.0 * wedge(alpha_low, contract(A.im, sc.phi));
  out *= 1.0 / n2;
  return out;
}

}  // namespace octo
