#pragma once

// The octonionic Dirac operator D-slash A = delta^i o (D_i A), its explicit
// torsion-twisted div/grad/curl form, extraction of the tau_1/tau_7 torsion
// components from D-slash V, and the flat-torus Lichnerowicz-Weitzenboeck
// residual.

#include "octobundle/connection.hpp"

namespace octo {

// The seven imaginary units delta_i = (0, e_i); immutable shared data.
struct DeltaBasis {
  std::array<Octonion, 7> delta;
  DeltaBasis() {
    for (int i = 0; i < 7; ++i) delta[static_cast<size_t>(i)] = Octonion::unit_im(i);
  }
  const Octonion& operator[](int i) const { return delta[static_cast<size_t>(i)]; }
  static const DeltaBasis& get() {
    static const DeltaBasis b;
    return b;
  }
};

// D-slash A = delta^i o (D_i A), linear in A.
inline OctField dirac(const OctField& A, const TorsionField& T,
                      const StructureConstants& sc = StructureConstants::standard()) {
  OctOneForm DA = cov_d(A, T, sc);
  const DeltaBasis& d = DeltaBasis::get();
  OctField out(A.grid);
  parallel_for(A.grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      Octonion acc{};
      for (int i = 0; i < 7; ++i) acc += mul(d[i], DA[s][static_cast<size_t>(i)], sc);
      out[s] = acc;
    }
  });
  return out;
}

// Component form: D-slash A = (-div_T A, grad_T A + curl_T A) with
//   div_T A  = div alpha - a0 Tr T + <alpha, T . phi>
//   grad_T A = grad a0 + T(alpha)
//   curl_T A = curl alpha - a0 (T . phi) + T_alpha - alpha Tr T - alpha.(T.psi)
// where (curl alpha)^i = phi^{iab} del_a alpha_b. Agrees with dirac() per site
// as pure algebra, for any torsion tensor.
inline OctField dirac_explicit(const OctField& A, const TorsionField& T,
                               const StructureConstants& sc = StructureConstants::standard()) {
  const Grid& grid = A.grid;
  OctField out(grid);

  std::array<OctField, 7> dA;
  for (int a = 0; a < 7; ++a) dA[static_cast<size_t>(a)] = ddx(A, a);

  parallel_for(grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      double a0 = A[s].re;
      const Vec7& alpha = A[s].im;
      const Tensor2& Tt = T.tensor[static_cast<size_t>(s)];

      Vec7 grad_a0{};
      double div_alpha = 0;
      Tensor2 dal;  // dal(a,b) = del_a alpha_b
      for (int a = 0; a < 7; ++a) {
        grad_a0[a] = dA[static_cast<size_t>(a)][s].re;
        for (int b = 0; b < 7; ++b) dal(a, b) = dA[static_cast<size_t>(a)][s].im[b];
        div_alpha += dal(a, a);
      }
      Vec7 curl{};
      for (int i = 0; i < 7; ++i) {
        double c = 0;
        for (int a = 0; a < 7; ++a)
          for (int b = 0; b < 7; ++b) c += sc.phi.get(i, a, b) * dal(a, b);
        curl[i] = c;
      }

      double trT = Tt.trace();
      Vec7 Tphi = contract2(Tt, sc.phi);
      Tensor2 Tpsi = contract2(Tt, sc.psi);

      Vec7 T_of_alpha{};   // T(alpha)^m = T^m_k alpha^k
      Vec7 alpha_T{};      // (T_alpha)^m = alpha^i T_i^m
      Vec7 alpha_Tpsi{};   // alpha^j (T.psi)_{jm}
      for (int m = 0; m < 7; ++m) {
        double t1 = 0, t2 = 0, t3 = 0;
        for (int k = 0; k < 7; ++k) {
          t1 += Tt(m, k) * alpha[k];
          t2 += alpha[k] * Tt(k, m);
          t3 += alpha[k] * Tpsi(k, m);
        }
        T_of_alpha[m] = t1;
        alpha_T[m] = t2;
        alpha_Tpsi[m] = t3;
      }

      double div_T = div_alpha - a0 * trT + dot(alpha, Tphi);
      Vec7 grad_T = grad_a0 + T_of_alpha;
      Vec7 curl_T = curl - a0 * Tphi + alpha_T - trT * alpha - alpha_Tpsi;

      out[s] = Octonion{-div_T, grad_T + curl_T};
    }
  });
  return out;
}

// (tau1, tau7) of the gauge-transformed torsion read off the Dirac operator:
// D-slash V . V^{-1} = (7 tau1~, -6 tau7~). Only the 1- and 7-components are
// recoverable this way; tau14 and tau27 are invisible to D-slash.
struct Tau17Fields {
  ScalarField tau1;
  std::vector<Vec7> tau7;
};

inline Tau17Fields torsion_17_from_dirac(const OctField& V, const TorsionField& T,
                                         const StructureConstants& sc =
                                             StructureConstants::standard()) {
  if (!V.unit_norm(1e-10))
    throw std::domain_error("torsion_17_from_dirac: V is not unit-norm");
  OctField DV = dirac(V, T, sc);
  Tau17Fields out{ScalarField(V.grid), std::vector<Vec7>(static_cast<size_t>(V.grid.sites))};
  for (int64_t s = 0; s < V.grid.sites; ++s) {
    Octonion q = mul(DV[s], inverse(V[s], sc), sc);
    out.tau1[s] = q.re / 7.0;
    out.tau7[static_cast<size_t>(s)] = q.im * (-1.0 / 6.0);
  }
  return out;
}

// || D-slash(D-slash V) - d_D^* d_D V || on the lattice (the scalar-curvature
// term is identically zero on the flat torus).
struct LichnerowiczResult {
  double l2 = 0;
  double linf = 0;
};

inline LichnerowiczResult lichnerowicz_residual(const OctField& V, const TorsionField& T,
                                                const StructureConstants& sc =
                                                    StructureConstants::standard()) {
  OctField dd = dirac(dirac(V, T, sc), T, sc);
  OctField lap = codiff(cov_d(V, T, sc), T, sc);
  OctField diff(V.grid);
  for (int64_t s = 0; s < V.grid.sites; ++s) diff[s] = dd[s] - lap[s];
  return {l2_norm(diff), linf(diff)};
}

// ---------------------------------------------------------------------------
// Operators of the deformed structure sigma_V(phi), expressed in the reference
// trivialization: products are the per-site circ_V, the connection 1-form is
// the transformed torsion. These are the gauge-covariant partners of cov_d /
// dirac / codiff.
// ---------------------------------------------------------------------------

inline OctOneForm cov_d_deformed(const OctField& X, const OctField& V,
                                 const TorsionField& Ttilde,
                                 const StructureConstants& sc =
                                     StructureConstants::standard()) {
  OctOneForm out(X.grid);
  std::array<OctField, 7> dX;
  for (int a = 0; a < 7; ++a) dX[static_cast<size_t>(a)] = ddx(X, a);
  parallel_for(X.grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s)
      for (int a = 0; a < 7; ++a)
        out[s][static_cast<size_t>(a)] =
            dX[static_cast<size_t>(a)][s] - circ_v(X[s], Ttilde.row(s, a), V[s], sc);
  });
  return out;
}

inline OctField dirac_deformed(const OctField& X, const OctField& V,
                               const TorsionField& Ttilde,
                               const StructureConstants& sc = StructureConstants::standard()) {
  OctOneForm DX = cov_d_deformed(X, V, Ttilde, sc);
  const DeltaBasis& d = DeltaBasis::get();
  OctField out(X.grid);
  parallel_for(X.grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      Octonion acc{};
      for (int i = 0; i < 7; ++i)
        acc += circ_v(d[i], DX[s][static_cast<size_t>(i)], V[s], sc);
      out[s] = acc;
    }
  });
  return out;
}

inline OctField codiff_deformed(const OctOneForm& P, const OctField& V,
                                const TorsionField& Ttilde,
                                const StructureConstants& sc = StructureConstants::standard()) {
  const Grid& grid = P.grid;
  OctField out(grid);
  double inv2h = 1.0 / (2.0 * grid.h);
  parallel_for(grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      Octonion acc{};
      for (int a = 0; a < 7; ++a) {
        int slot = grid.axis_slot(a);
        if (slot >= 0) {
          acc -= (P[grid.shift(s, slot, +1)][static_cast<size_t>(a)] -
                  P[grid.shift(s, slot, -1)][static_cast<size_t>(a)]) *
                 inv2h;
        }
        acc += circ_v(P[s][static_cast<size_t>(a)], Ttilde.row(s, a), V[s], sc);
      }
      out[s] = acc;
    }
  });
  return out;
}

// Lichnerowicz residual evaluated with the deformed structure's own operators;
// the base torsion supplies the reference, V the gauge.
inline LichnerowiczResult lichnerowicz_residual_deformed(
    const OctField& V, const TorsionField& base,
    const StructureConstants& sc = StructureConstants::standard()) {
  TorsionField Tt = torsion_of_gauge(V, base, sc).torsion;
  OctField dd = dirac_deformed(dirac_deformed(V, V, Tt, sc), V, Tt, sc);
  OctField lap = codiff_deformed(cov_d_deformed(V, V, Tt, sc), V, Tt, sc);
  OctField diff(V.grid);
  for (int64_t s = 0; s < V.grid.sites; ++s) diff[s] = dd[s] - lap[s];
  return {l2_norm(diff), linf(diff)};
}

// Smallest Rayleigh quotient <D*D A, A>/<A, A> found by projected gradient
// descent from a constant start; a diagnostic for the kernel of D*D (the
// discrete forward implication DA = 0 => D*D A = 0 is exact, the converse is
// only probed numerically).
inline double min_rayleigh_dstar_d(const TorsionField& T, int iters = 200,
                                   const StructureConstants& sc = StructureConstants::standard()) {
  const Grid& grid = T.grid;
  OctField A(grid);
  for (auto& a : A.data) a = Octonion::one();
  double rho = 0;
  double step = 0.2;
  for (int it = 0; it < iters; ++it) {
    OctField DDA = codiff(cov_d(A, T, sc), T, sc);
    double num = l2_pair(DDA, A);
    double den = l2_pair(A, A);
    rho = num / den;
    double nrm = 0;
    for (int64_t s = 0; s < grid.sites; ++s) {
      A[s] -= step * (DDA[s] - rho * A[s]);
      nrm += norm2(A[s]);
    }
    double scale = 1.0 / std::sqrt(nrm / static_cast<double>(grid.sites));
    for (auto& a : A.data) a = a * scale;
  }
  return rho;
}

}  // namespace octo
