#pragma once

// The algebra-defining data of a G2-structure on R^7: the positive 3-form phi,
// its Hodge dual psi (always derived from phi, never hard-coded), and the
// metric. The cross-product table phi^a_{bc} is precomputed once; a
// StructureConstants object is immutable after construction and shareable
// across threads.

#include <stdexcept>
#include <string>

#include "octobundle/forms.hpp"

namespace octo {

// phi0 = e^123 + e^145 + e^167 + e^246 - e^257 - e^347 - e^356 (1-based axes).
inline ThreeForm phi0() {
  ThreeForm f;
  f.add(0, 1, 2, 1.0);
  f.add(0, 3, 4, 1.0);
  f.add(0, 5, 6, 1.0);
  f.add(1, 3, 5, 1.0);
  f.add(1, 4, 6, -1.0);
  f.add(2, 3, 6, -1.0);
  f.add(2, 4, 5, -1.0);
  return f;
}

// psi_{abcd} = 1/3! sqrt(det g) eps_{abcd}^{efg} phi_{efg}, indices raised by
// g^{-1}. For each canonical quadruple the epsilon symbol selects the
// complementary triple, so the sum collapses to a single signed term.
inline FourForm hodge_star3(const ThreeForm& phi, const Tensor2& g) {
  double detg = determinant(g);
  if (!(detg > 0.0) || !positive_definite(g))
    throw std::domain_error("hodge_star3: metric is not positive definite");
  ThreeForm raised = raise_indices(phi, inverse(g));
  double scale = std::sqrt(detg);
  FourForm psi;
  const auto& t = index_tables();
  for (int slot = 0; slot < 35; ++slot) {
    const auto& comp = t.quad_complement[static_cast<size_t>(slot)];
    psi.comp[static_cast<size_t>(slot)] =
        scale * t.quad_complement_sign[static_cast<size_t>(slot)] *
        raised.get(comp[0], comp[1], comp[2]);
  }
  return psi;
}

struct MetricFromPhi {
  Tensor2 g;        // normalized metric when positive; raw bilinear form otherwise
  double volume;    // sqrt(det g) of the unnormalized form, i.e. det(B)^(1/9)
  bool positive;
};

// g(u,v) vol = 1/6 (u . phi) ^ (v . phi) ^ phi evaluated on basis vectors.
// The bilinear form B satisfies B = sqrt(det g) g, so g = B det(B)^{-1/9};
// this is the det-normalization that sends phi0 to the Euclidean metric.
inline MetricFromPhi metric_from_phi(const ThreeForm& phi) {
  Tensor2 B;
  std::array<Tensor2, 7> cont;
  for (int i = 0; i < 7; ++i) cont[static_cast<size_t>(i)] = contract(basis_vec(i), phi);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      double v = wedge_top(wedge(cont[static_cast<size_t>(i)], cont[static_cast<size_t>(j)]), phi) / 6.0;
      B(i, j) = v;
      B(j, i) = v;
    }
  MetricFromPhi out;
  double detB = determinant(B);
  if (!(detB > 0.0) || !positive_definite(B)) {
    out.g = B;
    out.volume = 0.0;
    out.positive = false;
    return out;
  }
  double vol = std::pow(detB, 1.0 / 9.0);
  out.g = B * (1.0 / vol);
  out.volume = vol;
  out.positive = true;
  return out;
}

struct StructureConstants {
  ThreeForm phi;
  FourForm psi;
  Tensor2 metric;
  Tensor2 metric_inv;
  double sqrt_det_g = 1.0;
  // cross[a][b][c] = phi^a_{bc}
  std::array<double, 343> cross{};

  double cross_tab(int a, int b, int c) const {
    return cross[static_cast<size_t>((a * 7 + b) * 7 + c)];
  }

  static StructureConstants from_phi_metric(const ThreeForm& phi_in, const Tensor2& g) {
    StructureConstants sc;
    sc.phi = phi_in;
    sc.metric = g;
    sc.metric_inv = inverse(g);
    sc.sqrt_det_g = std::sqrt(determinant(g));
    sc.psi = hodge_star3(phi_in, g);
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b)
        for (int c = 0; c < 7; ++c) {
          double s = 0;
          for (int m = 0; m < 7; ++m) s += sc.metric_inv(a, m) * phi_in.get(m, b, c);
          sc.cross[static_cast<size_t>((a * 7 + b) * 7 + c)] = s;
        }
    return sc;
  }

  // Derives the metric from phi; requires a positive form.
  static StructureConstants from_phi(const ThreeForm& phi_in) {
    MetricFromPhi m = metric_from_phi(phi_in);
    if (!m.positive)
      throw std::domain_error("StructureConstants: 3-form is not positive");
    return from_phi_metric(phi_in, m.g);
  }

  static const StructureConstants& standard() {
    static const StructureConstants sc = from_phi_metric(phi0(), Tensor2::identity());
    return sc;
  }
};

// --------------------- contraction identity residuals -----------------------

// phi_{abc} phi_{mn}^c - (g_am g_bn - g_an g_bm + psi_abmn), max over tuples.
inline double phiphi_residual(const StructureConstants& sc) {
  double worst = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      for (int m = 0; m < 7; ++m)
        for (int n = 0; n < 7; ++n) {
          double lhs = 0;
          for (int c = 0; c < 7; ++c)
            for (int cc = 0; cc < 7; ++cc)
              lhs += sc.phi.get(a, b, c) * sc.metric_inv(c, cc) * sc.phi.get(m, n, cc);
          double rhs = sc.metric(a, m) * sc.metric(b, n) - sc.metric(a, n) * sc.metric(b, m) +
                       sc.psi.get(a, b, m, n);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

// phi_{abc} psi_{mnp}^c + 3(g_{a[m} phi_{np]b} - g_{b[m} phi_{np]a}), max over tuples.
inline double phipsi_residual(const StructureConstants& sc) {
  double worst = 0;
  auto antisym3 = [&](auto f, int m, int n, int p) {
    // f antisymmetrized over (m,n,p) with weight 1/3!
    return (f(m, n, p) - f(m, p, n) + f(n, p, m) - f(n, m, p) + f(p, m, n) - f(p, n, m)) / 6.0;
  };
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      for (int m = 0; m < 7; ++m)
        for (int n = 0; n < 7; ++n)
          for (int p = 0; p < 7; ++p) {
            double lhs = 0;
            for (int c = 0; c < 7; ++c)
              for (int cc = 0; cc < 7; ++cc)
                lhs += sc.phi.get(a, b, c) * sc.metric_inv(c, cc) * sc.psi.get(m, n, p, cc);
            double t1 = antisym3(
                [&](int x, int y, int z) { return sc.metric(a, x) * sc.phi.get(y, z, b); }, m, n, p);
            double t2 = antisym3(
                [&](int x, int y, int z) { return sc.metric(b, x) * sc.phi.get(y, z, a); }, m, n, p);
            double rhs = -3.0 * (t1 - t2);
            worst = std::max(worst, std::abs(lhs - rhs));
          }
  return worst;
}

struct ContractionReport {
  double phiphi;
  double phipsi;
  double double_cross;
  bool pass(double tol) const {
    return phiphi < tol && phipsi < tol && double_cross < tol;
  }
};

Vec7 cross_product(const Vec7& a, const Vec7& b, const StructureConstants& sc);

// a x (b x c) = <a,c> b - <a,b> c + psi(.#, a, b, c), randomized residual.
inline double double_cross_residual(const StructureConstants& sc, Rng& rng, int trials) {
  double worst = 0;
  for (int k = 0; k < trials; ++k) {
    Vec7 a = rng.vec(), b = rng.vec(), c = rng.vec();
    Vec7 lhs = cross_product(a, cross_product(b, c, sc), sc);
    Vec7 rhs{};
    for (int i = 0; i < 7; ++i) {
      double s = 0;
      for (int m = 0; m < 7; ++m)
        for (int x = 0; x < 7; ++x)
          for (int y = 0; y < 7; ++y)
            for (int z = 0; z < 7; ++z)
              s += sc.metric_inv(i, m) * sc.psi.get(m, x, y, z) * a[x] * b[y] * c[z];
      rhs[i] = s;
    }
    Vec7 gb{}, gc{};
    for (int i = 0; i < 7; ++i) {
      gb[i] = dot(a, sc.metric * c) * b[i];
      gc[i] = dot(a, sc.metric * b) * c[i];
    }
    Vec7 diff = lhs - (gb - gc + rhs);
    for (int i = 0; i < 7; ++i) worst = std::max(worst, std::abs(diff[i]));
  }
  return worst;
}

inline ContractionReport verify_contraction_identities(const StructureConstants& sc, Rng& rng,
                                                       int trials) {
  return {phiphi_residual(sc), phipsi_residual(sc), double_cross_residual(sc, rng, trials)};
}

inline Vec7 cross_product(const Vec7& a, const Vec7& b, const StructureConstants& sc) {
  Vec7 out{};
  for (int i = 0; i < 7; ++i) {
    double s = 0;
    for (int x = 0; x < 7; ++x) {
      if (a[x] == 0.0) continue;
      for (int y = 0; y < 7; ++y) s += sc.cross_tab(i, x, y) * a[x] * b[y];
    }
    out[i] = s;
  }
  return out;
}

}  // namespace octo
