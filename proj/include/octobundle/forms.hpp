#pragma once

// Totally antisymmetric rank-3 and rank-4 tensors on R^7 in compressed
// canonical-index storage (35 components each, lexicographic over strictly
// increasing tuples). Full-index accessors apply the permutation sign; repeated
// indices read as zero.

#include <array>
#include <cmath>

#include "octobundle/core.hpp"

namespace octo {

struct ThreeForm {
  std::array<double, 35> comp{};

  double get(int a, int b, int c) const {
    const auto& t = index_tables();
    int idx = (a * 7 + b) * 7 + c;
    int8_t s = t.tri_sign[static_cast<size_t>(idx)];
    if (s == 0) return 0.0;
    return s * comp[static_cast<size_t>(t.tri_slot[static_cast<size_t>(idx)])];
  }

  // Adds v to the component addressed by (a,b,c); indices need not be sorted.
  void add(int a, int b, int c, double v) {
    const auto& t = index_tables();
    int idx = (a * 7 + b) * 7 + c;
    int8_t s = t.tri_sign[static_cast<size_t>(idx)];
    if (s == 0) return;
    comp[static_cast<size_t>(t.tri_slot[static_cast<size_t>(idx)])] += s * v;
  }

  ThreeForm& operator+=(const ThreeForm& o) {
    for (size_t i = 0; i < 35; ++i) comp[i] += o.comp[i];
    return *this;
  }
  ThreeForm& operator-=(const ThreeForm& o) {
    for (size_t i = 0; i < 35; ++i) comp[i] -= o.comp[i];
    return *this;
  }
  ThreeForm& operator*=(double s) {
    for (auto& x : comp) x *= s;
    return *this;
  }
  friend ThreeForm operator+(ThreeForm a, const ThreeForm& b) { return a += b; }
  friend ThreeForm operator-(ThreeForm a, const ThreeForm& b) { return a -= b; }
  friend ThreeForm operator*(ThreeForm a, double s) { return a *= s; }
  friend ThreeForm operator*(double s, ThreeForm a) { return a *= s; }
  friend ThreeForm operator-(ThreeForm a) { return a *= -1.0; }
};

struct FourForm {
  std::array<double, 35> comp{};

  double get(int a, int b, int c, int d) const {
    const auto& t = index_tables();
    int idx = ((a * 7 + b) * 7 + c) * 7 + d;
    int8_t s = t.quad_sign[static_cast<size_t>(idx)];
    if (s == 0) return 0.0;
    return s * comp[static_cast<size_t>(t.quad_slot[static_cast<size_t>(idx)])];
  }

  void add(int a, int b, int c, int d, double v) {
    const auto& t = index_tables();
    int idx = ((a * 7 + b) * 7 + c) * 7 + d;
    int8_t s = t.quad_sign[static_cast<size_t>(idx)];
    if (s == 0) return;
    comp[static_cast<size_t>(t.quad_slot[static_cast<size_t>(idx)])] += s * v;
  }

  FourForm& operator*=(double s) {
    for (auto& x : comp) x *= s;
    return *this;
  }
  friend FourForm operator*(FourForm a, double s) { return a *= s; }
  friend FourForm operator*(double s, FourForm a) { return a *= s; }
  friend FourForm operator-(FourForm a) { return a *= -1.0; }
  FourForm& operator-=(const FourForm& o) {
    for (size_t i = 0; i < 35; ++i) comp[i] -= o.comp[i];
    return *this;
  }
  friend FourForm operator-(FourForm a, const FourForm& b) { return a -= b; }
};

inline double max_abs(const ThreeForm& f) {
  double m = 0;
  for (double x : f.comp) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(const FourForm& f) {
  double m = 0;
  for (double x : f.comp) m = std::max(m, std::abs(x));
  return m;
}

// --------------------------- contractions ----------------------------------

// (v . phi)_{bc} = v^a phi_{abc}, as an antisymmetric 7x7 matrix.
inline Tensor2 contract(const Vec7& v, const ThreeForm& phi) {
  Tensor2 w;
  const auto& t = index_tables();
  for (int slot = 0; slot < 35; ++slot) {
    auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
    double x = phi.comp[static_cast<size_t>(slot)];
    if (x == 0.0) continue;
    // contributions of the 6 orderings, grouped by which index carries v
    w(b, c) += v[a] * x;
    w(c, b) -= v[a] * x;
    w(c, a) += v[b] * x;
    w(a, c) -= v[b] * x;
    w(a, b) += v[c] * x;
    w(b, a) -= v[c] * x;
  }
  return w;
}

// (v . psi)_{bcd} = v^a psi_{abcd}
inline ThreeForm contract(const Vec7& v, const FourForm& psi) {
  ThreeForm out;
  const auto& t = index_tables();
  for (int slot = 0; slot < 35; ++slot) {
    auto [a, b, c, d] = t.quad_of_slot[static_cast<size_t>(slot)];
    double x = psi.comp[static_cast<size_t>(slot)];
    if (x == 0.0) continue;
    out.add(b, c, d, v[a] * x);
    out.add(a, c, d, -v[b] * x);
    out.add(a, b, d, v[c] * x);
    out.add(a, b, c, -v[d] * x);
  }
  return out;
}

// (omega . phi)_c = omega^{ab} phi_{abc} (full two-index contraction).
inline Vec7 contract2(const Tensor2& omega, const ThreeForm& phi) {
  Vec7 out{};
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      double w = omega(a, b);
      if (w == 0.0) continue;
      for (int c = 0; c < 7; ++c) out[c] += w * phi.get(a, b, c);
    }
  return out;
}

// (T . psi)_{cd} = T^{ab} psi_{abcd}
inline Tensor2 contract2(const Tensor2& T, const FourForm& psi) {
  Tensor2 out;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      double w = T(a, b);
      if (w == 0.0) continue;
      for (int c = 0; c < 7; ++c)
        for (int d = 0; d < 7; ++d) out(c, d) += w * psi.get(a, b, c, d);
    }
  return out;
}

// ------------------------------ wedges --------------------------------------

// (alpha ^ omega)_{abc} for a 1-form alpha and 2-form omega.
inline ThreeForm wedge(const Vec7& alpha, const Tensor2& omega) {
  ThreeForm out;
  const auto& t = index_tables();
  for (int slot = 0; slot < 35; ++slot) {
    auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
    out.comp[static_cast<size_t>(slot)] =
        alpha[a] * omega(b, c) + alpha[b] * omega(c, a) + alpha[c] * omega(a, b);
  }
  return out;
}

// (P ^ Q)_{abcd} for 2-forms P, Q given as antisymmetric matrices.
inline FourForm wedge(const Tensor2& P, const Tensor2& Q) {
  FourForm out;
  const auto& t = index_tables();
  for (int slot = 0; slot < 35; ++slot) {
    auto [a, b, c, d] = t.quad_of_slot[static_cast<size_t>(slot)];
    out.comp[static_cast<size_t>(slot)] =
        P(a, b) * Q(c, d) - P(a, c) * Q(b, d) + P(a, d) * Q(b, c) +
        P(b, c) * Q(a, d) - P(b, d) * Q(a, c) + P(c, d) * Q(a, b);
  }
  return out;
}

// Coefficient of e^{1...7} in F ^ G for a 4-form F and 3-form G.
inline double wedge_top(const FourForm& F, const ThreeForm& G) {
  const auto& t = index_tables();
  double s = 0;
  for (int slot = 0; slot < 35; ++slot) {
    const auto& comp = t.quad_complement[static_cast<size_t>(slot)];
    s += t.quad_complement_sign[static_cast<size_t>(slot)] *
         F.comp[static_cast<size_t>(slot)] * G.get(comp[0], comp[1], comp[2]);
  }
  return s;
}

// Raise all three indices with g^{-1}.
inline ThreeForm raise_indices(const ThreeForm& f, const Tensor2& ginv) {
  auto raise_first = [&](const ThreeForm& in) {
    ThreeForm out;
    const auto& t = index_tables();
    for (int slot = 0; slot < 35; ++slot) {
      auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
      double s = 0;
      for (int m = 0; m < 7; ++m) s += ginv(a, m) * in.get(m, b, c);
      out.comp[static_cast<size_t>(slot)] = s;
    }
    return out;
  };
  auto raise_second = [&](const ThreeForm& in) {
    ThreeForm out;
    const auto& t = index_tables();
    for (int slot = 0; slot < 35; ++slot) {
      auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
      double s = 0;
      for (int m = 0; m < 7; ++m) s += ginv(b, m) * in.get(a, m, c);
      out.comp[static_cast<size_t>(slot)] = s;
    }
    return out;
  };
  auto raise_third = [&](const ThreeForm& in) {
    ThreeForm out;
    const auto& t = index_tables();
    for (int slot = 0; slot < 35; ++slot) {
      auto [a, b, c] = t.tri_of_slot[static_cast<size_t>(slot)];
      double s = 0;
      for (int m = 0; m < 7; ++m) s += ginv(c, m) * in.get(a, b, m);
      out.comp[static_cast<size_t>(slot)] = s;
    }
    return out;
  };
  return raise_third(raise_second(raise_first(f)));
}

// Full-index inner products (no 1/p! factor).
inline double full_inner(const ThreeForm& a, const ThreeForm& b) {
  double s = 0;
  for (size_t i = 0; i < 35; ++i) s += a.comp[i] * b.comp[i];
  return 6.0 * s;
}

}  // namespace octo
