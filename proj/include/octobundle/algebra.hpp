#pragma once

// Octonion algebra parameterized by a structure 3-form: products, inverses,
// powers, exponentials, associators, adjoint maps, and the deformed product
// circ_V. Pure functions on value types.

#include <cmath>
#include <stdexcept>

#include "octobundle/octonion.hpp"
#include "octobundle/structure.hpp"

namespace octo {

// AB = (ab - <alpha,beta>, a beta + b alpha + alpha x beta)
inline Octonion mul(const Octonion& A, const Octonion& B, const StructureConstants& sc) {
  Octonion out;
  out.re = A.re * B.re - dot(A.im, sc.metric * B.im);
  out.im = A.re * B.im + B.re * A.im + cross_product(A.im, B.im, sc);
  return out;
}

inline Octonion commutator(const Octonion& A, const Octonion& B, const StructureConstants& sc) {
  return Octonion::imaginary(2.0 * cross_product(A.im, B.im, sc));
}

// [A,B,C] = A(BC) - (AB)C
inline Octonion associator(const Octonion& A, const Octonion& B, const Octonion& C,
                           const StructureConstants& sc) {
  return mul(A, mul(B, C, sc), sc) - mul(mul(A, B, sc), C, sc);
}

inline Octonion inverse(const Octonion& A, const StructureConstants& sc) {
  double n2 = A.re * A.re + dot(A.im, sc.metric * A.im);
  if (n2 <= 0.0) throw std::domain_error("octonion inverse: zero octonion");
  return conj(A) * (1.0 / n2);
}

// exp of an imaginary octonion: cos|a| + a sin|a|/|a|, smooth at a = 0.
inline Octonion exp_im(const Vec7& alpha) {
  double t = norm(alpha);
  double sinc;
  if (t < 1e-6) {
    double t2 = t * t;
    sinc = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  } else {
    sinc = std::sin(t) / t;
  }
  return {std::cos(t), alpha * sinc};
}

// B^k = |B|^k (cos k theta + beta_hat sin k theta / sin theta), theta from
// cos theta = b/|B|, sin theta = |beta|/|B|. Near sin theta = 0 the ratio is
// replaced by its limit k cos(k theta)/cos(theta); for exactly real B with
// b < 0 we take theta = pi, so Im(B^k) = 0.
inline Octonion pow_int(const Octonion& B, int k, const StructureConstants& sc) {
  double nb = std::sqrt(B.re * B.re + dot(B.im, sc.metric * B.im));
  if (nb == 0.0) {
    if (k < 0) throw std::domain_error("pow_int: zero base with negative exponent");
    return k == 0 ? Octonion::one() : Octonion{};
  }
  if (k == 0) return Octonion::one();
  double imn = std::sqrt(dot(B.im, sc.metric * B.im));
  double scale = std::pow(nb, k);
  if (imn == 0.0) {
    double theta = B.re < 0.0 ? std::acos(-1.0) : 0.0;
    return Octonion::real(scale * std::cos(k * theta));
  }
  double theta = std::atan2(imn, B.re);
  double s = imn / nb;
  double ratio;  // sin(k theta)/sin(theta)
  if (s < 1e-7) {
    ratio = k * std::cos(k * theta) / std::cos(theta);
  } else {
    ratio = std::sin(k * theta) / s;
  }
  return {scale * std::cos(k * theta), B.im * (scale * ratio / nb)};
}

// Restriction of Ad_V = V . V^{-1} to Im O, as an SO(7) matrix:
//   (1/|V|^2) [ (v0^2 - |v|^2) delta^a_b - 2 v0 (v . phi)^a_b + 2 v^a v_b ]
inline Tensor2 ad_matrix(const Octonion& V, const StructureConstants& sc) {
  double n2 = V.re * V.re + dot(V.im, sc.metric * V.im);
  if (n2 <= 0.0) throw std::domain_error("ad_matrix: zero octonion");
  const Vec7& v = V.im;
  Tensor2 vphi_low = contract(v, sc.phi);
  Tensor2 out;
  Vec7 v_low = sc.metric * v;
  double v2 = dot(v, v_low);
  for (int a = 0; a < 7; ++a) {
    for (int b = 0; b < 7; ++b) {
      double raised = 0;
      for (int m = 0; m < 7; ++m) raised += sc.metric_inv(a, m) * vphi_low(m, b);
      out(a, b) = ((a == b ? V.re * V.re - v2 : 0.0) - 2.0 * V.re * raised + 2.0 * v[a] * v_low[b]) / n2;
    }
  }
  return out;
}

inline Octonion ad(const Octonion& V, const Octonion& A, const StructureConstants& sc) {
  return {A.re, ad_matrix(V, sc) * A.im};
}

// Product of the deformed structure sigma_V(phi):
//   A circ_V B = AB + [A,B,V] V^{-1}  ( = (AV)(V^{-1}B) ).
inline Octonion circ_v(const Octonion& A, const Octonion& B, const Octonion& V,
                       const StructureConstants& sc) {
  return mul(A, B, sc) + mul(associator(A, B, V, sc), inverse(V, sc), sc);
}

// Associator of circ_V: [A,B,CV]V^{-1} - [A,B,V](V^{-1}C).
inline Octonion associator_v(const Octonion& A, const Octonion& B, const Octonion& C,
                             const Octonion& V, const StructureConstants& sc) {
  Octonion vinv = inverse(V, sc);
  return mul(associator(A, B, mul(C, V, sc), sc), vinv, sc) -
         mul(associator(A, B, V, sc), mul(vinv, C, sc), sc);
}

}  // namespace octo
