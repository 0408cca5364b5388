#pragma once

// Octonion value type: a real part and a 7-vector imaginary part. The
// structure-dependent product lives in algebra.hpp; everything here needs no
// 3-form.

#include <cmath>

#include "octobundle/core.hpp"

namespace octo {

struct Octonion {
  double re = 0.0;
  Vec7 im{};

  Octonion() = default;
  Octonion(double r, const Vec7& i) : re(r), im(i) {}

  static Octonion one() { return {1.0, Vec7{}}; }
  static Octonion real(double r) { return {r, Vec7{}}; }
  static Octonion imaginary(const Vec7& v) { return {0.0, v}; }
  static Octonion unit_im(int i) { return {0.0, basis_vec(i)}; }

  double operator[](int k) const { return k == 0 ? re : im[k - 1]; }

  Octonion& operator+=(const Octonion& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Octonion& operator-=(const Octonion& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Octonion& operator*=(double s) {
    re *= s;
    im *= s;
    return *this;
  }
  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(Octonion a, double s) { return a *= s; }
  friend Octonion operator*(double s, Octonion a) { return a *= s; }
  friend Octonion operator-(Octonion a) { return a *= -1.0; }
};

inline Octonion conj(const Octonion& a) { return {a.re, -a.im}; }

inline double norm2(const Octonion& a) { return a.re * a.re + dot(a.im, a.im); }

inline double norm(const Octonion& a) { return std::sqrt(norm2(a)); }

// 8-dimensional Euclidean inner product; real and imaginary parts orthogonal.
inline double inner(const Octonion& a, const Octonion& b) {
  return a.re * b.re + dot(a.im, b.im);
}

inline double max_abs(const Octonion& a) {
  double m = std::abs(a.re);
  for (int i = 0; i < 7; ++i) m = std::max(m, std::abs(a.im[i]));
  return m;
}

inline bool is_finite(const Octonion& a) {
  if (!std::isfinite(a.re)) return false;
  for (int i = 0; i < 7; ++i)
    if (!std::isfinite(a.im[i])) return false;
  return true;
}

}  // namespace octo
