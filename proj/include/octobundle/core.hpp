#pragma once

// Small fixed-size linear algebra on R^7 plus index bookkeeping shared by the
// rest of the library. Everything is a value type; no dynamic allocation.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace octo {

inline constexpr int kDim = 7;

// ---------------------------------------------------------------------------
// Vec7
// ---------------------------------------------------------------------------

struct Vec7 {
  std::array<double, 7> v{};

  double& operator[](int i) { return v[static_cast<size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<size_t>(i)]; }

  Vec7& operator+=(const Vec7& o) {
    for (int i = 0; i < 7; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec7& operator-=(const Vec7& o) {
    for (int i = 0; i < 7; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec7& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }

  friend Vec7 operator+(Vec7 a, const Vec7& b) { return a += b; }
  friend Vec7 operator-(Vec7 a, const Vec7& b) { return a -= b; }
  friend Vec7 operator*(Vec7 a, double s) { return a *= s; }
  friend Vec7 operator*(double s, Vec7 a) { return a *= s; }
  friend Vec7 operator-(Vec7 a) { return a *= -1.0; }
};

inline double dot(const Vec7& a, const Vec7& b) {
  double s = 0;
  for (int i = 0; i < 7; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec7& a) { return std::sqrt(dot(a, a)); }

inline Vec7 basis_vec(int i) {
  Vec7 e{};
  e[i] = 1.0;
  return e;
}

// ---------------------------------------------------------------------------
// Tensor2: dense 7x7 matrix
// ---------------------------------------------------------------------------

struct Tensor2 {
  std::array<double, 49> m{};

  double& operator()(int i, int j) { return m[static_cast<size_t>(i * 7 + j)]; }
  double operator()(int i, int j) const { return m[static_cast<size_t>(i * 7 + j)]; }

  static Tensor2 identity() {
    Tensor2 t;
    for (int i = 0; i < 7; ++i) t(i, i) = 1.0;
    return t;
  }

  Tensor2& operator+=(const Tensor2& o) {
    for (size_t i = 0; i < 49; ++i) m[i] += o.m[i];
    return *this;
  }
  Tensor2& operator-=(const Tensor2& o) {
    for (size_t i = 0; i < 49; ++i) m[i] -= o.m[i];
    return *this;
  }
  Tensor2& operator*=(double s) {
    for (auto& x : m) x *= s;
    return *this;
  }
  friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
  friend Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }
  friend Tensor2 operator*(Tensor2 a, double s) { return a *= s; }
  friend Tensor2 operator*(double s, Tensor2 a) { return a *= s; }

  Tensor2 transposed() const {
    Tensor2 t;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  double trace() const {
    double s = 0;
    for (int i = 0; i < 7; ++i) s += (*this)(i, i);
    return s;
  }

  Vec7 operator*(const Vec7& x) const {
    Vec7 y{};
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
    Tensor2 c;
    for (int i = 0; i < 7; ++i)
      for (int k = 0; k < 7; ++k) {
        double aik = a(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < 7; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
};

inline double frobenius2(const Tensor2& t) {
  double s = 0;
  for (double x : t.m) s += x * x;
  return s;
}

inline double max_abs(const Tensor2& t) {
  double s = 0;
  for (double x : t.m) s = std::max(s, std::abs(x));
  return s;
}

// LU with partial pivoting.
inline double determinant(const Tensor2& t) {
  std::array<double, 49> a = t.m;
  double det = 1.0;
  for (int col = 0; col < 7; ++col) {
    int piv = col;
    double best = std::abs(a[static_cast<size_t>(col * 7 + col)]);
    for (int r = col + 1; r < 7; ++r) {
      double cand = std::abs(a[static_cast<size_t>(r * 7 + col)]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < 7; ++j)
        std::swap(a[static_cast<size_t>(piv * 7 + j)], a[static_cast<size_t>(col * 7 + j)]);
      det = -det;
    }
    double d = a[static_cast<size_t>(col * 7 + col)];
    det *= d;
    for (int r = col + 1; r < 7; ++r) {
      double f = a[static_cast<size_t>(r * 7 + col)] / d;
      for (int j = col; j < 7; ++j)
        a[static_cast<size_t>(r * 7 + j)] -= f * a[static_cast<size_t>(col * 7 + j)];
    }
  }
  return det;
}

// Cholesky-based SPD test for symmetric input.
inline bool positive_definite(const Tensor2& t) {
  std::array<double, 49> a = t.m;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<size_t>(i * 7 + j)];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<size_t>(i * 7 + k)] * a[static_cast<size_t>(j * 7 + k)];
      if (i == j) {
        if (s <= 0.0) return false;
        a[static_cast<size_t>(i * 7 + i)] = std::sqrt(s);
      } else {
        a[static_cast<size_t>(i * 7 + j)] = s / a[static_cast<size_t>(j * 7 + j)];
      }
    }
  }
  return true;
}

inline Tensor2 inverse(const Tensor2& t) {
  // Gauss-Jordan with partial pivoting on [t | I].
  std::array<double, 49> a = t.m;
  Tensor2 inv = Tensor2::identity();
  for (int col = 0; col < 7; ++col) {
    int piv = col;
    double best = std::abs(a[static_cast<size_t>(col * 7 + col)]);
    for (int r = col + 1; r < 7; ++r) {
      double cand = std::abs(a[static_cast<size_t>(r * 7 + col)]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) throw std::domain_error("Tensor2 inverse: singular matrix");
    if (piv != col) {
      for (int j = 0; j < 7; ++j) {
        std::swap(a[static_cast<size_t>(piv * 7 + j)], a[static_cast<size_t>(col * 7 + j)]);
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    double d = a[static_cast<size_t>(col * 7 + col)];
    for (int j = 0; j < 7; ++j) {
      a[static_cast<size_t>(col * 7 + j)] /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < 7; ++r) {
      if (r == col) continue;
      double f = a[static_cast<size_t>(r * 7 + col)];
      if (f == 0.0) continue;
      for (int j = 0; j < 7; ++j) {
        a[static_cast<size_t>(r * 7 + j)] -= f * a[static_cast<size_t>(col * 7 + j)];
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Canonical index tables for antisymmetric rank-3 / rank-4 tensors
// ---------------------------------------------------------------------------

inline int perm_sign(const int* p, int n) {
  int s = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// Maps an arbitrary index tuple to (canonical slot, sign); sign 0 on repeats.
struct IndexTables {
  // triples
  std::array<int, 343> tri_slot{};
  std::array<int8_t, 343> tri_sign{};
  std::array<std::array<int, 3>, 35> tri_of_slot{};
  // quadruples
  std::array<int, 2401> quad_slot{};
  std::array<int8_t, 2401> quad_sign{};
  std::array<std::array<int, 4>, 35> quad_of_slot{};
  // complement triple of each canonical quadruple, with permutation sign of
  // (quad, complement) relative to (0..6)
  std::array<std::array<int, 3>, 35> quad_complement{};
  std::array<int8_t, 35> quad_complement_sign{};

  IndexTables() {
    int slot = 0;
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        for (int c = b + 1; c < 7; ++c) tri_of_slot[static_cast<size_t>(slot++)] = {a, b, c};
    slot = 0;
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        for (int c = b + 1; c < 7; ++c)
          for (int d = c + 1; d < 7; ++d) quad_of_slot[static_cast<size_t>(slot++)] = {a, b, c, d};

    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b)
        for (int c = 0; c < 7; ++c) {
          int idx = (a * 7 + b) * 7 + c;
          if (a == b || b == c || a == c) {
            tri_slot[static_cast<size_t>(idx)] = 0;
            tri_sign[static_cast<size_t>(idx)] = 0;
            continue;
          }
          int p[3] = {a, b, c};
          int s[3] = {a, b, c};
          std::sort(s, s + 3);
          tri_sign[static_cast<size_t>(idx)] = static_cast<int8_t>(perm_sign(p, 3));
          tri_slot[static_cast<size_t>(idx)] = slot_of_sorted_triple(s[0], s[1], s[2]);
        }

    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b)
        for (int c = 0; c < 7; ++c)
          for (int d = 0; d < 7; ++d) {
            int idx = ((a * 7 + b) * 7 + c) * 7 + d;
            if (a == b || a == c || a == d || b == c || b == d || c == d) {
              quad_slot[static_cast<size_t>(idx)] = 0;
              quad_sign[static_cast<size_t>(idx)] = 0;
              continue;
            }
            int p[4] = {a, b, c, d};
            int s[4] = {a, b, c, d};
            std::sort(s, s + 4);
            quad_sign[static_cast<size_t>(idx)] = static_cast<int8_t>(perm_sign(p, 4));
            quad_slot[static_cast<size_t>(idx)] = slot_of_sorted_quad(s[0], s[1], s[2], s[3]);
          }

    for (int q = 0; q < 35; ++q) {
      const auto& quad = quad_of_slot[static_cast<size_t>(q)];
      bool used[7] = {};
      for (int k : quad) used[k] = true;
      int full[7];
      int j = 0;
      for (int k = 0; k < 4; ++k) full[j++] = quad[static_cast<size_t>(k)];
      int c = 0;
      for (int k = 0; k < 7; ++k)
        if (!used[k]) {
          quad_complement[static_cast<size_t>(q)][static_cast<size_t>(c++)] = k;
          full[j++] = k;
        }
      quad_complement_sign[static_cast<size_t>(q)] = static_cast<int8_t>(perm_sign(full, 7));
    }
  }

  static int slot_of_sorted_triple(int a, int b, int c) {
    int slot = 0;
    for (int x = 0; x < 7; ++x)
      for (int y = x + 1; y < 7; ++y)
        for (int z = y + 1; z < 7; ++z) {
          if (x == a && y == b && z == c) return slot;
          ++slot;
        }
    return -1;
  }
  static int slot_of_sorted_quad(int a, int b, int c, int d) {
    int slot = 0;
    for (int x = 0; x < 7; ++x)
      for (int y = x + 1; y < 7; ++y)
        for (int z = y + 1; z < 7; ++z)
          for (int w = z + 1; w < 7; ++w) {
            if (x == a && y == b && z == c && w == d) return slot;
            ++slot;
          }
    return -1;
  }
};

inline const IndexTables& index_tables() {
  static const IndexTables tables;
  return tables;
}

// ---------------------------------------------------------------------------
// Deterministic RNG: identical streams on every platform
// ---------------------------------------------------------------------------

struct Rng {
  std::mt19937_64 gen;

  explicit Rng(uint64_t seed) : gen(seed) {}

  // uniform in [0,1)
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  // uniform in [-1,1)
  double sym() { return 2.0 * uniform() - 1.0; }

  Vec7 vec() {
    Vec7 v;
    for (int i = 0; i < 7; ++i) v[i] = sym();
    return v;
  }
};

// ---------------------------------------------------------------------------
// Deterministic reductions: fixed-order accumulation in extended precision
// ---------------------------------------------------------------------------

struct Accum {
  long double s = 0.0L;
  void add(double x) { s += static_cast<long double>(x); }
  double value() const { return static_cast<double>(s); }
};

// ---------------------------------------------------------------------------
// Site-parallel map: disjoint writes only, deterministic by construction
// ---------------------------------------------------------------------------

inline int& worker_threads() {
  static int n = 1;
  return n;
}

inline void parallel_for(int64_t count, const std::function<void(int64_t, int64_t)>& body) {
  int nt = worker_threads();
  if (nt <= 1 || count < 256) {
    body(0, count);
    return;
  }
  int64_t chunk = (count + nt - 1) / nt;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    int64_t lo = t * chunk;
    int64_t hi = std::min<int64_t>(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace octo
