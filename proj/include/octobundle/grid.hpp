#pragma once

// Periodic flat 7-torus discretization. A Grid activates a subset of the seven
// axes; fields are constant along inactive axes and store one value per site
// of the active sublattice. Coordinates run over [0, 2pi) with spacing
// h = 2pi/n, and integration is normalized so that the full torus has volume
// (2pi)^7.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "octobundle/algebra.hpp"

namespace octo {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Grid {
  int n = 0;                  // sites per active axis, even, >= 4
  std::vector<int> axes;      // active axes, 0-based, strictly increasing
  double h = 0.0;             // 2pi/n
  int64_t sites = 0;          // n^|axes|

  Grid() = default;
  Grid(int n_, std::vector<int> active) : n(n_), axes(std::move(active)) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 4");
    if (axes.empty() || axes.size() > 7) throw std::invalid_argument("Grid: need 1..7 active axes");
    for (size_t i = 0; i < axes.size(); ++i) {
      if (axes[i] < 0 || axes[i] >= 7) throw std::invalid_argument("Grid: axis out of range");
      if (i > 0 && axes[i] <= axes[i - 1])
        throw std::invalid_argument("Grid: axes must be strictly increasing");
    }
    h = kTwoPi / n;
    sites = 1;
    for (size_t i = 0; i < axes.size(); ++i) sites *= n;
  }

  int rank() const { return static_cast<int>(axes.size()); }

  bool active(int axis) const {
    for (int a : axes)
      if (a == axis) return true;
    return false;
  }

  // position of axis within the active list, -1 if inactive
  int axis_slot(int axis) const {
    for (size_t i = 0; i < axes.size(); ++i)
      if (axes[i] == axis) return static_cast<int>(i);
    return -1;
  }

  // site <-> multi-index (first active axis varies slowest)
  void unpack(int64_t site, int* idx) const {
    for (int k = rank() - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(site % n);
      site /= n;
    }
  }
  int64_t pack(const int* idx) const {
    int64_t s = 0;
    for (int k = 0; k < rank(); ++k) s = s * n + idx[k];
    return s;
  }

  // site shifted by +/-1 along an ACTIVE axis slot, with periodic wrap
  int64_t shift(int64_t site, int slot, int dir) const {
    int idx[7];
    unpack(site, idx);
    idx[slot] = (idx[slot] + dir + n) % n;
    return pack(idx);
  }

  // coordinate 7-vector of a site (inactive axes at 0)
  Vec7 coords(int64_t site) const {
    int idx[7];
    unpack(site, idx);
    Vec7 x{};
    for (int k = 0; k < rank(); ++k) x[axes[static_cast<size_t>(k)]] = idx[k] * h;
    return x;
  }

  // cell volume: inactive axes contribute their full 2pi period
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < 7; ++a) v *= active(a) ? h : kTwoPi;
    return v;
  }

  bool operator==(const Grid& o) const { return n == o.n && axes == o.axes; }
};

// ---------------------------------------------------------------------------
// Field containers
// ---------------------------------------------------------------------------

struct OctField {
  Grid grid;
  std::vector<Octonion> data;

  OctField() = default;
  explicit OctField(const Grid& g) : grid(g), data(static_cast<size_t>(g.sites)) {}

  Octonion& operator[](int64_t s) { return data[static_cast<size_t>(s)]; }
  const Octonion& operator[](int64_t s) const { return data[static_cast<size_t>(s)]; }

  bool unit_norm(double tol = 1e-12) const {
    for (const auto& a : data)
      if (std::abs(norm2(a) - 1.0) >= tol) return false;
    return true;
  }
};

// Octonion-valued 1-form: 7 octonion slots per site.
struct OctOneForm {
  Grid grid;
  std::vector<std::array<Octonion, 7>> data;

  OctOneForm() = default;
  explicit OctOneForm(const Grid& g) : grid(g), data(static_cast<size_t>(g.sites)) {}

  std::array<Octonion, 7>& operator[](int64_t s) { return data[static_cast<size_t>(s)]; }
  const std::array<Octonion, 7>& operator[](int64_t s) const {
    return data[static_cast<size_t>(s)];
  }
};

// Octonion-valued 2-form: 21 antisymmetric-pair slots per site, pairs (a<b)
// in lexicographic order.
struct OctTwoForm {
  Grid grid;
  std::vector<std::array<Octonion, 21>> data;

  OctTwoForm() = default;
  explicit OctTwoForm(const Grid& g) : grid(g), data(static_cast<size_t>(g.sites)) {}

  static int pair_slot(int a, int b) {  // requires a < b
    return a * 7 - a * (a + 1) / 2 + (b - a - 1);
  }

  Octonion get(int64_t s, int a, int b) const {
    if (a == b) return Octonion{};
    if (a < b) return data[static_cast<size_t>(s)][static_cast<size_t>(pair_slot(a, b))];
    return -1.0 * data[static_cast<size_t>(s)][static_cast<size_t>(pair_slot(b, a))];
  }
  void set(int64_t s, int a, int b, const Octonion& v) {
    if (a < b)
      data[static_cast<size_t>(s)][static_cast<size_t>(pair_slot(a, b))] = v;
    else
      data[static_cast<size_t>(s)][static_cast<size_t>(pair_slot(b, a))] = -1.0 * v;
  }
};

// Octonion-valued 3-form: 35 canonical-triple slots per site.
struct OctThreeForm {
  Grid grid;
  std::vector<std::array<Octonion, 35>> data;

  OctThreeForm() = default;
  explicit OctThreeForm(const Grid& g) : grid(g), data(static_cast<size_t>(g.sites)) {}

  Octonion get(int64_t s, int a, int b, int c) const {
    const auto& t = index_tables();
    int idx = (a * 7 + b) * 7 + c;
    int8_t sg = t.tri_sign[static_cast<size_t>(idx)];
    if (sg == 0) return Octonion{};
    Octonion v = data[static_cast<size_t>(s)][static_cast<size_t>(t.tri_slot[static_cast<size_t>(idx)])];
    return sg > 0 ? v : -1.0 * v;
  }
};

struct ScalarField {
  Grid grid;
  std::vector<double> data;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), data(static_cast<size_t>(g.sites), 0.0) {}

  double& operator[](int64_t s) { return data[static_cast<size_t>(s)]; }
  double operator[](int64_t s) const { return data[static_cast<size_t>(s)]; }

  double max_abs() const {
    double m = 0;
    for (double x : data) m = std::max(m, std::abs(x));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Derivatives and integration
// ---------------------------------------------------------------------------

// Central difference (f(x+h) - f(x-h)) / 2h along a coordinate axis; fields
// are constant along inactive axes, so those derivatives are zero fields.
inline OctField ddx(const OctField& f, int axis) {
  OctField out(f.grid);
  int slot = f.grid.axis_slot(axis);
  if (slot < 0) return out;
  double inv2h = 1.0 / (2.0 * f.grid.h);
  parallel_for(f.grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      int64_t up = f.grid.shift(s, slot, +1);
      int64_t dn = f.grid.shift(s, slot, -1);
      out[s] = (f[dn] * -1.0 + f[up]) * inv2h;
    }
  });
  return out;
}

inline ScalarField ddx(const ScalarField& f, int axis) {
  ScalarField out(f.grid);
  int slot = f.grid.axis_slot(axis);
  if (slot < 0) return out;
  double inv2h = 1.0 / (2.0 * f.grid.h);
  for (int64_t s = 0; s < f.grid.sites; ++s)
    out[s] = (f[f.grid.shift(s, slot, +1)] - f[f.grid.shift(s, slot, -1)]) * inv2h;
  return out;
}

// Riemann sum times cell volume; fixed-order extended-precision accumulation.
inline double integrate(const ScalarField& f) {
  Accum acc;
  for (double x : f.data) acc.add(x);
  return acc.value() * f.grid.cell_volume();
}

// L2 pairings of octonion fields / 1-forms / 2-forms under the lattice volume.
inline double l2_pair(const OctField& a, const OctField& b) {
  Accum acc;
  for (int64_t s = 0; s < a.grid.sites; ++s) acc.add(inner(a[s], b[s]));
  return acc.value() * a.grid.cell_volume();
}

inline double l2_pair(const OctOneForm& a, const OctOneForm& b) {
  Accum acc;
  for (int64_t s = 0; s < a.grid.sites; ++s)
    for (int i = 0; i < 7; ++i) acc.add(inner(a[s][static_cast<size_t>(i)], b[s][static_cast<size_t>(i)]));
  return acc.value() * a.grid.cell_volume();
}

inline double l2_pair(const OctTwoForm& a, const OctTwoForm& b) {
  Accum acc;
  for (int64_t s = 0; s < a.grid.sites; ++s)
    for (int k = 0; k < 21; ++k)
      acc.add(inner(a.data[static_cast<size_t>(s)][static_cast<size_t>(k)],
                    b.data[static_cast<size_t>(s)][static_cast<size_t>(k)]));
  return acc.value() * a.grid.cell_volume();
}

inline double l2_pair(const OctThreeForm& a, const OctThreeForm& b) {
  Accum acc;
  for (int64_t s = 0; s < a.grid.sites; ++s)
    for (int k = 0; k < 35; ++k)
      acc.add(inner(a.data[static_cast<size_t>(s)][static_cast<size_t>(k)],
                    b.data[static_cast<size_t>(s)][static_cast<size_t>(k)]));
  return acc.value() * a.grid.cell_volume();
}

template <typename FieldT>
double l2_norm(const FieldT& f) {
  return std::sqrt(std::max(0.0, l2_pair(f, f)));
}

inline double linf(const OctField& f) {
  double m = 0;
  for (const auto& a : f.data) m = std::max(m, max_abs(a));
  return m;
}

inline double linf(const OctOneForm& f) {
  double m = 0;
  for (const auto& site : f.data)
    for (const auto& a : site) m = std::max(m, max_abs(a));
  return m;
}

// ---------------------------------------------------------------------------
// Smooth periodic unit fields
// ---------------------------------------------------------------------------

struct FieldMode {
  int axis = 0;        // 0-based coordinate axis; must be active
  double freq = 1.0;   // integer frequency keeps the field periodic
  double amp = 0.0;
  Vec7 dir{};          // direction in Im O
};

// V(x) = exp_im( sum_k amp_k sin(freq_k x_axis) dir_k ): unit norm per site.
inline OctField make_unit_field(const Grid& grid, const std::vector<FieldMode>& modes) {
  for (const auto& m : modes)
    if (!grid.active(m.axis))
      throw std::domain_error("make_unit_field: mode on inactive axis " +
                              std::to_string(m.axis + 1));
  OctField out(grid);
  parallel_for(grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      Vec7 x = grid.coords(s);
      Vec7 arg{};
      for (const auto& m : modes) arg += m.amp * std::sin(m.freq * x[m.axis]) * m.dir;
      out[s] = exp_im(arg);
    }
  });
  return out;
}

}  // namespace octo
