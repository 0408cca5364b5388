#pragma once

// Torsion energy E(V) = 1/2 int |DV|^2 on unit octonion fields and its
// normalized gradient flow toward divergence-free torsion (the octonionic
// Coulomb gauge). Explicit Euler steps with renormalization back to the unit
// sphere bundle; steps are accepted only if the energy does not increase,
// otherwise the step size is halved down to dt_min.

#include "octobundle/dirac.hpp"

namespace octo {

enum class FlowStop { Running, Converged, MaxSteps, Stiff };

struct FlowState {
  OctField V;
  double t = 0.0;
  double energy = 0.0;
  double grad_norm = 0.0;   // L-inf of D*DV - |DV|^2 V
  double div_T_norm = 0.0;  // L-inf of div T^(V), the convergence metric
  int64_t step_count = 0;
  FlowStop stop = FlowStop::Running;
};

struct FlowParams {
  double dt0 = 0.1;
  int64_t max_steps = 10000;
  double tol = 1e-8;                // on the div T^(V) sup norm
  double dt_min_factor = 1e-12;     // dt_min = dt_min_factor * dt0
  int64_t trace_stride = 1;         // record every k-th accepted step
};

struct FlowTraceRow {
  int64_t step;
  double t;
  double energy;
  double grad_norm;
  double div_T_inf;
  double tau1_L2;
  double tau7_L2;
  double tau14_L2;
  double tau27_L2;
};

// E(V) = 1/2 int |DV|^2; equals 1/2 int |T^(V)|^2 for unit V.
inline double energy(const OctField& V, const TorsionField& T,
                     const StructureConstants& sc = StructureConstants::standard()) {
  OctOneForm DV = cov_d(V, T, sc);
  return 0.5 * l2_pair(DV, DV);
}

// G = D*DV - |DV|^2 V, the constrained Euler-Lagrange operator; integrated
// <G, V> vanishes exactly by discrete adjointness.
inline OctField euler_gradient(const OctField& V, const TorsionField& T,
                               const StructureConstants& sc = StructureConstants::standard()) {
  OctOneForm DV = cov_d(V, T, sc);
  OctField G = codiff(DV, T, sc);
  parallel_for(V.grid.sites, [&](int64_t lo, int64_t hi) {
    for (int64_t s = lo; s < hi; ++s) {
      double dv2 = 0;
      for (int i = 0; i < 7; ++i) dv2 += norm2(DV[s][static_cast<size_t>(i)]);
      G[s] -= dv2 * V[s];
    }
  });
  return G;
}

namespace detail {

inline void refresh_diagnostics(FlowState& st, const TorsionField& T,
                                const StructureConstants& sc) {
  st.energy = energy(st.V, T, sc);
  st.grad_norm = linf(euler_gradient(st.V, T, sc));
  TorsionField tv = torsion_of_gauge(st.V, T, sc).torsion;
  st.div_T_norm = linf(div_torsion(tv));
}

inline FlowTraceRow trace_row(const FlowState& st, const TorsionField& T,
                              const StructureConstants& sc) {
  TorsionField tv = torsion_of_gauge(st.V, T, sc).torsion;
  const Grid& g = st.V.grid;
  ScalarField t1(g), t7(g), t14(g), t27(g);
  for (int64_t s = 0; s < g.sites; ++s) {
    const TorsionComponents& c = tv.comps[static_cast<size_t>(s)];
    t1[s] = c.tau1 * c.tau1;
    t7[s] = dot(c.tau7, c.tau7);
    t14[s] = frobenius2(c.tau14);
    t27[s] = frobenius2(c.tau27);
  }
  auto l2 = [](const ScalarField& f) { return std::sqrt(std::max(0.0, integrate(f))); };
  return {st.step_count, st.t,  st.energy, st.grad_norm, st.div_T_norm,
          l2(t1),        l2(t7), l2(t14),   l2(t27)};
}

}  // namespace detail

// One explicit-Euler step with renormalization; halves dt on energy increase.
// Returns true if a step was accepted, false if the flow went stiff.
inline bool flow_step(FlowState& st, const TorsionField& T, double& dt, double dt_min,
                      const StructureConstants& sc = StructureConstants::standard()) {
  OctField G = euler_gradient(st.V, T, sc);
  while (true) {
    OctField trial(st.V.grid);
    for (int64_t s = 0; s < st.V.grid.sites; ++s) {
      Octonion v = st.V[s] - dt * G[s];
      double n = norm(v);
      if (!(n > 0.0)) {
        n = 1.0;
        v = Octonion::one();
      }
      trial[s] = v * (1.0 / n);
    }
    double e_trial = energy(trial, T, sc);
    if (e_trial <= st.energy) {
      st.V = std::move(trial);
      st.t += dt;
      st.energy = e_trial;
      st.step_count += 1;
      return true;
    }
    dt *= 0.5;
    if (dt < dt_min) {
      st.stop = FlowStop::Stiff;
      return false;
    }
  }
}

struct FlowResult {
  FlowState state;
  std::vector<FlowTraceRow> trace;
};

inline FlowResult run_flow(const OctField& V0, const TorsionField& T, const FlowParams& params,
                           const StructureConstants& sc = StructureConstants::standard()) {
  if (!(params.dt0 > 0.0)) throw std::invalid_argument("run_flow: dt0 must be positive");
  if (!V0.unit_norm(1e-10)) throw std::domain_error("run_flow: V0 is not unit-norm");

  FlowResult out;
  FlowState& st = out.state;
  st.V = V0;
  detail::refresh_diagnostics(st, T, sc);
  out.trace.push_back(detail::trace_row(st, T, sc));

  double dt = params.dt0;
  double dt_min = params.dt_min_factor * params.dt0;
  while (true) {
    if (st.div_T_norm < params.tol) {
      st.stop = FlowStop::Converged;
      break;
    }
    if (st.step_count >= params.max_steps) {
      st.stop = FlowStop::MaxSteps;
      break;
    }
    if (!flow_step(st, T, dt, dt_min, sc)) break;  // stiff
    st.grad_norm = linf(euler_gradient(st.V, T, sc));
    TorsionField tv = torsion_of_gauge(st.V, T, sc).torsion;
    st.div_T_norm = linf(div_torsion(tv));
    if (st.step_count % params.trace_stride == 0)
      out.trace.push_back(detail::trace_row(st, T, sc));
  }
  if (out.trace.empty() || out.trace.back().step != st.step_count)
    out.trace.push_back(detail::trace_row(st, T, sc));
  return out;
}

}  // namespace octo
