// Temperature scans: the bell-shaped J_max(T) window, the quantum/classical
// crossing of the current at low temperature, and the negativity signature
// that separates the two dynamics. Several full theta sweeps per claim, so
// this binary carries most of the suite's runtime.

#include <cmath>
#include <cstdio>
#include <utility>

#include "ratchet/observables.hpp"
#include "ratchet/propagate.hpp"
#include "ratchet/sweep.hpp"
#include "support/checks.hpp"

using namespace ratchet;

namespace {

// The scans run at gamma = 10. At gamma = 1 the damping felt at the intrawell
// frequency w0 = 2 is zeta*gamma^2/(gamma^2 + w0^2) = 0.02, and a cold
// distribution (sigma_p ~ 2 grid cells at beta = 5) shears into sub-grid
// filaments faster than that can smooth them: beta = 5 blows up by t = 44 at
// depth 5 and silently corrupts at depth 2 (norm off by 9e-2 after sixteen
// driven periods). With the cutoff at 10 the friction is flat across the
// filament band and the same runs hold norm to 1e-5 for the whole scan, with
// the current insensitive to hierarchy depth at the 2% level.
ThetaSweep window_sweep(double beta, int np, double pmax) {
  RunSpec s = checks::classical_spec(2.0, beta);
  s.bath.gamma = 10.0;
  s.bath.depth = 4;
  s.np = np;
  s.pmax = pmax;
  s.dt = 0.01;
  s.t_equil = 200.0;
  s.max_periods = 20;
  s.steady_tol = 0.01;
  return sweep_theta(s, 8);
}

// Both members of a crossing pair share every physical parameter and the
// grid; only the dynamics differs. The cutoff sits at gamma = 3: high enough
// to damp the classical cold filaments (gamma = 1 explodes at t = 147 for
// U0 = 1), low enough that the first two Matsubara frequencies at beta = 3
// (2.09 and 4.19) still frame the quantum bath structure at K = 2.
RunSpec crossing_spec(double u0, Mode mode) {
  RunSpec s = checks::classical_spec(u0, 3.0);
  s.system.mode = mode;
  s.bath.gamma = 3.0;
  s.bath.depth = 4;
  s.np = 161;
  s.pmax = 8.0;
  s.dt = 0.01;
  s.t_equil = 200.0;
  s.steady_tol = 0.01;
  if (mode == Mode::quantum) {
    s.bath.k_matsubara = 2;
    s.max_periods = 12;
  } else {
    s.max_periods = 16;
  }
  return s;
}

struct WindowScan {
  ThetaSweep hot, mid, cold;
};

std::string sweep_health(const char* tag, const ThetaSweep& sw) {
  const auto& last = sw.points[2].periods.back();
  return checks::says(
      "%s: residual %.1f%% of J_max, %d/8 steady, norm-1 = %+.1e, neg = %.1e",
      tag, 100.0 * sw.fit.residual_rms / sw.fit.j_max, sw.n_converged,
      last.norm - 1.0, last.negativity);
}

WindowScan temperature_window() {
  WindowScan w;
  w.hot = window_sweep(0.5, 161, 8.0);
  w.mid = window_sweep(2.0, 121, 6.0);
  w.cold = window_sweep(5.0, 121, 6.0);
  const bool ok = w.mid.fit.j_max > w.hot.fit.j_max &&
                  w.mid.fit.j_max > w.cold.fit.j_max;
  checks::verdict(
      ok, "the rectified current peaks at intermediate temperature (U0 = 2)",
      checks::says("J_max = %.3e / %.3e / %.3e at beta = 0.5 / 2 / 5",
                   w.hot.fit.j_max, w.mid.fit.j_max, w.cold.fit.j_max));
  checks::note(sweep_health("beta 0.5", w.hot));
  checks::note(sweep_health("beta 2  ", w.mid));
  checks::note(sweep_health("beta 5  ", w.cold));
  return w;
}

// Returns the shallow-well quantum sweep; the negativity check reads its
// steady state.
ThetaSweep quantum_classical_crossing() {
  ThetaSweep q_deep = sweep_theta(crossing_spec(4.0, Mode::quantum), 8);
  ThetaSweep c_deep = sweep_theta(crossing_spec(4.0, Mode::classical), 8);
  ThetaSweep q_shallow = sweep_theta(crossing_spec(1.0, Mode::quantum), 8);
  ThetaSweep c_shallow = sweep_theta(crossing_spec(1.0, Mode::classical), 8);
  const bool deep = q_deep.fit.j_max > c_deep.fit.j_max;
  const bool shallow = q_shallow.fit.j_max < c_shallow.fit.j_max;
  checks::verdict(
      deep && shallow,
      "at beta = 3 the quantum current beats the classical one only in the "
      "deep well",
      checks::says("U0 = 4: quantum J_max = %.3e vs classical %.3e; "
                   "U0 = 1: quantum %.3e vs classical %.3e",
                   q_deep.fit.j_max, c_deep.fit.j_max, q_shallow.fit.j_max,
                   c_shallow.fit.j_max));
  checks::note(
      "the deep classical current sits at the thermal-activation floor "
      "(exp(-beta*U0) = 6e-6), so barrier crossing there is quantum or not "
      "at all");
  checks::note(sweep_health("U0 4 quantum  ", q_deep));
  checks::note(sweep_health("U0 4 classical", c_deep));
  checks::note(sweep_health("U0 1 quantum  ", q_shallow));
  checks::note(sweep_health("U0 1 classical", c_shallow));
  return q_shallow;
}

void negativity_signature(const WindowScan& w, const ThetaSweep& q_shallow) {
  RunSpec q = checks::quantum_spec(1.0, 3.0);
  HierarchyState qst = equilibrate(q);
  const double neg_q =
      diagnostics(qst, PhaseGrid::from_spec(q)).negativity;
  const double neg_q_driven = q_shallow.points[2].periods.back().negativity;

  RunSpec c = checks::classical_spec(2.0, 1.0);
  HierarchyState cst = equilibrate(c);
  cst = checks::settle_free(std::move(cst), c, 100.0);
  const double neg_rest = diagnostics(cst, PhaseGrid::from_spec(c)).negativity;
  const double neg_hot = w.hot.points[2].periods.back().negativity;
  const double neg_mid = w.mid.points[2].periods.back().negativity;
  const double neg_cold = w.cold.points[2].periods.back().negativity;

  const bool quantum_ok = neg_q > 1e-6 && neg_q_driven > 1e-6;
  const bool classical_ok = neg_rest < 1e-12 && neg_hot < 1e-12 &&
                            neg_mid < 1e-12 && neg_cold < 1e-12;
  checks::verdict(
      quantum_ok && classical_ok,
      "negative phase-space regions appear in quantum runs only",
      checks::says("quantum: settled %.1e, driven %.1e (want > 1e-6); "
                   "classical: settled %.1e, driven %.1e / %.1e / %.1e at "
                   "beta = 0.5 / 2 / 5 (want < 1e-12)",
                   neg_q, neg_q_driven, neg_rest, neg_hot, neg_mid, neg_cold));
  checks::note(
      "the classical driven values are third-order-upwind undershoot at "
      "sheared cold edges, not dynamics: they carry no hbar dependence, "
      "vanish on settled smooth states (the settled and hot entries), and "
      "at beta = 5 the grid's own stationary state is not representable "
      "nonnegatively (neg = 1.2e-3 immediately after equilibration, drive "
      "off). The 1e-12 target is only reachable where the state stays "
      "stencil-resolved; driven cold scans sit orders above it on any grid "
      "this size.");
}

}  // namespace

int main() {
  WindowScan w = temperature_window();
  ThetaSweep q_shallow = quantum_classical_crossing();
  negativity_signature(w, q_shallow);
  return checks::summary("acceptance_slow");
}
