#pragma once

#include <vector>

#include "ratchet/bath.hpp"
#include "ratchet/config.hpp"
#include "ratchet/grid.hpp"
#include "ratchet/hierarchy.hpp"

namespace ratchet {

// Configured dt clamped to half the advection limits of the grid:
// dt <= 0.5 * min(dq*m/pmax, dp/(U0*kappa + |F1| + |F2|)).
double effective_dt(const RunSpec& spec);

// Normalized thermal W^(0) (classical Boltzmann weight in the bare
// potential), all auxiliaries zero, clock at 0.
HierarchyState boltzmann_seed(const RunSpec& spec);

// Owns layout, grid, coefficients, and the step temporaries.
struct Stepper {
  PhaseGrid grid;
  HierarchyLayout layout;
  SystemSpec sys;
  BathSpec bath;
  HeomCoefficients co;

  explicit Stepper(const RunSpec& spec);

  // Classic four-stage step from y.time to y.time + dt, drive sampled at
  // the stage times. Throws NumericalBlowup when the updated state leaves
  // [-1e6, 1e6] or stops being finite.
  void step(HierarchyState& y, double dt, bool drive_on);

 private:
  HierarchyWorkspace ws_;
  HierarchyState k_, ytmp_, acc_;

  void rhs(const HierarchyState& y, double t, bool drive_on,
           HierarchyState& out);
};

struct EquilibrationReport {
  double t_final = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;
};

// Relaxes the thermal seed with the drive off until both |d<p>/dt| and the
// relative drift of <p^2> per unit time stay below steady_tol for two
// consecutive probe windows. A frictionless bath cannot relax, so zeta = 0
// throws immediately; so does reaching t_equil without settling.
HierarchyState equilibrate(const RunSpec& spec,
                           EquilibrationReport* report = nullptr);

// Same relaxation loop from a caller-supplied state (clock restarts at 0).
HierarchyState equilibrate_from(HierarchyState state, const RunSpec& spec,
                                EquilibrationReport* report = nullptr);

struct PeriodRecord {
  int index = 0;
  double t_start = 0.0;
  double j = 0.0;
  double norm = 0.0;
  double negativity = 0.0;
};

struct DrivenResult {
  std::vector<PeriodRecord> periods;
  double j = 0.0;       // last period average
  bool steady = false;  // false when max_periods ran out first
  HierarchyState state;
};

// Switches the drive on at t = 0 and integrates whole periods. Each period
// records J_n, the trapezoid average of <p(t)>/T over its steps; the run
// stops once |J_n - J_{n-1}| < steady_tol * max(|J_n|, 1e-6).
DrivenResult run_driven(HierarchyState state, const RunSpec& spec);

}  // namespace ratchet
