#pragma once

#include "ratchet/grid.hpp"

namespace ratchet {

struct DriveState {
  double t = 0.0;
  double f_value = 0.0;
};

// F(t) = f1 cos(omega t) + f2 cos(2 omega t + theta)
DriveState drive_at(const SystemSpec& sys, double t);

// Derivative fields reused across applications; resized on demand.
struct LiouvillianScratch {
  GridField ddq, ddp, up, down;
  void resize(int nq, int np);
};

// out = -L_QM f: upwind advection, the cos^2 potential as an exact +-hbar
// kappa shift pair, and the linear drive as a plain d/dp (linear potentials
// carry no quantum correction).
void apply_quantum_liouvillian_into(const GridField& f, const PhaseGrid& g,
                                    const SystemSpec& sys, const DriveState& d,
                                    LiouvillianScratch& ws, GridField& out);

// out = -L_CL f with dU/dq = -u0 kappa sin(2 kappa q) - F(t)
void apply_classical_liouvillian_into(const GridField& f, const PhaseGrid& g,
                                      const SystemSpec& sys, const DriveState& d,
                                      LiouvillianScratch& ws, GridField& out);

GridField apply_quantum_liouvillian(const GridField& f, const PhaseGrid& g,
                                    const SystemSpec& sys, const DriveState& d);
GridField apply_classical_liouvillian(const GridField& f, const PhaseGrid& g,
                                      const SystemSpec& sys, const DriveState& d);

}  // namespace ratchet
