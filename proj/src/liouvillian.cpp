#include "ratchet/liouvillian.hpp"

#include <cmath>
#include <vector>

namespace ratchet {

DriveState drive_at(const SystemSpec& sys, double t) {
  return DriveState{t, sys.f1 * std::cos(sys.omega * t) +
                           sys.f2 * std::cos(2.0 * sys.omega * t + sys.theta)};
}

void LiouvillianScratch::resize(int nq, int np) {
  if (ddq.nq != nq || ddq.np != np) {
    ddq = GridField(nq, np);
    ddp = GridField(nq, np);
    up = GridField(nq, np);
    down = GridField(nq, np);
  }
}

void apply_quantum_liouvillian_into(const GridField& f, const PhaseGrid& g,
                                    const SystemSpec& sys, const DriveState& d,
                                    LiouvillianScratch& ws, GridField& out) {
  ws.resize(g.nq, g.np);
  ddq_upwind_into(f, g, ws.ddq);
  ddp_central_into(f, g, ws.ddp);
  shift_p_into(f, g, +1, ws.up);
  shift_p_into(f, g, -1, ws.down);

  std::vector<double> pot(g.nq);
  for (int j = 0; j < g.nq; ++j)
    pot[j] = -(sys.u0 / (2.0 * sys.hbar)) * std::sin(2.0 * sys.kappa * g.q(j));
  const double fc = -d.f_value;

  for (int ip = 0; ip < g.np; ++ip) {
    const double vel = -g.p(ip) / sys.mass;
    const double* a = ws.ddq.row(ip);
    const double* b = ws.ddp.row(ip);
    const double* u = ws.up.row(ip);
    const double* w = ws.down.row(ip);
    double* o = out.row(ip);
    for (int j = 0; j < g.nq; ++j)
      o[j] = vel * a[j] + fc * b[j] + pot[j] * (u[j] - w[j]);
  }
}

void apply_classical_liouvillian_into(const GridField& f, const PhaseGrid& g,
                                      const SystemSpec& sys, const DriveState& d,
                                      LiouvillianScratch& ws, GridField& out) {
  ws.resize(g.nq, g.np);
  ddq_upwind_into(f, g, ws.ddq);
  ddp_central_into(f, g, ws.ddp);

  std::vector<double> dudq(g.nq);
  for (int j = 0; j < g.nq; ++j)
    dudq[j] = -sys.u0 * sys.kappa * std::sin(2.0 * sys.kappa * g.q(j)) - d.f_value;

  for (int ip = 0; ip < g.np; ++ip) {
    const double vel = -g.p(ip) / sys.mass;
    const double* a = ws.ddq.row(ip);
    const double* b = ws.ddp.row(ip);
    double* o = out.row(ip);
    for (int j = 0; j < g.nq; ++j) o[j] = vel * a[j] + dudq[j] * b[j];
  }
}

GridField apply_quantum_liouvillian(const GridField& f, const PhaseGrid& g,
                                    const SystemSpec& sys, const DriveState& d) {
  LiouvillianScratch ws;
  GridField out(f.nq, f.np);
  apply_quantum_liouvillian_into(f, g, sys, d, ws, out);
  return out;
}

GridField apply_classical_liouvillian(const GridField& f, const PhaseGrid& g,
                                      const SystemSpec& sys, const DriveState& d) {
  LiouvillianScratch ws;
  GridField out(f.nq, f.np);
  apply_classical_liouvillian_into(f, g, sys, d, ws, out);
  return out;
}

}  // namespace ratchet
