#pragma once

#include <cstddef>
#include <vector>

#include "ratchet/config.hpp"

namespace ratchet {

// Discretized phase space: q periodic on [0, 2pi/kappa) (two potential
// periods), p symmetric about 0 with odd np. The quantum kernel needs
// hbar*kappa to be an exact multiple of dp; shift_stride holds that multiple,
// or 0 when it is not integral (classical grids).
struct PhaseGrid {
  int nq;
  int np;
  double dq;
  double dp;
  int shift_stride;

  PhaseGrid(int nq_, int np_, double dp_, double hbar = 1.0, double kappa = 1.0);
  static PhaseGrid from_spec(const RunSpec& spec);

  double q(int j) const { return j * dq; }
  double p(int i) const { return (i - (np - 1) / 2) * dp; }
  double pmax() const { return ((np - 1) / 2) * dp; }
  std::size_t size() const { return static_cast<std::size_t>(nq) * np; }
};

// Row-major samples, q fastest: values[ip*nq + iq].
struct GridField {
  int nq = 0;
  int np = 0;
  std::vector<double> values;

  GridField() = default;
  GridField(int nq_, int np_)
      : nq(nq_), np(np_), values(static_cast<std::size_t>(nq_) * np_, 0.0) {}

  double& operator()(int iq, int ip) {
    return values[static_cast<std::size_t>(ip) * nq + iq];
  }
  double operator()(int iq, int ip) const {
    return values[static_cast<std::size_t>(ip) * nq + iq];
  }
  double* row(int ip) { return values.data() + static_cast<std::size_t>(ip) * nq; }
  const double* row(int ip) const {
    return values.data() + static_cast<std::size_t>(ip) * nq;
  }
};

// d/dq, third-order upwind biased by the sign of p on each row (left-handed
// for p > 0, right-handed for p < 0, centered second-order on the p = 0 row),
// periodic in q.
void ddq_upwind_into(const GridField& f, const PhaseGrid& g, GridField& out);
GridField ddq_upwind(const GridField& f, const PhaseGrid& g);

// d/dp and d2/dp2, five-point fourth-order central in the interior; rows
// 1 and np-2 fall back to three-point central, rows 0 and np-1 to one-sided
// second-order stencils.
void ddp_central_into(const GridField& f, const PhaseGrid& g, GridField& out);
GridField ddp_central(const GridField& f, const PhaseGrid& g);
void d2dp2_central_into(const GridField& f, const PhaseGrid& g, GridField& out);
GridField d2dp2_central(const GridField& f, const PhaseGrid& g);

// f(q, p + direction*hbar*kappa) as an exact lattice shift by shift_stride
// rows; cells shifted past +-pmax are dropped, vacated cells become 0.
void shift_p_into(const GridField& f, const PhaseGrid& g, int direction,
                  GridField& out);
GridField shift_p(const GridField& f, const PhaseGrid& g, int direction);

enum class Weight { none, p, p2, q };

// Trapezoid in p, periodic rectangle rule in q.
double integrate(const GridField& f, const PhaseGrid& g, Weight w = Weight::none);

}  // namespace ratchet
