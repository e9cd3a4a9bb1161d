#include "ratchet/grid.hpp"

#include <cassert>
#include <cmath>
#include <cstring>

namespace ratchet {

PhaseGrid::PhaseGrid(int nq_, int np_, double dp_, double hbar, double kappa)
    : nq(nq_), np(np_), dq(two_pi / (kappa * nq_)), dp(dp_), shift_stride(0) {
  assert(nq >= 4 && np >= 5 && np % 2 == 1);
  const double stride = hbar * kappa / dp;
  const double rounded = std::round(stride);
  if (rounded >= 1.0 && std::abs(stride - rounded) <= 1e-9)
    shift_stride = static_cast<int>(rounded);
}

PhaseGrid PhaseGrid::from_spec(const RunSpec& spec) {
  return PhaseGrid(spec.nq, spec.np, spec.dp(), spec.system.hbar,
                   spec.system.kappa);
}

void ddq_upwind_into(const GridField& f, const PhaseGrid& g, GridField& out) {
  assert(f.nq == g.nq && f.np == g.np && out.nq == g.nq && out.np == g.np);
  const int nq = g.nq;
  const double inv6 = 1.0 / (6.0 * g.dq);
  const double inv2 = 1.0 / (2.0 * g.dq);
  for (int ip = 0; ip < g.np; ++ip) {
    const double* r = f.row(ip);
    double* o = out.row(ip);
    const double p = g.p(ip);
    if (p > 0.0) {
      for (int j = 0; j < nq; ++j) {
        const double fp1 = r[j + 1 < nq ? j + 1 : j + 1 - nq];
        const double fm1 = r[j - 1 >= 0 ? j - 1 : j - 1 + nq];
        const double fm2 = r[j - 2 >= 0 ? j - 2 : j - 2 + nq];
        o[j] = (2.0 * fp1 + 3.0 * r[j] - 6.0 * fm1 + fm2) * inv6;
      }
    } else if (p < 0.0) {
      for (int j = 0; j < nq; ++j) {
        const double fm1 = r[j - 1 >= 0 ? j - 1 : j - 1 + nq];
        const double fp1 = r[j + 1 < nq ? j + 1 : j + 1 - nq];
        const double fp2 = r[j + 2 < nq ? j + 2 : j + 2 - nq];
        o[j] = -(2.0 * fm1 + 3.0 * r[j] - 6.0 * fp1 + fp2) * inv6;
      }
    } else {
      for (int j = 0; j < nq; ++j) {
        const double fp1 = r[j + 1 < nq ? j + 1 : j + 1 - nq];
        const double fm1 = r[j - 1 >= 0 ? j - 1 : j - 1 + nq];
        o[j] = (fp1 - fm1) * inv2;
      }
    }
  }
}

void ddp_central_into(const GridField& f, const PhaseGrid& g, GridField& out) {
  assert(f.nq == g.nq && f.np == g.np && out.nq == g.nq && out.np == g.np);
  const int nq = g.nq;
  const int np = g.np;
  const double inv12 = 1.0 / (12.0 * g.dp);
  const double inv2 = 1.0 / (2.0 * g.dp);
  for (int ip = 2; ip < np - 2; ++ip) {
    const double* m2 = f.row(ip - 2);
    const double* m1 = f.row(ip - 1);
    const double* p1 = f.row(ip + 1);
    const double* p2 = f.row(ip + 2);
    double* o = out.row(ip);
    for (int j = 0; j < nq; ++j)
      o[j] = (-p2[j] + 8.0 * p1[j] - 8.0 * m1[j] + m2[j]) * inv12;
  }
  for (int j = 0; j < nq; ++j) {
    out(j, 0) = (-3.0 * f(j, 0) + 4.0 * f(j, 1) - f(j, 2)) * inv2;
    out(j, 1) = (f(j, 2) - f(j, 0)) * inv2;
    out(j, np - 2) = (f(j, np - 1) - f(j, np - 3)) * inv2;
    out(j, np - 1) = (3.0 * f(j, np - 1) - 4.0 * f(j, np - 2) + f(j, np - 3)) * inv2;
  }
}

void d2dp2_central_into(const GridField& f, const PhaseGrid& g, GridField& out) {
  assert(f.nq == g.nq && f.np == g.np && out.nq == g.nq && out.np == g.np);
  const int nq = g.nq;
  const int np = g.np;
  const double inv12 = 1.0 / (12.0 * g.dp * g.dp);
  const double inv1 = 1.0 / (g.dp * g.dp);
  for (int ip = 2; ip < np - 2; ++ip) {
    const double* m2 = f.row(ip - 2);
    const double* m1 = f.row(ip - 1);
    const double* r0 = f.row(ip);
    const double* p1 = f.row(ip + 1);
    const double* p2 = f.row(ip + 2);
    double* o = out.row(ip);
    for (int j = 0; j < nq; ++j)
      o[j] = (-p2[j] + 16.0 * p1[j] - 30.0 * r0[j] + 16.0 * m1[j] - m2[j]) * inv12;
  }
  for (int j = 0; j < nq; ++j) {
    out(j, 0) = (2.0 * f(j, 0) - 5.0 * f(j, 1) + 4.0 * f(j, 2) - f(j, 3)) * inv1;
    out(j, 1) = (f(j, 0) - 2.0 * f(j, 1) + f(j, 2)) * inv1;
    out(j, np - 2) = (f(j, np - 3) - 2.0 * f(j, np - 2) + f(j, np - 1)) * inv1;
    out(j, np - 1) =
        (2.0 * f(j, np - 1) - 5.0 * f(j, np - 2) + 4.0 * f(j, np - 3) - f(j, np - 4)) * inv1;
  }
}

void shift_p_into(const GridField& f, const PhaseGrid& g, int direction,
                  GridField& out) {
  assert(direction == 1 || direction == -1);
  if (g.shift_stride == 0)
    throw StrideMismatch("dp does not divide hbar*kappa on this grid");
  const int s = direction * g.shift_stride;
  const int np = g.np;
  const std::size_t row_bytes = sizeof(double) * g.nq;
  for (int ip = 0; ip < np; ++ip) {
    const int src = ip + s;
    if (src >= 0 && src < np)
      std::memcpy(out.row(ip), f.row(src), row_bytes);
    else
      std::memset(out.row(ip), 0, row_bytes);
  }
}

double integrate(const GridField& f, const PhaseGrid& g, Weight w) {
  double total = 0.0;
  for (int ip = 0; ip < g.np; ++ip) {
    const double* r = f.row(ip);
    double rowsum = 0.0;
    switch (w) {
      case Weight::none:
        for (int j = 0; j < g.nq; ++j) rowsum += r[j];
        break;
      case Weight::p: {
        const double p = g.p(ip);
        for (int j = 0; j < g.nq; ++j) rowsum += p * r[j];
        break;
      }
      case Weight::p2: {
        const double p2 = g.p(ip) * g.p(ip);
        for (int j = 0; j < g.nq; ++j) rowsum += p2 * r[j];
        break;
      }
      case Weight::q:
        for (int j = 0; j < g.nq; ++j) rowsum += g.q(j) * r[j];
        break;
    }
    const double trap = (ip == 0 || ip == g.np - 1) ? 0.5 : 1.0;
    total += trap * rowsum;
  }
  return total * g.dq * g.dp;
}

GridField ddq_upwind(const GridField& f, const PhaseGrid& g) {
  GridField out(f.nq, f.np);
  ddq_upwind_into(f, g, out);
  return out;
}

GridField ddp_central(const GridField& f, const PhaseGrid& g) {
  GridField out(f.nq, f.np);
  ddp_central_into(f, g, out);
  return out;
}

GridField d2dp2_central(const GridField& f, const PhaseGrid& g) {
  GridField out(f.nq, f.np);
  d2dp2_central_into(f, g, out);
  return out;
}

GridField shift_p(const GridField& f, const PhaseGrid& g, int direction) {
  GridField out(f.nq, f.np);
  shift_p_into(f, g, direction, out);
  return out;
}

}  // namespace ratchet
