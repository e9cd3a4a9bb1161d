#include "ratchet/hierarchy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ratchet {

namespace {

void list_j(int k_left, int budget, std::vector<int>& j,
            std::vector<HierarchyIndex>& out, int n) {
  if (k_left == 0) {
    out.push_back(HierarchyIndex{n, j});
    return;
  }
  for (int v = 0; v <= budget; ++v) {
    j.push_back(v);
    list_j(k_left - 1, budget - v, j, out, n);
    j.pop_back();
  }
}

std::vector<int> key_of(const HierarchyIndex& idx) {
  std::vector<int> key;
  key.reserve(idx.j.size() + 1);
  key.push_back(idx.n);
  key.insert(key.end(), idx.j.begin(), idx.j.end());
  return key;
}

}  // namespace

HierarchyLayout HierarchyLayout::build(int depth, int k_matsubara) {
  if (depth < 0 || k_matsubara < 0)
    throw std::logic_error("hierarchy layout needs depth >= 0, K >= 0");
  HierarchyLayout lay;
  lay.depth = depth;
  lay.k_matsubara = k_matsubara;

  std::vector<int> j;
  for (int n = 0; n <= depth; ++n)
    list_j(k_matsubara, depth - n, j, lay.indices, n);

  std::map<std::vector<int>, int> slot;
  for (int e = 0; e < lay.size(); ++e) slot[key_of(lay.indices[e])] = e;

  const int ne = lay.size();
  const int K = k_matsubara;
  lay.up_gamma.assign(ne, -1);
  lay.down_gamma.assign(ne, -1);
  lay.up_j.assign(static_cast<std::size_t>(ne) * K, -1);
  lay.down_j.assign(static_cast<std::size_t>(ne) * K, -1);
  lay.boundary.assign(ne, 0);

  for (int e = 0; e < ne; ++e) {
    const HierarchyIndex& idx = lay.indices[e];
    int sum = idx.n;
    for (int v : idx.j) sum += v;
    lay.boundary[e] = (sum == depth);

    std::vector<int> key = key_of(idx);
    key[0] = idx.n + 1;
    if (auto it = slot.find(key); it != slot.end()) lay.up_gamma[e] = it->second;
    key[0] = idx.n - 1;
    if (idx.n > 0)
      if (auto it = slot.find(key); it != slot.end())
        lay.down_gamma[e] = it->second;
    key[0] = idx.n;
    for (int k = 0; k < K; ++k) {
      key[1 + k] = idx.j[k] + 1;
      if (auto it = slot.find(key); it != slot.end())
        lay.up_j[static_cast<std::size_t>(e) * K + k] = it->second;
      key[1 + k] = idx.j[k] - 1;
      if (idx.j[k] > 0)
        if (auto it = slot.find(key); it != slot.end())
          lay.down_j[static_cast<std::size_t>(e) * K + k] = it->second;
      key[1 + k] = idx.j[k];
    }
  }
  return lay;
}

int HierarchyLayout::find(const HierarchyIndex& idx) const {
  for (int e = 0; e < size(); ++e)
    if (indices[e] == idx) return e;
  return -1;
}

HierarchyState make_state(const HierarchyLayout& lay, const PhaseGrid& g,
                          double time) {
  HierarchyState s;
  s.time = time;
  s.elements.assign(lay.size(), GridField(g.nq, g.np));
  return s;
}

void HierarchyWorkspace::resize(int n_elements, int nq, int np) {
  if (static_cast<int>(ddp.size()) != n_elements ||
      (n_elements > 0 && (ddp[0].nq != nq || ddp[0].np != np)))
    ddp.assign(n_elements, GridField(nq, np));
  if (ddq.nq != nq || ddq.np != np) {
    ddq = GridField(nq, np);
    up = GridField(nq, np);
    down = GridField(nq, np);
    d2 = GridField(nq, np);
    pw = GridField(nq, np);
    ddpw = GridField(nq, np);
  }
  force.resize(nq);
}

namespace {

void ensure_like(HierarchyState& out, const HierarchyState& s,
                 const HierarchyLayout& lay, const PhaseGrid& g) {
  if (static_cast<int>(out.elements.size()) != lay.size() ||
      (lay.size() > 0 && (out.elements[0].nq != g.nq ||
                          out.elements[0].np != g.np)))
    out = make_state(lay, g, s.time);
  out.time = s.time;
}

void sweep(GridField& o, const GridField& src, double m) {
  const std::size_t n = o.values.size();
  for (std::size_t i = 0; i < n; ++i) o.values[i] += m * src.values[i];
}

void sweep_p(GridField& o, const GridField& src, double m, const PhaseGrid& g) {
  for (int ip = 0; ip < g.np; ++ip) {
    const double mp = m * g.p(ip);
    const double* r = src.row(ip);
    double* orow = o.row(ip);
    for (int j = 0; j < g.nq; ++j) orow[j] += mp * r[j];
  }
}

}  // namespace

void rhs_quantum_into(const HierarchyState& s, const HierarchyLayout& lay,
                      const PhaseGrid& g, const SystemSpec& sys,
                      const BathSpec& bath, const HeomCoefficients& co,
                      const DriveState& d, HierarchyWorkspace& ws,
                      HierarchyState& out) {
  const int ne = lay.size();
  const int K = lay.k_matsubara;
  ws.resize(ne, g.nq, g.np);
  ensure_like(out, s, lay, g);

  for (int j = 0; j < g.nq; ++j)
    ws.force[j] =
        -(sys.u0 / (2.0 * sys.hbar)) * std::sin(2.0 * sys.kappa * g.q(j));
  for (int e = 0; e < ne; ++e) ddp_central_into(s.elements[e], g, ws.ddp[e]);

  const double fc = -d.f_value;
  const double xi = co.xi_coeff;

  for (int e = 0; e < ne; ++e) {
    const GridField& w = s.elements[e];
    GridField& o = out.elements[e];
    ddq_upwind_into(w, g, ws.ddq);
    shift_p_into(w, g, +1, ws.up);
    shift_p_into(w, g, -1, ws.down);
    d2dp2_central_into(w, g, ws.d2);

    const GridField& b = ws.ddp[e];
    for (int ip = 0; ip < g.np; ++ip) {
      const double vel = -g.p(ip) / sys.mass;
      const double* aq = ws.ddq.row(ip);
      const double* bp = b.row(ip);
      const double* u = ws.up.row(ip);
      const double* v = ws.down.row(ip);
      const double* d2 = ws.d2.row(ip);
      double* orow = o.row(ip);
      for (int j = 0; j < g.nq; ++j)
        orow[j] = vel * aq[j] + fc * bp[j] + ws.force[j] * (u[j] - v[j]) -
                  xi * d2[j];
    }
    if (lay.boundary[e]) continue;

    const HierarchyIndex& idx = lay.indices[e];
    double decay = idx.n * bath.gamma;
    for (int k = 0; k < K; ++k) decay += idx.j[k] * co.nu[k];
    sweep(o, w, -decay);

    if (lay.up_gamma[e] >= 0) sweep(o, ws.ddp[lay.up_gamma[e]], 1.0);
    for (int k = 0; k < K; ++k) {
      const int nb = lay.up_j[static_cast<std::size_t>(e) * K + k];
      if (nb >= 0) sweep(o, ws.ddp[nb], 1.0);
    }
    if (lay.down_gamma[e] >= 0) {
      const double c = idx.n * bath.gamma;
      sweep_p(o, s.elements[lay.down_gamma[e]], c * co.theta0_drift, g);
      sweep(o, ws.ddp[lay.down_gamma[e]], c * co.theta0_diff);
    }
    for (int k = 0; k < K; ++k) {
      const int nb = lay.down_j[static_cast<std::size_t>(e) * K + k];
      if (nb >= 0)
        sweep(o, ws.ddp[nb], idx.j[k] * co.nu[k] * co.thetak_diff[k]);
    }
  }
}

void rhs_classical_into(const HierarchyState& s, const HierarchyLayout& lay,
                        const PhaseGrid& g, const SystemSpec& sys,
                        const BathSpec& bath, const HeomCoefficients& co,
                        const DriveState& d, HierarchyWorkspace& ws,
                        HierarchyState& out) {
  if (lay.k_matsubara != 0)
    throw std::logic_error("classical hierarchy carries no Matsubara tiers");
  const int ne = lay.size();
  ws.resize(ne, g.nq, g.np);
  ensure_like(out, s, lay, g);

  for (int j = 0; j < g.nq; ++j)
    ws.force[j] =
        -sys.u0 * sys.kappa * std::sin(2.0 * sys.kappa * g.q(j)) - d.f_value;
  for (int e = 0; e < ne; ++e) ddp_central_into(s.elements[e], g, ws.ddp[e]);

  for (int e = 0; e < ne; ++e) {
    const GridField& w = s.elements[e];
    GridField& o = out.elements[e];
    ddq_upwind_into(w, g, ws.ddq);

    const GridField& b = ws.ddp[e];
    for (int ip = 0; ip < g.np; ++ip) {
      const double vel = -g.p(ip) / sys.mass;
      const double* aq = ws.ddq.row(ip);
      const double* bp = b.row(ip);
      double* orow = o.row(ip);
      for (int j = 0; j < g.nq; ++j)
        orow[j] = vel * aq[j] + ws.force[j] * bp[j];
    }

    const int n = lay.indices[e].n;
    sweep(o, w, -n * bath.gamma);

    if (lay.up_gamma[e] >= 0) {
      sweep(o, ws.ddp[lay.up_gamma[e]], 1.0);
    } else {
      for (int ip = 0; ip < g.np; ++ip) {
        const double p = g.p(ip);
        const double* r = w.row(ip);
        double* pr = ws.pw.row(ip);
        for (int j = 0; j < g.nq; ++j) pr[j] = p * r[j];
      }
      ddp_central_into(ws.pw, g, ws.ddpw);
      d2dp2_central_into(w, g, ws.d2);
      sweep(o, ws.ddpw, co.theta0_drift);
      sweep(o, ws.d2, co.theta0_diff);
    }
    if (lay.down_gamma[e] >= 0) {
      const double c = n * bath.gamma;
      sweep_p(o, s.elements[lay.down_gamma[e]], c * co.theta0_drift, g);
      sweep(o, ws.ddp[lay.down_gamma[e]], c * co.theta0_diff);
    }
  }
}

void rhs_into(const HierarchyState& s, const HierarchyLayout& lay,
              const PhaseGrid& g, const SystemSpec& sys, const BathSpec& bath,
              const HeomCoefficients& co, const DriveState& d,
              HierarchyWorkspace& ws, HierarchyState& out) {
  if (sys.mode == Mode::classical)
    rhs_classical_into(s, lay, g, sys, bath, co, d, ws, out);
  else
    rhs_quantum_into(s, lay, g, sys, bath, co, d, ws, out);
}

}  // namespace ratchet
