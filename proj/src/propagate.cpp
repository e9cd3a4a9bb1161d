#include "ratchet/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ratchet/errors.hpp"
#include "ratchet/liouvillian.hpp"
#include "ratchet/observables.hpp"

namespace ratchet {

namespace {

int layout_k(const RunSpec& spec) {
  return spec.system.mode == Mode::classical ? 0 : spec.bath.k_matsubara;
}

void match_shape(HierarchyState& s, const HierarchyState& ref) {
  s.elements.resize(ref.elements.size());
  for (std::size_t e = 0; e < ref.elements.size(); ++e) {
    const GridField& r = ref.elements[e];
    if (s.elements[e].nq != r.nq || s.elements[e].np != r.np)
      s.elements[e] = GridField(r.nq, r.np);
  }
}

// out = y + c*k
void blend(HierarchyState& out, const HierarchyState& y, double c,
           const HierarchyState& k) {
  for (std::size_t e = 0; e < y.elements.size(); ++e) {
    const double* yv = y.elements[e].values.data();
    const double* kv = k.elements[e].values.data();
    double* ov = out.elements[e].values.data();
    const std::size_t n = y.elements[e].values.size();
    for (std::size_t i = 0; i < n; ++i) ov[i] = yv[i] + c * kv[i];
  }
}

void accumulate(HierarchyState& acc, const HierarchyState& k, double w) {
  for (std::size_t e = 0; e < acc.elements.size(); ++e) {
    const double* kv = k.elements[e].values.data();
    double* av = acc.elements[e].values.data();
    const std::size_t n = acc.elements[e].values.size();
    for (std::size_t i = 0; i < n; ++i) av[i] += w * kv[i];
  }
}

// Absorbing wall at |p| = pmax: the outer two rows are pinned to zero so the
// one-sided edge stencils never feed a self-amplifying mode back into the
// friction couplings. The physical distribution is negligible out there.
void absorb_edges(GridField& f) {
  for (int ip : {0, 1, f.np - 2, f.np - 1}) {
    double* r = f.row(ip);
    std::fill(r, r + f.nq, 0.0);
  }
}

void absorb_edges(HierarchyState& y) {
  for (GridField& f : y.elements) absorb_edges(f);
}

}  // namespace

double effective_dt(const RunSpec& spec) {
  const SystemSpec& s = spec.system;
  double bound = 0.5 * spec.dq() * s.mass / spec.pmax;
  const double fmax = s.u0 * s.kappa + std::abs(s.f1) + std::abs(s.f2);
  if (fmax > 0.0) bound = std::min(bound, 0.5 * spec.dp() / fmax);
  // The momentum diffusion carried by the closure and the drift-diffusion
  // couplings caps an explicit step at ~0.5*dp^2/D; keep a margin under it.
  const HeomCoefficients co = heom_coefficients(s, spec.bath);
  const double d = co.theta0_diff + std::abs(co.xi_coeff);
  if (d > 0.0)
    bound = std::min(bound, 0.35 * spec.dp() * spec.dp() / d);
  return std::min(spec.dt, bound);
}

HierarchyState boltzmann_seed(const RunSpec& spec) {
  const PhaseGrid g = PhaseGrid::from_spec(spec);
  const HierarchyLayout lay =
      HierarchyLayout::build(spec.bath.depth, layout_k(spec));
  HierarchyState state = make_state(lay, g);

  const SystemSpec& sys = spec.system;
  GridField& w0 = state.elements[0];
  for (int ip = 0; ip < g.np; ++ip) {
    const double kin = g.p(ip) * g.p(ip) / (2.0 * sys.mass);
    for (int j = 0; j < g.nq; ++j) {
      const double c = std::cos(sys.kappa * g.q(j));
      w0(j, ip) = std::exp(-spec.bath.beta * (kin + sys.u0 * c * c));
    }
  }
  absorb_edges(w0);
  const double z = integrate(w0, g);
  for (double& v : w0.values) v /= z;
  return state;
}

Stepper::Stepper(const RunSpec& spec)
    : grid(PhaseGrid::from_spec(spec)),
      layout(HierarchyLayout::build(spec.bath.depth, layout_k(spec))),
      sys(spec.system),
      bath(spec.bath),
      co(heom_coefficients(spec.system, spec.bath)) {
  k_ = make_state(layout, grid);
  ytmp_ = make_state(layout, grid);
  acc_ = make_state(layout, grid);
  ws_.resize(layout.size(), grid.nq, grid.np);
}

void Stepper::rhs(const HierarchyState& y, double t, bool drive_on,
                  HierarchyState& out) {
  DriveState d;
  d.t = t;
  if (drive_on) d = drive_at(sys, t);
  rhs_into(y, layout, grid, sys, bath, co, d, ws_, out);
}

void Stepper::step(HierarchyState& y, double dt, bool drive_on) {
  match_shape(k_, y);
  match_shape(ytmp_, y);
  match_shape(acc_, y);
  const double t = y.time;

  rhs(y, t, drive_on, acc_);  // k1 accumulates in place
  blend(ytmp_, y, 0.5 * dt, acc_);
  rhs(ytmp_, t + 0.5 * dt, drive_on, k_);  // k2
  accumulate(acc_, k_, 2.0);
  blend(ytmp_, y, 0.5 * dt, k_);
  rhs(ytmp_, t + 0.5 * dt, drive_on, k_);  // k3
  accumulate(acc_, k_, 2.0);
  blend(ytmp_, y, dt, k_);
  rhs(ytmp_, t + dt, drive_on, k_);  // k4
  accumulate(acc_, k_, 1.0);

  const double s = dt / 6.0;
  bool bad = false;
  for (std::size_t e = 0; e < y.elements.size(); ++e) {
    const double* av = acc_.elements[e].values.data();
    double* yv = y.elements[e].values.data();
    const std::size_t n = y.elements[e].values.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = yv[i] + s * av[i];
      yv[i] = v;
      bad = bad || !(std::abs(v) <= 1e6);
    }
  }
  y.time = t + dt;
  absorb_edges(y);
  if (bad)
    throw NumericalBlowup("state left [-1e6, 1e6] at t = " +
                          std::to_string(y.time));
}

HierarchyState equilibrate(const RunSpec& spec, EquilibrationReport* report) {
  return equilibrate_from(boltzmann_seed(spec), spec, report);
}

HierarchyState equilibrate_from(HierarchyState state, const RunSpec& spec,
                                EquilibrationReport* report) {
  if (spec.bath.zeta == 0.0)
    throw EquilibrationTimeout("zeta = 0 leaves no dissipation channel");

  Stepper st(spec);
  state.time = 0.0;
  const double dt = effective_dt(spec);
  const int nw = static_cast<int>(std::ceil(1.0 / dt - 1e-12));
  const double window = nw * dt;
  // Bath memory and momentum relaxation both need to play out before the
  // probe windows mean anything.
  const double t_min = 5.0 / spec.bath.gamma + 0.5 / spec.bath.zeta;

  double mp = integrate(state.elements[0], st.grid, Weight::p);
  double mp2 = integrate(state.elements[0], st.grid, Weight::p2);
  int quiet = 0;
  bool settled = false;
  while (state.time < spec.t_equil - 0.5 * dt) {
    for (int i = 0; i < nw; ++i) st.step(state, dt, false);
    const double mp_new = integrate(state.elements[0], st.grid, Weight::p);
    const double mp2_new = integrate(state.elements[0], st.grid, Weight::p2);
    const double rate_p = std::abs(mp_new - mp) / window;
    const double rate_p2 =
        std::abs(mp2_new - mp2) / (window * std::max(mp2_new, 1e-300));
    mp = mp_new;
    mp2 = mp2_new;
    quiet = (rate_p < spec.steady_tol && rate_p2 < spec.steady_tol) ? quiet + 1
                                                                    : 0;
    if (quiet >= 2 && state.time >= t_min) {
      settled = true;
      break;
    }
  }
  if (!settled)
    throw EquilibrationTimeout("no steady thermal state within t_equil = " +
                               std::to_string(spec.t_equil));
  if (!(std::abs(mp) < 10.0 * spec.steady_tol))
    throw EquilibrationTimeout("relaxed state keeps <p> = " +
                               std::to_string(mp));
  if (report) {
    report->t_final = state.time;
    report->mean_p = mp;
    report->mean_p2 = mp2;
  }
  return state;
}

DrivenResult run_driven(HierarchyState state, const RunSpec& spec) {
  Stepper st(spec);
  const double period = spec.drive_period();
  const double dt0 = effective_dt(spec);
  const int nsteps = static_cast<int>(std::ceil(period / dt0 - 1e-12));
  const double dt = period / nsteps;

  state.time = 0.0;  // drive phase origin
  DrivenResult res;
  std::vector<double> psamp(static_cast<std::size_t>(nsteps) + 1);
  double prev_j = 0.0;
  for (int n = 0; n < spec.max_periods; ++n) {
    const double t_start = state.time;
    psamp[0] = integrate(state.elements[0], st.grid, Weight::p);
    for (int i = 0; i < nsteps; ++i) {
      st.step(state, dt, true);
      psamp[i + 1] = integrate(state.elements[0], st.grid, Weight::p);
    }
    double sum = 0.5 * (psamp[0] + psamp[nsteps]);
    for (int i = 1; i < nsteps; ++i) sum += psamp[i];

    PeriodRecord rec;
    rec.index = n;
    rec.t_start = t_start;
    rec.j = sum / nsteps;
    rec.norm = integrate(state.elements[0], st.grid);
    rec.negativity = negative_volume(state.elements[0], st.grid);
    res.periods.push_back(rec);
    res.j = rec.j;
    if (n > 0 && std::abs(rec.j - prev_j) <
                     spec.steady_tol * std::max(std::abs(rec.j), j_floor)) {
      res.steady = true;
      break;
    }
    prev_j = rec.j;
  }
  res.state = std::move(state);
  return res;
}

}  // namespace ratchet
