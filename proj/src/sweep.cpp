#include "ratchet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <ostream>
#include <thread>

namespace ratchet {

namespace {

// Index-addressed tasks over a bounded pool; slot k of the result belongs to
// task k no matter which worker ran it.
void run_pool(int n, const std::function<void(int)>& task) {
  const int nw = std::min(worker_count(), n);
  if (nw <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) task(i);
    });
  for (auto& t : pool) t.join();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string oneline(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r' || c == ',') c = ' ';
  return s;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("RATCHET_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

CurrentFit fit_sinusoid(const std::vector<std::pair<double, double>>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 3)
    throw DegenerateSampling("need at least 3 (theta, J) samples, got " +
                             std::to_string(n));

  std::vector<double> th(samples.size());
  for (int i = 0; i < n; ++i) th[i] = samples[i].first;
  std::sort(th.begin(), th.end());
  int distinct = 1;
  for (int i = 1; i < n; ++i)
    if (th[i] - th[i - 1] > 1e-12) ++distinct;
  if (distinct < 3)
    throw DegenerateSampling("only " + std::to_string(distinct) +
                             " distinct phases among " + std::to_string(n) +
                             " samples");

  double ss = 0, cc = 0, sc = 0, js = 0, jc = 0;
  for (const auto& [t, j] : samples) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    ss += s * s;
    cc += c * c;
    sc += s * c;
    js += j * s;
    jc += j * c;
  }
  // ss + cc == n, so det is O(n^2) away from degeneracy and collapses to
  // rounding noise when every phase sits on one line mod pi.
  const double det = ss * cc - sc * sc;
  if (det <= 1e-12 * n * n)
    throw DegenerateSampling(
        "phases congruent mod pi leave the first harmonic rank deficient");

  const double a = (js * cc - jc * sc) / det;
  const double b = (jc * ss - js * sc) / det;

  CurrentFit fit;
  fit.j_max = std::hypot(a, b);
  fit.zero_signal = fit.j_max < j_floor;
  if (fit.zero_signal) {
    fit.theta0 = std::numeric_limits<double>::quiet_NaN();
  } else {
    double t0 = std::atan2(-b, a);
    if (t0 < 0) t0 += two_pi;
    fit.theta0 = t0;
  }
  double r2 = 0;
  for (const auto& [t, j] : samples) {
    const double r = j - (a * std::sin(t) + b * std::cos(t));
    r2 += r * r;
  }
  fit.residual_rms = std::sqrt(r2 / n);
  fit.samples = samples;
  return fit;
}

ThetaSweep sweep_theta(const RunSpec& spec, int n_theta) {
  if (n_theta < 4)
    throw InvalidParameter("n_theta", "need at least 4 phases for a stable fit");
  const RunSpec base = *validate(spec);
  const HierarchyState settled = equilibrate(base);

  ThetaSweep out;
  out.points.resize(n_theta);
  run_pool(n_theta, [&](int k) {
    ThetaPoint& pt = out.points[k];
    pt.theta = two_pi * k / n_theta;
    RunSpec pspec = base;
    pspec.system.theta = pt.theta;
    try {
      DrivenResult run = run_driven(settled, pspec);
      pt.j = run.j;
      pt.steady = run.steady;
      pt.periods = std::move(run.periods);
    } catch (const std::exception& e) {
      pt.failed = true;
      pt.error = e.what();
    }
  });

  std::vector<std::pair<double, double>> samples;
  std::string first_error;
  for (const ThetaPoint& pt : out.points) {
    if (pt.failed) {
      if (first_error.empty()) first_error = pt.error;
      continue;
    }
    samples.emplace_back(pt.theta, pt.j);
    if (pt.steady) ++out.n_converged;
  }
  if (static_cast<int>(samples.size()) < 4)
    throw DegenerateSampling("only " + std::to_string(samples.size()) + " of " +
                             std::to_string(n_theta) + " phases completed (" +
                             first_error + ")");
  out.fit = fit_sinusoid(samples);
  return out;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::beta:
      return "beta";
    case SweepAxis::zeta:
      return "zeta";
    case SweepAxis::u0:
      return "u0";
  }
  return "?";
}

std::vector<SweepRow> sweep_scalar(const RunSpec& spec, SweepAxis axis,
                                   const std::vector<double>& values,
                                   int n_theta) {
  if (values.empty()) throw InvalidParameter("values", "empty sweep axis");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (const double v : values) {
    SweepRow row;
    row.axis_value = v;
    RunSpec pspec = spec;
    switch (axis) {
      case SweepAxis::beta:
        pspec.bath.beta = v;
        break;
      case SweepAxis::zeta:
        pspec.bath.zeta = v;
        break;
      case SweepAxis::u0:
        pspec.system.u0 = v;
        break;
    }
    try {
      row.sweep = sweep_theta(pspec, n_theta);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, SweepAxis axis,
                     const std::vector<SweepRow>& rows) {
  os << "# axis=" << to_string(axis) << '\n';
  for (const SweepRow& row : rows)
    if (!row.failed) {
      os << "# n_theta=" << row.sweep.points.size() << '\n';
      break;
    }
  os << "axis_value,j_max,theta0,residual_rms,n_converged_points\n";
  for (const SweepRow& row : rows) {
    if (row.failed) {
      os << "# " << num(row.axis_value) << " failed: " << oneline(row.error)
         << '\n';
      continue;
    }
    const CurrentFit& f = row.sweep.fit;
    os << num(row.axis_value) << ',' << num(f.j_max) << ',' << num(f.theta0)
       << ',' << num(f.residual_rms) << ',' << row.sweep.n_converged << '\n';
  }
}

void write_theta_csv(std::ostream& os, const ThetaSweep& sweep) {
  const CurrentFit& f = sweep.fit;
  os << "# j_max=" << num(f.j_max) << " theta0=" << num(f.theta0)
     << " residual_rms=" << num(f.residual_rms)
     << " zero_signal=" << (f.zero_signal ? 1 : 0)
     << " n_converged=" << sweep.n_converged << '\n';
  os << "theta,j,steady,failed\n";
  for (const ThetaPoint& pt : sweep.points)
    os << num(pt.theta) << ',' << num(pt.j) << ',' << (pt.steady ? 1 : 0)
       << ',' << (pt.failed ? 1 : 0) << '\n';
}

void write_periods_csv(std::ostream& os, const ThetaSweep& sweep) {
  os << "theta,period,t_start,j,norm,negativity\n";
  for (const ThetaPoint& pt : sweep.points) {
    if (pt.failed) continue;
    for (const PeriodRecord& rec : pt.periods)
      os << num(pt.theta) << ',' << rec.index << ',' << num(rec.t_start) << ','
         << num(rec.j) << ',' << num(rec.norm) << ',' << num(rec.negativity)
         << '\n';
  }
}

}  // namespace ratchet
