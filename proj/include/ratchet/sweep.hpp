#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratchet/config.hpp"
#include "ratchet/propagate.hpp"

namespace ratchet {

// First-harmonic model J(theta) = j_max * sin(theta - theta0).
struct CurrentFit {
  double j_max = 0.0;
  double theta0 = 0.0;        // NaN when zero_signal is set
  double residual_rms = 0.0;
  bool zero_signal = false;   // j_max < j_floor; theta0 carries no information
  std::vector<std::pair<double, double>> samples;  // (theta, J) actually fitted
};

// Least-squares fit of a*sin + b*cos over arbitrarily spaced samples via the
// 2x2 normal equations; j_max = hypot(a, b), theta0 = atan2(-b, a) wrapped to
// [0, 2pi). Shifting every theta by d shifts theta0 by d and leaves j_max
// alone; scaling J scales j_max and leaves theta0 alone. Throws
// DegenerateSampling for fewer than 3 distinct phases or phases all congruent
// mod pi (the two basis columns collapse onto one line).
CurrentFit fit_sinusoid(const std::vector<std::pair<double, double>>& samples);

struct ThetaPoint {
  double theta = 0.0;
  double j = 0.0;
  bool steady = false;
  bool failed = false;
  std::string error;  // what stopped the run, when failed
  std::vector<PeriodRecord> periods;
};

struct ThetaSweep {
  std::vector<ThetaPoint> points;  // all phases in order, failures included
  CurrentFit fit;                  // over the completed points
  int n_converged = 0;             // completed points that reached steadiness
};

// Equilibrates once (the drive is off, so the settled state is phase
// independent), then drives one run per phase theta_k = 2 pi k / n_theta on a
// worker pool and fits. A point whose run throws is flagged and excluded; the
// fit proceeds while at least 4 points remain, else DegenerateSampling.
ThetaSweep sweep_theta(const RunSpec& spec, int n_theta = 8);

enum class SweepAxis { beta, zeta, u0 };

std::string_view to_string(SweepAxis axis);

struct SweepRow {
  double axis_value = 0.0;
  ThetaSweep sweep;
  bool failed = false;
  std::string error;
};

// One sweep_theta per axis value, rows in the order given. A value whose
// whole sweep fails (equilibration included) is flagged, not fatal.
std::vector<SweepRow> sweep_scalar(const RunSpec& spec, SweepAxis axis,
                                   const std::vector<double>& values,
                                   int n_theta = 8);

// Worker pool width: RATCHET_WORKERS when set to a positive integer, else
// the hardware thread count.
int worker_count();

// axis_value,j_max,theta0,residual_rms,n_converged_points; failed rows
// become comment lines.
void write_sweep_csv(std::ostream& os, SweepAxis axis,
                     const std::vector<SweepRow>& rows);

// Fit summary as comments, then theta,j,steady,failed per phase.
void write_theta_csv(std::ostream& os, const ThetaSweep& sweep);

// Per-period series of every completed phase:
// theta,period,t_start,j,norm,negativity.
void write_periods_csv(std::ostream& os, const ThetaSweep& sweep);

}  // namespace ratchet
