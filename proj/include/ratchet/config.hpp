#pragma once

#include <string>
#include <string_view>

#include "ratchet/errors.hpp"

namespace ratchet {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Currents below this magnitude are treated as zero: it anchors the relative
// steadiness test in driven runs and the ZeroSignal flag in fits.
inline constexpr double j_floor = 1e-6;

enum class Mode { quantum, classical };

// Potential U(q;t) = u0*cos^2(kappa q) - q F(t), drive F(t) = f1 cos(omega t)
// + f2 cos(2 omega t + theta). Reduced units fix mass = hbar = kappa = 1.
struct SystemSpec {
  double u0 = 1.0;
  double kappa = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  double f1 = 0.2;
  double f2 = 0.2;
  double omega = 1.0;
  double theta = 0.0;
  Mode mode = Mode::quantum;

  bool operator==(const SystemSpec&) const = default;
};

// Drude bath: J(w) = (m zeta/pi) gamma^2 w/(gamma^2+w^2), plus the two
// truncation controls of the hierarchy (depth N, Matsubara count K).
struct BathSpec {
  double zeta = 0.1;
  double gamma = 1.0;
  double beta = 1.0;
  int k_matsubara = 1;
  int depth = 5;

  bool operator==(const BathSpec&) const = default;
};

struct RunSpec {
  SystemSpec system;
  BathSpec bath;
  int nq = 64;
  int np = 401;
  double pmax = 10.0;
  double dt = 1e-3 * two_pi;
  double t_equil = 200.0;
  int max_periods = 50;
  double steady_tol = 1e-3;

  bool operator==(const RunSpec&) const = default;

  double drive_period() const { return two_pi / system.omega; }
  double dq() const { return two_pi / (system.kappa * nq); }
  double dp() const { return 2.0 * pmax / (np - 1); }
};

// Pins the reduced-unit constants, wraps theta into [0, 2pi), and forces
// K = 0 in classical mode. Idempotent.
RunSpec normalized(RunSpec spec);

// Proof-of-validation token: only validate() can make one.
class ValidatedRunSpec {
 public:
  const RunSpec& operator*() const { return spec_; }
  const RunSpec* operator->() const { return &spec_; }

 private:
  friend ValidatedRunSpec validate(RunSpec spec);
  explicit ValidatedRunSpec(RunSpec spec) : spec_(std::move(spec)) {}
  RunSpec spec_;
};

// Normalizes, then checks every type invariant plus the grid constraints
// (odd np, dq inside the supported mesh range, dp dividing hbar*kappa in
// quantum mode). Throws InvalidParameter, CotangentPole, MatsubaraResonance,
// or GridShiftMismatch.
ValidatedRunSpec validate(RunSpec spec);

// Flat `key = value` grammar, '#' comments, case-sensitive keys. Missing
// keys take defaults; an empty document is valid and yields all defaults.
// Unknown keys and malformed lines throw. The result is normalized but not
// validated (overrides may still be applied on top).
RunSpec load_config(std::string_view text);

// One `key=value` assignment in the same grammar as load_config.
void apply_override(RunSpec& spec, std::string_view assignment);

// Emits every key; load_config(serialize(s)) == s for any normalized s.
std::string serialize(const RunSpec& spec);

std::string_view to_string(Mode mode);

}  // namespace ratchet
