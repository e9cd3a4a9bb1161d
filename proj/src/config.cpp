#include "ratchet/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace ratchet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view v, int line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line, "expected a number, got '" + std::string(v) + "'");
  return out;
}

int parse_int(std::string_view v, int line) {
  int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line, "expected an integer, got '" + std::string(v) + "'");
  return out;
}

// Applies one key; returns false when the key is not in the grammar.
// `dt_given` lets load_config resolve the omega-dependent dt default.
bool set_key(RunSpec& s, std::string_view key, std::string_view val, int line,
             bool& dt_given) {
  if (key == "u0") s.system.u0 = parse_real(val, line);
  else if (key == "beta") s.bath.beta = parse_real(val, line);
  else if (key == "zeta") s.bath.zeta = parse_real(val, line);
  else if (key == "gamma") s.bath.gamma = parse_real(val, line);
  else if (key == "f1") s.system.f1 = parse_real(val, line);
  else if (key == "f2") s.system.f2 = parse_real(val, line);
  else if (key == "omega") s.system.omega = parse_real(val, line);
  else if (key == "theta") s.system.theta = parse_real(val, line);
  else if (key == "mode") {
    if (val == "quantum") s.system.mode = Mode::quantum;
    else if (val == "classical") s.system.mode = Mode::classical;
    else throw ParseError(line, "mode must be 'quantum' or 'classical'");
  } else if (key == "nq") s.nq = parse_int(val, line);
  else if (key == "np") s.np = parse_int(val, line);
  else if (key == "pmax") s.pmax = parse_real(val, line);
  else if (key == "depth") s.bath.depth = parse_int(val, line);
  else if (key == "matsubara") s.bath.k_matsubara = parse_int(val, line);
  else if (key == "dt") { s.dt = parse_real(val, line); dt_given = true; }
  else if (key == "t_equil") s.t_equil = parse_real(val, line);
  else if (key == "max_periods") s.max_periods = parse_int(val, line);
  else if (key == "steady_tol") s.steady_tol = parse_real(val, line);
  else return false;
  return true;
}

}  // namespace

RunSpec normalized(RunSpec spec) {
  spec.system.mass = 1.0;
  spec.system.hbar = 1.0;
  spec.system.kappa = 1.0;
  double th = std::fmod(spec.system.theta, two_pi);
  if (th < 0.0) th += two_pi;
  if (th == two_pi) th = 0.0;
  spec.system.theta = th;
  if (spec.system.mode == Mode::classical) spec.bath.k_matsubara = 0;
  return spec;
}

ValidatedRunSpec validate(RunSpec spec) {
  spec = normalized(std::move(spec));
  const SystemSpec& sys = spec.system;
  const BathSpec& bath = spec.bath;

  auto require = [](bool ok, const char* field, const char* why) {
    if (!ok) throw InvalidParameter(field, why);
  };
  require(sys.u0 > 0.0, "u0", "must be > 0");
  require(sys.omega > 0.0, "omega", "must be > 0");
  require(sys.f1 >= 0.0, "f1", "must be >= 0");
  require(sys.f2 >= 0.0, "f2", "must be >= 0");
  require(bath.zeta >= 0.0, "zeta", "must be >= 0");
  require(bath.gamma > 0.0, "gamma", "must be > 0");
  require(bath.beta > 0.0, "beta", "must be > 0");
  require(bath.k_matsubara >= 0, "matsubara", "must be >= 0");
  require(bath.depth >= 1, "depth", "must be >= 1");
  require(spec.nq >= 4, "nq", "must be >= 4");
  require(spec.np >= 5, "np", "must be >= 5");
  require(spec.np % 2 == 1, "np", "must be odd so the grid contains p = 0");
  require(spec.pmax > 0.0, "pmax", "must be > 0");
  require(spec.dt > 0.0, "dt", "must be > 0");
  require(spec.t_equil > 0.0, "t_equil", "must be > 0");
  require(spec.max_periods >= 1, "max_periods", "must be >= 1");
  require(spec.steady_tol > 0.0, "steady_tol", "must be > 0");
  require(spec.dt < spec.drive_period() / 100.0, "dt",
          "must be < (2pi/omega)/100 to resolve the drive");

  const double dq = spec.dq();
  require(dq >= 0.0524 && dq <= 0.1047, "nq",
          "dq = 2pi/nq outside the supported mesh range [0.0524, 0.1047]");

  if (sys.mode == Mode::quantum) {
    const double x = bath.beta * sys.hbar * bath.gamma / 2.0;
    const double multiple = x / (two_pi / 2.0);
    if (std::abs(multiple - std::round(multiple)) < 1e-9 &&
        std::round(multiple) >= 1.0)
      throw CotangentPole(x);

    for (int k = 1; k <= bath.k_matsubara; ++k) {
      const double nu_k = two_pi * k / (bath.beta * sys.hbar);
      if (std::abs(nu_k - bath.gamma) < 1e-9 * std::max(1.0, bath.gamma))
        throw MatsubaraResonance(k);
    }

    const double dp = spec.dp();
    const double stride = sys.hbar * sys.kappa / dp;
    if (std::round(stride) < 1.0 || std::abs(stride - std::round(stride)) > 1e-9)
      throw GridShiftMismatch(dp);
  }

  return ValidatedRunSpec(std::move(spec));
}

RunSpec load_config(std::string_view text) {
  RunSpec spec;
  bool dt_given = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : nl - pos);
    ++line_no;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, "expected 'key = value'");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view val = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (val.empty()) throw ParseError(line_no, "empty value for '" + std::string(key) + "'");
    if (!set_key(spec, key, val, line_no, dt_given))
      throw UnknownKey(line_no, std::string(key));
  }
  if (!dt_given) spec.dt = 1e-3 * spec.drive_period();
  return normalized(std::move(spec));
}

void apply_override(RunSpec& spec, std::string_view assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ParseError(0, "override must look like key=value, got '" +
                            std::string(assignment) + "'");
  std::string_view key = trim(assignment.substr(0, eq));
  std::string_view val = trim(assignment.substr(eq + 1));
  bool dt_given = false;
  if (!set_key(spec, key, val, 0, dt_given))
    throw UnknownKey(0, std::string(key));
  spec = normalized(std::move(spec));
}

std::string_view to_string(Mode mode) {
  return mode == Mode::quantum ? "quantum" : "classical";
}

std::string serialize(const RunSpec& spec) {
  char buf[64];
  std::string out;
  auto real = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  auto integer = [&](const char* key, int v) {
    std::snprintf(buf, sizeof buf, "%s = %d\n", key, v);
    out += buf;
  };
  real("u0", spec.system.u0);
  real("beta", spec.bath.beta);
  real("zeta", spec.bath.zeta);
  real("gamma", spec.bath.gamma);
  real("f1", spec.system.f1);
  real("f2", spec.system.f2);
  real("omega", spec.system.omega);
  real("theta", spec.system.theta);
  out += "mode = ";
  out += to_string(spec.system.mode);
  out += '\n';
  integer("nq", spec.nq);
  integer("np", spec.np);
  real("pmax", spec.pmax);
  integer("depth", spec.bath.depth);
  integer("matsubara", spec.bath.k_matsubara);
  real("dt", spec.dt);
  real("t_equil", spec.t_equil);
  integer("max_periods", spec.max_periods);
  real("steady_tol", spec.steady_tol);
  return out;
}

}  // namespace ratchet
