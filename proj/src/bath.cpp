#include "ratchet/bath.hpp"

#include <cmath>

namespace ratchet {

namespace {

constexpr double pi = two_pi / 2.0;

double checked_cot(double x) {
  const double multiple = x / pi;
  if (std::abs(multiple - std::round(multiple)) < 1e-9 && std::round(multiple) >= 1.0)
    throw CotangentPole(x);
  return std::cos(x) / std::sin(x);
}

}  // namespace

double spectral_density(double omega, const SystemSpec& sys, const BathSpec& bath) {
  const double g2 = bath.gamma * bath.gamma;
  return (sys.mass * bath.zeta / pi) * g2 * omega / (g2 + omega * omega);
}

double psi(double t, const SystemSpec& sys, const BathSpec& bath) {
  return sys.mass * bath.zeta * bath.gamma * std::exp(-bath.gamma * std::abs(t));
}

double noise_kernel(double t, const SystemSpec& sys, const BathSpec& bath,
                    int k_max) {
  if (sys.mode == Mode::classical) return psi(t, sys, bath) / bath.beta;
  const double at = std::abs(t);
  const double bh = bath.beta * sys.hbar;
  const double g2 = bath.gamma * bath.gamma;
  double bracket = checked_cot(bh * bath.gamma / 2.0) * std::exp(-bath.gamma * at);
  for (int k = 1; k <= k_max; ++k) {
    const double nu = two_pi * k / bh;
    bracket -= (4.0 * nu / (bh * (g2 - nu * nu))) * std::exp(-nu * at);
  }
  return (sys.mass * sys.hbar * bath.zeta * g2 / 2.0) * bracket;
}

HeomCoefficients heom_coefficients(const SystemSpec& sys, const BathSpec& bath) {
  HeomCoefficients c;
  c.theta0_drift = bath.zeta;
  if (sys.mode == Mode::classical) {
    c.theta0_diff = sys.mass * bath.zeta / bath.beta;
    return c;
  }
  const double bh = bath.beta * sys.hbar;
  const double g2 = bath.gamma * bath.gamma;
  const double x = bh * bath.gamma / 2.0;
  c.theta0_diff = bath.zeta * (sys.mass * sys.hbar * bath.gamma / 2.0) * checked_cot(x);
  double partial = 0.0;
  c.nu.reserve(bath.k_matsubara);
  c.thetak_diff.reserve(bath.k_matsubara);
  for (int k = 1; k <= bath.k_matsubara; ++k) {
    const double nu = two_pi * k / bh;
    c.nu.push_back(nu);
    c.thetak_diff.push_back(2.0 * sys.mass * g2 * bath.zeta /
                            (bath.beta * (nu * nu - g2)));
    partial += 2.0 * g2 / (nu * nu - g2);
  }
  c.xi_coeff = -(sys.mass * bath.zeta / bath.beta) *
               (1.0 - x * checked_cot(x) - partial);
  return c;
}

int select_k(const BathSpec& bath, double omega_c, double margin, double hbar) {
  int k = 1;
  while (two_pi * k / (bath.beta * hbar) < margin * omega_c) ++k;
  return k;
}

double crossover_beta(const SystemSpec& sys, const BathSpec& bath) {
  if (sys.u0 <= 0.0) throw InvalidParameter("u0", "must be > 0");
  const double wb2 = 2.0 * sys.u0 * sys.kappa * sys.kappa / sys.mass;
  auto gh = [&](double lam) {
    return lam * lam + lam * bath.zeta * bath.gamma / (lam + bath.gamma) - wb2;
  };
  double lo = 0.0;
  double hi = std::sqrt(wb2);
  if (gh(hi) < 0.0) throw NoRoot("Grote-Hynes root not bracketed by [0, wb]");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (gh(mid) < 0.0 ? lo : hi) = mid;
  }
  return two_pi / (sys.hbar * 0.5 * (lo + hi));
}

}  // namespace ratchet
