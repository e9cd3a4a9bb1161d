#pragma once

#include <vector>

#include "ratchet/config.hpp"

namespace ratchet {

// Coefficients of the hierarchy coupling operators. Phi = d/dp carries no
// coefficient; Theta_0 = theta0_drift*p + theta0_diff*d/dp; Theta_k =
// thetak_diff[k-1]*d/dp; Xi = xi_coeff*d2/dp2.
struct HeomCoefficients {
  double theta0_drift = 0.0;
  double theta0_diff = 0.0;
  std::vector<double> nu;
  std::vector<double> thetak_diff;
  double xi_coeff = 0.0;
};

// J(w) = (m zeta/pi) gamma^2 w/(gamma^2 + w^2)
double spectral_density(double omega, const SystemSpec& sys, const BathSpec& bath);

// Psi(t) = m zeta gamma exp(-gamma|t|)
double psi(double t, const SystemSpec& sys, const BathSpec& bath);

// Symmetric noise correlation: cot term minus the Matsubara sum truncated at
// k_max (k_max = 0 keeps only the resummed exponential part). Classical mode
// returns Psi(t)/beta. Note the exact quantum C(t) is log-singular at t = 0,
// so C(0) grows like ln k_max there.
double noise_kernel(double t, const SystemSpec& sys, const BathSpec& bath, int k_max);

HeomCoefficients heom_coefficients(const SystemSpec& sys, const BathSpec& bath);

// Smallest K >= 1 with nu_K = 2 pi K/(beta hbar) >= margin*omega_c.
int select_k(const BathSpec& bath, double omega_c, double margin = 10.0,
             double hbar = 1.0);

// Inverse crossover temperature beta_c = 2 pi/(hbar lambda), lambda the
// Grote-Hynes frequency: lambda^2 + lambda zeta gamma/(lambda + gamma) = wb^2
// with wb^2 = 2 U0 kappa^2/m (curvature of U0 cos^2 at the barrier top).
double crossover_beta(const SystemSpec& sys, const BathSpec& bath);

}  // namespace ratchet
