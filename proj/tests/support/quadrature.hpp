#pragma once

// Reference quadrature used only by tests: adaptive Simpson panels plus
// repeated averaging of the alternating half-period partial sums for
// semi-infinite Fourier-cosine integrals.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

namespace detail {

inline double adsimp(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adsimp(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adsimp(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adsimp(f, a, b, fa, fm, fb, whole, tol, 30);
}

// integral_0^inf g(w) cos(w t) dw for t > 0 and g smooth, decaying, and
// eventually monotone. Panels split at the cosine zeros so the panel sums
// alternate; iterated averaging of the trailing partial sums accelerates the
// conditionally convergent case (g ~ 1/w).
inline double fourier_cos(const std::function<double(double)>& g, double t,
                          int panels = 100, double panel_tol = 1e-13) {
  const std::function<double(double)> f = [&g, t](double w) {
    return g(w) * std::cos(w * t);
  };
  const double half = pi / t;
  std::vector<double> partial;
  partial.reserve(panels + 1);
  double sum = integrate(f, 0.0, 0.5 * half, panel_tol);
  partial.push_back(sum);
  for (int j = 0; j < panels; ++j) {
    const double a = 0.5 * half + j * half;
    sum += integrate(f, a, a + half, panel_tol);
    partial.push_back(sum);
  }
  std::size_t m = partial.size() < 40 ? partial.size() : 40;
  std::vector<double> s(partial.end() - m, partial.end());
  while (s.size() > 1) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s.front();
}

inline double coth(double x) {
  if (x < 1e-4) return 1.0 / x + x / 3.0;
  if (x > 20.0) return 1.0;
  return 1.0 + 2.0 / std::expm1(2.0 * x);
}

}  // namespace oracle
