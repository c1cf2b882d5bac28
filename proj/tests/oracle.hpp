#pragma once

// Test-side reference values and brute-force integrators, independent of the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Composite Simpson with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Simpson in u = ln t on [ln a, ln b], for integrands varying on a log scale.
inline double simpson_log_grid(const std::function<double(double)>& f, double a, double b, long n) {
  return simpson([&](double u) { const double t = std::exp(u); return f(t) * t; }, std::log(a), std::log(b), n);
}

inline double sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

// H^3: S = 4π sinh² t, V(r) = π(sinh 2r − 2r).
inline double hyperbolic_volume(double r) { return kPi * (std::sinh(2.0 * r) - 2.0 * r); }

// Radial Dirichlet eigenvalues on H^3 balls: 1 + (π/R)² for p = 2, and a
// shooting-method value for p = 3 (LSODA, rtol 1e-11, bisection on R(λ) = 20).
inline double hyperbolic_ball_lambda2(double R) { return 1.0 + (kPi / R) * (kPi / R); }
inline constexpr double kHyperbolicBall20Lambda3 = 0.3177828947293327;

// Example 3.2 reference integrals (adaptive quadrature at 1e-13, independent code).
inline constexpr double kI1 = 0.291566198040856;
inline constexpr double kI2 = 0.218691484588776;
inline constexpr double kA = 0.000342789845714878;
inline constexpr double kB = -0.0365268758083342;

/// x_0..x_3 of the plateau recurrence.
inline double plateau_x(int k) {
  double x = 1.0;
  if (k >= 1) x = 2.0;
  for (int i = 2; i <= k; ++i) x = x + 1.0 + std::exp(x + 1.0);
  return x;
}

}  // namespace oracle
