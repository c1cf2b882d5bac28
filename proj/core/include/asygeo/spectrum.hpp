#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asygeo/log_quantity.hpp"
#include "asygeo/manifold.hpp"
#include "asygeo/quadrature.hpp"
#include "asygeo/sweep.hpp"

namespace asygeo {

/// Piecewise-linear radial function on 0 = t_0 < ... < t_N = R with u_N = 0.
struct RadialProfile {
  std::vector<double> nodes;
  std::vector<double> values;

  /// Uniform grid with u = 1 - (t/R)^2.
  static RadialProfile initial(double R, int segments);
  void validate() const;
};

struct SolverConfig {
  int nodes = 400;               // segments for a ball solve
  int max_nodes = 8000;          // cap when the segment count follows R
  double max_step = 0.25;        // target segment length for manifold solves
  int max_iterations = 20000;
  double rel_tol = 1e-9;         // relative quotient decrease over `window` iterations
  int window = 50;
  QuadratureSpec quadrature{};
};

/// Increasing radii for the exhaustion by balls.
struct RadiusSchedule {
  double R0 = 0.0;          // 0 picks max(5, 5p)
  double growth = 2.0;
  double R_max = 1e6;
  double rel_tol = 1e-3;    // Cauchy test on λ^{1/p}
};

struct EigenResult {
  double log_lambda = kNegInf;
  double p = 0.0;
  double R = 0.0;
  int iterations = 0;
  double residual = 0.0;   // relative quotient decrease at termination
  /// Estimated error of ln λ: grid error from a half-resolution solve plus
  /// the residual, and for manifold solves the last change along the schedule.
  double error_bound = 0.0;
  bool stabilized = true;  // manifold solves: Cauchy test met before R_max
  RadialProfile profile;

  double lambda() const noexcept { return std::exp(log_lambda); }
  /// p λ^{1/p}.
  double scaled() const noexcept { return log_lambda == kNegInf ? 0.0 : p * std::exp(log_lambda / p); }
  /// Absolute error estimate of scaled().
  double scaled_error() const noexcept { return scaled() * std::expm1(error_bound / p); }
};

/// ln of ∫_0^R S |u'|^p / ∫_0^R S |u|^p for a piecewise-linear u.
double log_rayleigh_quotient(const WarpedManifold& m, double p, const RadialProfile& u, const QuadratureSpec& q = {});
double rayleigh_quotient(const WarpedManifold& m, double p, const RadialProfile& u, const QuadratureSpec& q = {});

/// First Dirichlet p-eigenvalue of B(o, R) over radial profiles. The value is
/// an upper bound that converges under refinement; a second solve on half the
/// segments supplies the grid part of error_bound. Throws ToleranceError on
/// stagnation.
EigenResult lambda_1p_ball(const WarpedManifold& m, double R, double p, const SolverConfig& cfg = {});

/// λ_{1,p}(M) as the limit of ball eigenvalues along the radius schedule. The
/// smallest value found is returned; `stabilized` is false when R_max is hit.
EigenResult lambda_1p_manifold(const WarpedManifold& m, double p, const RadiusSchedule& schedule = {},
                               const SolverConfig& cfg = {});

/// ln f(r) = ln Cap_p(B(o, r)) - ln V(r); -inf when the capacity vanishes.
double log_mazya_f(const WarpedManifold& m, double r, double p, const QuadratureSpec& q = {});
LogQuantity mazya_f(const WarpedManifold& m, double r, double p, const QuadratureSpec& q = {});

struct MazyaSearch {
  double r_min = 1e-3;
  double r_max = 1e3;  // the scan reaches at least 10 p
  int scan_points = 200;
  /// Volume entropy used for the tail limit; estimated when absent.
  std::optional<double> entropy;
};

struct MazyaResult {
  double log_mp = kNegInf;
  double argmin_r = 0.0;  // +inf when attained at infinity
  double p = 0.0;
  bool attained_at_infinity = false;
  double log_tail_limit = kNegInf;  // ln(𝒱^p / (p-1)^{p-1})

  double scaled() const noexcept { return log_mp == kNegInf ? 0.0 : p * std::exp(log_mp / p); }
};

/// m_p = inf_r f(r) by a log-spaced scan refined with Brent's method.
MazyaResult mazya_mp(const WarpedManifold& m, double p, const MazyaSearch& search = {}, const QuadratureSpec& q = {});

struct SandwichResult {
  bool lower_ok = false;  // ((p-1)^{p-1}/p^p) m_p <= λ
  bool upper_ok = false;  // λ <= m_p
  double log_lambda = kNegInf;
  double log_mp = kNegInf;
  double lower_ratio = 0.0;  // λ / (c_p m_p)
  double upper_ratio = 0.0;  // λ / m_p
};

/// Checks the two-sided comparison between λ_{1,p}(M) and m_p with 1e-3
/// relative slack.
SandwichResult sandwich_check(const WarpedManifold& m, double p, const RadiusSchedule& schedule = {},
                              const SolverConfig& cfg = {}, const MazyaSearch& search = {});

/// Samples p min(λ_{1,p}(M), m_p)^{1/p} on the grid; m_p is a valid upper
/// bound for λ and replaces it where the ball exhaustion has not settled.
SweepReport infinity_eigenvalue_sweep(const WarpedManifold& m, const PGrid& grid, const RadiusSchedule& schedule = {},
                                      const SolverConfig& cfg = {}, const MazyaSearch& search = {});

/// Samples p m_p^{1/p} on the grid.
SweepReport mazya_sweep(const WarpedManifold& m, const PGrid& grid, const MazyaSearch& search = {},
                        const QuadratureSpec& q = {});

}  // namespace asygeo
