#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asygeo/log_quantity.hpp"
#include "asygeo/manifold.hpp"
#include "asygeo/quadrature.hpp"
#include "asygeo/sweep.hpp"

namespace asygeo {

/// p-capacity of a ball or concentric condenser, kept in log form.
struct CapacityResult {
  double log_cap = kNegInf;  // ln Cap_p; -inf when the capacity vanishes
  double p = 0.0;
  double r = 0.0;            // ball radius (inner radius for condensers)
  double r_outer = kPosInf;  // outer radius for condensers
  double error_log = kNegInf;
  bool parabolic = false;

  /// p Cap_p^{1/p}.
  double scaled() const noexcept;
  LogQuantity capacity() const noexcept { return LogQuantity::from_log(log_cap, parabolic ? 0 : 1); }
};

/// ln Cap_p(B(o, r)) = (1 - p) ln ∫_r^∞ S^{1/(1-p)} dt, exact on warped products.
/// A divergent integral yields log_cap = -inf and parabolic = true.
CapacityResult log_cap_ball(const WarpedManifold& m, double r, double p, const QuadratureSpec& q = {});

/// The p-potential of B(o, r) evaluated at distance x >= r from the pole.
/// Throws ParabolicError when the capacity vanishes.
double capacitary_potential(const WarpedManifold& m, double r, double p, double x, const QuadratureSpec& q = {});

/// ln Cap_p of the condenser (B(o, r1), B(o, r2)).
CapacityResult log_cap_condenser(const WarpedManifold& m, double r1, double r2, double p,
                                 const QuadratureSpec& q = {});

/// r with V(r) = vol, by safeguarded Newton on ln V.
double inverse_volume(const WarpedManifold& m, double vol, const QuadratureSpec& q = {});

/// Isoperimetric lower bound (1 - p) ln ∫_vol^{|M|} I(τ)^{p/(1-p)} dτ with
/// I(V(t)) = S(t), evaluated after the substitution τ = V(t).
LogQuantity isoperimetric_lower_bound(const WarpedManifold& m, double vol, double p, const QuadratureSpec& q = {});

/// Capacity bracket for a compact set squeezed between B(o, r1) and B(o, r2).
struct CapacityBracket {
  CapacityResult lower;
  CapacityResult upper;
};
CapacityBracket capacity_bracket(const WarpedManifold& m, double r1, double r2, double p,
                                 const QuadratureSpec& q = {});

/// A labelled p-subsequence along which a separate limit is extracted.
struct PSubsequence {
  std::string label;
  std::vector<double> ps;
};

/// Samples p Cap_p(B(o, r))^{1/p} on the grid and extrapolates; a zero
/// sweep reports the limit 0.
SweepReport infinity_capacity_sweep(const WarpedManifold& m, double r, const PGrid& grid,
                                    const QuadratureSpec& q = {},
                                    const std::vector<PSubsequence>& subsequences = {});

struct BallIndependence {
  double ratio = 1.0;
  double scaled_r1 = 0.0;
  double scaled_r2 = 0.0;
  /// Capacity vanishes at 2 p_large, so the ratio says nothing about the limit.
  bool flagged = false;
};

/// scaled(r1) / scaled(r2) at p = p_large. Throws ParabolicError when either
/// capacity vanishes at p_large.
BallIndependence ball_independence_check(const WarpedManifold& m, double r1, double r2, double p_large,
                                         const QuadratureSpec& q = {});

}  // namespace asygeo
