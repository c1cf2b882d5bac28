#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "asygeo/log_quantity.hpp"

namespace asygeo {

/// Tolerances and limits for the adaptive integrator.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  /// Fallback acceptance: an estimate whose log-domain error is below this is
  /// returned even when rel_tol could not be met within max_depth.
  double abs_tol_log = 1e-8;
  int max_depth = 60;
  int max_intervals = 4000;
  /// Partial integrals growing past e^{divergence_log} times the first
  /// nonzero piece are declared divergent.
  double divergence_log = 300.0;
  /// Doublings of the truncation point before a slowly decaying tail is
  /// declared divergent (T up to 2^20 times the length scale).
  int divergence_doublings = 20;
  /// Hard cap on doublings for convergent but slowly decaying tails.
  int max_doublings = 48;

  void validate() const;
};

/// Analytic tail descriptor: f(t) <= exp(log_c - alpha * t) eventually.
struct TailBound {
  double log_c = 0.0;
  double alpha = 0.0;
};

/// Result of a log-domain integration.
struct Integral {
  LogQuantity value;          // the integral itself (sign 0 for exact zero)
  double log_error = kNegInf; // ln of the absolute error bound
  bool divergent = false;     // improper integral found to diverge; value is +inf
  int evaluations = 0;

  /// ln of the (positive) value; +inf when divergent.
  double log() const noexcept { return divergent ? kPosInf : value.log_abs(); }
  /// Estimated relative error bound.
  double rel_error() const noexcept;
};

/// Integrand returning ln f(t) for a nonnegative f (-inf for f(t) = 0).
using LogIntegrand = std::function<double(double)>;
/// Integrand returning a signed value in log form.
using SignedIntegrand = std::function<LogQuantity(double)>;

/// ln ∫_a^b e^{f_log(t)} dt by globally adaptive Gauss-Kronrod (7/15) with
/// log-domain accumulation. `b` may be +inf; the tail is then handled by
/// doubling the truncation point and bounding the remainder either with
/// `tail` or with a local power-law/exponential probe of the integrand.
/// `breakpoints` inside (a, b) are used as initial subdivision points.
///
/// Throws ToleranceError when the tolerance cannot be met, DomainError when
/// the integrand is not evaluable.
Integral integrate(const LogIntegrand& f_log, double a, double b, const QuadratureSpec& spec = {},
                   std::optional<TailBound> tail = std::nullopt,
                   std::span<const double> breakpoints = {});

/// Signed variant; the tolerance applies relative to ∫|f|. Infinite upper
/// limits require a tail bound on |f|.
Integral integrate_signed(const SignedIntegrand& f, double a, double b, const QuadratureSpec& spec = {},
                          std::optional<TailBound> tail = std::nullopt,
                          std::span<const double> breakpoints = {});

/// Points e^{k*pi} inside (a, b): zeros of sin(ln t). Used to split integrands
/// carrying a sin(ln t) factor before refinement.
std::vector<double> sin_log_zeros(double a, double b, double shift = 0.0);

}  // namespace asygeo
