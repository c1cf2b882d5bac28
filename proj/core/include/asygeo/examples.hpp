#pragma once

#include <span>
#include <string>
#include <vector>

#include "asygeo/check.hpp"
#include "asygeo/manifold.hpp"
#include "asygeo/quadrature.hpp"
#include "asygeo/sweep.hpp"

namespace asygeo {

/// x_0, ..., x_N of the plateau recurrence.
PlateauSequence plateau_sequence(int N);

/// Upper bound for Cap_p(B(o, 1)) on the plateau manifold from the first
/// plateaus: (Σ_{n=1}^{K} e^{(1+x_n)(1+1/(1-p))})^{1-p}, in log form.
struct PlateauCapacityBound {
  double p = 0.0;
  int terms_requested = 0;
  int terms_used = 0;
  /// Terms past the last representable plateau only shrink the bound further.
  bool truncated = false;
  double log_bound = 0.0;
  /// ln of the last term, (1 + x_K)(1 + 1/(1-p)); its growth certifies Cap = 0.
  double log_last_term = 0.0;
};
PlateauCapacityBound example31_capacity(double p, int K_terms);

struct PlateauEntropyPoint {
  int k = 0;
  double R = 0.0;      // x_k + 2
  double lower = 0.0;  // (x_k + 1) / (x_k + 2) <= ln V(R) / R
  double upper = 0.0;  // (ln(x_k + 2) + x_k + 1) / (x_k + 2) >= ln V(R) / R
};
/// Bracket of ln V(R) / R at R = x_k + 2, k = 1..K (representable plateaus only).
std::vector<PlateauEntropyPoint> example31_entropy(int K_terms);

/// J(x) = ∫_x^∞ e^{-θ(4 + sin(ln θ - ln x))} dθ for 0 < x <= 1.
double example32_tail_integral(double x, const QuadratureSpec& q = {});

/// I_1 (sign = +1) or I_2 (sign = -1): ∫_0^∞ e^{-θ(4 + sign sin ln θ)} dθ.
double example32_I(int sign, const QuadratureSpec& q = {});

struct OscillationAnalysis {
  double I1 = 0.0;
  double I2 = 0.0;
  double gap = 0.0;         // I2 - I1
  double separation = 0.0;  // 1/I2 - 1/I1
  // ∫ e^{2t - 4e^t} sin t over (-∞, -π), (-π, π), (π, ∞).
  double A = 0.0;
  double B = 0.0;
  double log_abs_C = 0.0;
  int sign_C = 0;
  double A_bound = 0.0;
  double B_bound = 0.0;
  double log_C_bound = 0.0;
  double series_tail_bound = 0.0;   // Σ_{k>=1} 4^{-(2k+2)}
  double series_tail_direct = 0.0;  // Σ_{k>=1} of the actual series terms
  double bound_sum = 0.0;           // A + B + C + 1/240 with direct A, B, C
  double bound_sum_closed = 0.0;    // the same with the closed-form bounds
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool all_pass() const noexcept;
};

/// Direct quadrature of I_1, I_2, A, B, C and the series tail, checked
/// against the closed-form dominating bounds. Throws InvariantError if a bound
/// fails to dominate its integral.
OscillationAnalysis example32_bound_chain(const QuadratureSpec& q = {});

/// (p-1) Cap_p(B(o,1))^{1/(p-1)} = 1/J(1/(p-1)) at p_k = 1 + e^{2kπ} and
/// p'_k = 1 + e^{2kπ-π}, with the two subsequence limits.
SweepReport example32_capacity_oscillation(std::span<const int> k_list, const QuadratureSpec& q = {});

}  // namespace asygeo
