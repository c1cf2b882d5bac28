#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asygeo {

/// A strictly increasing grid of exponents p > 1.
class PGrid {
 public:
  explicit PGrid(std::vector<double> values);

  /// "geom:pmin:pmax:count" (geometric spacing) or an explicit comma list.
  static PGrid parse(std::string_view spec);
  static PGrid geometric(double p_min, double p_max, int count);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Validates a single exponent; throws DomainError("p must exceed 1") otherwise.
double require_exponent(double p);

struct SweepSample {
  double p = 0.0;
  double value = 0.0;
  double error = 0.0;  // absolute error estimate of value, 0 when unknown
};

struct SubsequenceLimit {
  std::string label;
  double limit = 0.0;
};

/// Samples of a scaled quantity along increasing p with its estimated limit.
struct SweepReport {
  std::vector<SweepSample> samples;
  std::optional<double> limit_estimate;
  double limsup_estimate = 0.0;
  double liminf_estimate = 0.0;
  bool monotone = false;
  bool oscillating = false;
  double fit_residual = 0.0;  // rms residual of the a + b/p fit
  double fit_a = 0.0;
  double fit_b = 0.0;
  std::vector<SubsequenceLimit> subsequence_limits;
  std::vector<std::string> diagnostics;

  /// The limit when it exists, otherwise the limsup estimate.
  double point_value() const noexcept { return limit_estimate.value_or(limsup_estimate); }
};

/// Fits a + b/p to the trailing half of the samples and classifies the tail:
/// converged when the fit residual is below 1e-3 |a| and a non-monotone tail
/// wiggles by less than 5 residuals; oscillating when the tail is neither
/// converged nor monotone. Needs at least 6 samples.
SweepReport extrapolate(std::span<const SweepSample> samples);

/// extrapolate(), except that an all-zero sweep reports the limit 0 and
/// needs no minimum sample count.
SweepReport summarize_sweep(std::span<const SweepSample> samples);

/// Limit of one subsequence: a + b/p fit when at least three samples span a
/// usable range of 1/p, the last sample otherwise.
double subsequence_limit(std::span<const SweepSample> samples);

}  // namespace asygeo
