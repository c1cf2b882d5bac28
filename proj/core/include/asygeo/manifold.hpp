#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asygeo/quadrature.hpp"

namespace asygeo {

enum class ManifoldKind { kHyperbolic, kEuclidean, kExample31, kExample32, kCustom, kTabulated };

std::string_view to_string(ManifoldKind kind) noexcept;
ManifoldKind manifold_kind_from_string(std::string_view name);

/// ln of the area of the unit n-sphere, ω_n = 2π^{(n+1)/2} / Γ((n+1)/2).
double log_unit_sphere_area(int n);

/// The recurrence x_0 = 1, x_1 = 2, x_{k+1} = x_k + 1 + e^{x_k + 1}.
///
/// Entries are exact doubles while e^{x_k+1} is representable; past that
/// only ln x_k is kept (ln x_{k+1} ≈ x_k + 1) and `exact` is false.
struct PlateauSequence {
  std::vector<double> xs;      // x_k, +inf once unrepresentable
  std::vector<double> log_xs;  // ln x_k, always finite
  std::vector<bool> exact;

  static PlateauSequence generate(int count);
  int size() const noexcept { return static_cast<int>(log_xs.size()); }
};

/// Piecewise description of ln S(t) for the plateau construction:
/// constant x_k + 1 on [x_k + 1, x_{k+1}], smooth-step transitions on
/// [x_k, x_k + 1], and 1 + n ln t on (0, 1].
class PlateauProfile {
 public:
  explicit PlateauProfile(int n);

  /// ln S(t) for t > 0.
  double log_area(double t) const;

  /// ln ∫_a^b S(t)^w dt, evaluated piece by piece (closed form on plateaus,
  /// unit-length quadrature on transitions). b may be +inf.
  Integral log_area_power_integral(double a, double b, double w, const QuadratureSpec& q) const;

  const PlateauSequence& sequence() const noexcept { return seq_; }

  /// Index of the last plateau whose endpoints are representable doubles.
  static constexpr int kLastRepresentable = 3;

 private:
  int n_;
  PlateauSequence seq_;
};

/// e^{-1/s}-based C^∞ step on [0, 1], flat to all orders at both ends.
double smooth_step(double s) noexcept;

/// A rotationally symmetric manifold [0, ∞) × S^n with metric dt² + φ(t)² g_S.
///
/// The geometry is carried entirely by ln S(t), S(t) = ω_n φ(t)^n the area of
/// the geodesic sphere of radius t. Instances are immutable and cheap to copy.
class WarpedManifold {
 public:
  using LogAreaFn = std::function<double(double)>;

  /// `log_area` must be evaluable for t > 0 (and at 0 when !has_pole).
  WarpedManifold(ManifoldKind kind, int n, LogAreaFn log_area, bool has_pole, std::string label);

  ManifoldKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int dimension() const noexcept { return n_ + 1; }
  bool has_pole() const noexcept { return has_pole_; }
  double scale() const noexcept { return scale_; }
  const std::string& label() const noexcept { return label_; }

  /// ln S(t) = ln ω_n + n ln φ(t).
  double log_area(double t) const;
  /// ln φ(t).
  double log_phi(double t) const;
  double phi(double t) const { return std::exp(log_phi(t)); }

  /// ln ∫_a^b S(t)^w dt (b may be +inf). Divergence is reported on the result.
  Integral log_area_power_integral(double a, double b, double w, const QuadratureSpec& q = {}) const;

  /// ln V(r) = ln ∫_0^r S(t) dt.
  double log_volume(double r, const QuadratureSpec& q = {}) const;

  /// The same manifold with metric λ² g: S_λ(t) = λ^n S(t/λ).
  WarpedManifold rescaled(double lambda) const;

  /// Non-null for the plateau construction.
  const PlateauProfile* plateaus() const noexcept { return plateaus_.get(); }

  /// Break points of the radial profile inside (a, b), e.g. zeros of sin ln t.
  std::vector<double> breakpoints(double a, double b) const;

 private:
  friend WarpedManifold make_example31(int n);

  ManifoldKind kind_;
  int n_;
  LogAreaFn log_area_;
  bool has_pole_;
  std::string label_;
  double scale_ = 1.0;
  std::shared_ptr<const PlateauProfile> plateaus_;
};

struct AreaVolumePair {
  double t = 0.0;
  double log_area = 0.0;
  double log_volume = 0.0;
};

/// Built-in models: hyperbolic (φ = sinh t), euclidean (φ = t), the plateau
/// manifold, and the oscillating manifold ln S = t(4 + sin ln t) for t >= 1.
WarpedManifold make_model(ManifoldKind kind, int n);
WarpedManifold make_example31(int n);
/// φ given as an expression in t (see Expression for the grammar).
WarpedManifold make_custom(int n, std::string_view phi_expression);
/// φ tabulated at increasing t; monotone cubic between points, linear in ln φ
/// outside them. Requires at least four points.
WarpedManifold make_tabulated(int n, std::vector<std::pair<double, double>> points);

/// Parses a JSON manifold description:
///   {"kind": "custom", "n": 2, "phi": "sinh(t)"}
///   {"kind": "tabulated", "n": 2, "points": [[t, phi], ...]}
///   {"kind": "hyperbolic", "n": 2, "scale": 2.0}
WarpedManifold manifold_from_json(std::string_view json_text);

/// Accepts "kind:n" for built-ins (e.g. "hyperbolic:2") or a path to a JSON file.
WarpedManifold load_manifold(std::string_view spec);

/// Samples (t, ln S, ln V) on a grid, with volume accumulated segment by segment.
std::vector<AreaVolumePair> area_volume_table(const WarpedManifold& m, std::span<const double> ts,
                                              const QuadratureSpec& q = {});

}  // namespace asygeo
