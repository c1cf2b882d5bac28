#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asygeo/check.hpp"
#include "asygeo/manifold.hpp"
#include "asygeo/quadrature.hpp"
#include "asygeo/spectrum.hpp"
#include "asygeo/sweep.hpp"

namespace asygeo {

struct EntropyReport {
  double entropy = 0.0;
  std::vector<std::pair<double, double>> ratio_tail;     // (R, ln V(R) / R)
  std::vector<std::pair<double, double>> sv_ratio_tail;  // (R, S(R) / V(R))
  /// S/V nonincreasing over the trailing half of the grid.
  bool condition_1_2 = false;
  /// Growth slope of ln V agrees with S/V within 2% at the end of the grid.
  bool growth_consistent = false;
  /// ln V ≈ a R + b ln R + c on the trailing half; used when the fit is tight.
  double fit_a = 0.0;
  double fit_b = 0.0;
  double fit_c = 0.0;
  double fit_residual = 0.0;
  bool fit_used = false;
  std::vector<std::string> diagnostics;
};

/// 40 log-spaced radii in [1, 60]; for the plateau manifold the radii x_k + 2
/// for the representable plateaus.
std::vector<double> default_entropy_grid(const WarpedManifold& m);

/// Volume entropy limsup ln V(R) / R. A tight growth fit ln V = a R + b ln R + c
/// on the trailing half gives 𝒱 = a; otherwise the largest trailing ratio is used.
EntropyReport volume_entropy(const WarpedManifold& m, std::span<const double> R_grid, const QuadratureSpec& q = {});

struct ChainConfig {
  double r = 1.0;  // radius of the ball Ω
  PGrid capacity_grid = PGrid::geometric(10.0, 1e4, 12);
  PGrid mazya_grid = PGrid::geometric(10.0, 1e4, 12);
  double eps_rel = 0.03;
  double eps_abs = 1e-6;
  SolverConfig solver{};
  RadiusSchedule schedule{};
  QuadratureSpec quadrature{};
};

struct ChainVerdict {
  std::optional<double> entropy;
  std::optional<double> capacity;        // limsup point value of the capacity sweep
  std::optional<double> capacity_liminf;
  std::optional<double> lambda;
  std::optional<double> mazya;
  double epsilon = 0.0;
  std::vector<Check> checks;
  bool strict_gap = false;  // 𝒞 < 𝒱 beyond tolerance
  std::vector<std::string> failed_legs;

  bool all_pass() const noexcept;
};

/// Computes 𝒱, 𝒞(B(o, r)), Λ and ℳ and checks 𝒱 ≥ 𝒞 ≥ Λ = ℳ ≥ 0 within
/// ε = eps_rel * max|value| + eps_abs. A failing leg is recorded and the
/// remaining checks are made with what is available.
ChainVerdict verify_chain(const WarpedManifold& m, const PGrid& eigen_grid, const ChainConfig& cfg = {});

}  // namespace asygeo
