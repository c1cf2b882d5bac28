#include "asygeo/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "asygeo/capacity.hpp"
#include "asygeo/errors.hpp"

namespace asygeo {

std::vector<double> default_entropy_grid(const WarpedManifold& m) {
  std::vector<double> grid;
  if (const PlateauProfile* pl = m.plateaus()) {
    const auto& seq = pl->sequence();
    for (int k = 1; k <= PlateauProfile::kLastRepresentable && k < seq.size(); ++k)
      grid.push_back((seq.xs[k] + 2.0) * m.scale());
    return grid;
  }
  // ln V / R of the oscillating model swings with sin ln R, so the trailing
  // half of its grid has to reach a crest at ln R = 5π/2.
  const bool oscillating = m.kind() == ManifoldKind::kExample32;
  const int count = oscillating ? 60 : 40;
  const double top = oscillating ? 3.0 * std::numbers::pi : std::log(60.0);
  for (int i = 0; i < count; ++i) grid.push_back(std::exp(top * i / (count - 1)) * m.scale());
  return grid;
}

EntropyReport volume_entropy(const WarpedManifold& m, std::span<const double> R_grid, const QuadratureSpec& q) {
  if (R_grid.empty()) throw DomainError("entropy grid must not be empty");
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    if (!(R_grid[i] > 0.0)) throw DomainError("entropy grid must be positive");
    if (i > 0 && !(R_grid[i] > R_grid[i - 1])) throw DomainError("entropy grid must increase");
  }
  const auto table = area_volume_table(m, R_grid, q);
  EntropyReport rep;
  const std::size_t n = table.size();
  const std::size_t tail_n = std::min(n, std::max<std::size_t>(3, n / 2));
  const std::size_t first = n - tail_n;
  for (std::size_t i = first; i < n; ++i) {
    rep.ratio_tail.emplace_back(table[i].t, table[i].log_volume / table[i].t);
    rep.sv_ratio_tail.emplace_back(table[i].t, std::exp(table[i].log_area - table[i].log_volume));
  }

  rep.condition_1_2 = true;
  for (std::size_t i = 1; i < rep.sv_ratio_tail.size(); ++i)
    if (rep.sv_ratio_tail[i].second > rep.sv_ratio_tail[i - 1].second * (1.0 + 1e-9)) rep.condition_1_2 = false;

  double ratio_max = 0.0;
  for (const auto& [R, v] : rep.ratio_tail) ratio_max = std::max(ratio_max, v);

  if (tail_n >= 4) {
    Eigen::MatrixXd A(tail_n, 3);
    Eigen::VectorXd y(tail_n);
    for (std::size_t i = 0; i < tail_n; ++i) {
      const auto& row = table[first + i];
      A(i, 0) = row.t;
      A(i, 1) = std::log(row.t);
      A(i, 2) = 1.0;
      y(i) = row.log_volume;
    }
    const Eigen::Vector3d c = A.colPivHouseholderQr().solve(y);
    rep.fit_a = c(0);
    rep.fit_b = c(1);
    rep.fit_c = c(2);
    rep.fit_residual = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(tail_n));
    rep.fit_used = rep.fit_residual <= 1e-3;
  }

  const double R_last = table.back().t;
  const double sv_last = rep.sv_ratio_tail.back().second;
  double slope = 0.0;
  if (rep.fit_used) {
    rep.entropy = std::max(0.0, rep.fit_a);
    slope = rep.fit_a + rep.fit_b / R_last;
  } else {
    rep.entropy = ratio_max;
    rep.diagnostics.push_back("volume growth is not of the form aR + b ln R + c; largest trailing ln V/R used");
    if (n >= 2) {
      const auto& a = table[n - 2];
      const auto& b = table[n - 1];
      slope = (b.log_volume - a.log_volume) / (b.t - a.t);
    }
  }
  rep.growth_consistent = std::fabs(slope - sv_last) <= 0.02 * std::max(std::fabs(sv_last), 1e-12);
  return rep;
}

bool ChainVerdict::all_pass() const noexcept {
  return failed_legs.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class F>
void run_leg(ChainVerdict& out, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    out.failed_legs.push_back(name + ": " + e.what());
  }
}

}  // namespace

ChainVerdict verify_chain(const WarpedManifold& m, const PGrid& eigen_grid, const ChainConfig& cfg) {
  ChainVerdict out;
  run_leg(out, "entropy", [&] {
    out.entropy = volume_entropy(m, default_entropy_grid(m), cfg.quadrature).entropy;
  });
  run_leg(out, "capacity", [&] {
    const SweepReport rep = infinity_capacity_sweep(m, cfg.r, cfg.capacity_grid, cfg.quadrature);
    out.capacity = rep.point_value();
    out.capacity_liminf = rep.limit_estimate.value_or(rep.liminf_estimate);
  });
  MazyaSearch search;
  search.entropy = out.entropy;
  run_leg(out, "eigenvalue", [&] {
    const SweepReport rep = infinity_eigenvalue_sweep(m, eigen_grid, cfg.schedule, cfg.solver, search);
    out.lambda = rep.point_value();
  });
  run_leg(out, "mazya", [&] {
    out.mazya = mazya_sweep(m, cfg.mazya_grid, search, cfg.quadrature).point_value();
  });

  double scale = 0.0;
  for (const auto& v : {out.entropy, out.capacity, out.lambda, out.mazya})
    if (v) scale = std::max(scale, std::fabs(*v));
  const double eps = cfg.eps_rel * scale + cfg.eps_abs;
  out.epsilon = eps;

  if (out.entropy && out.capacity)
    out.checks.push_back({"entropy >= capacity", *out.entropy + eps >= *out.capacity,
                          fmt(*out.entropy) + " vs " + fmt(*out.capacity)});
  if (out.capacity && out.lambda)
    out.checks.push_back({"capacity >= eigenvalue", *out.capacity + eps >= *out.lambda,
                          fmt(*out.capacity) + " vs " + fmt(*out.lambda)});
  if (out.lambda && out.mazya)
    out.checks.push_back({"eigenvalue == mazya", std::fabs(*out.lambda - *out.mazya) <= eps,
                          fmt(*out.lambda) + " vs " + fmt(*out.mazya)});
  if (out.lambda)
    out.checks.push_back({"eigenvalue >= 0", *out.lambda >= -eps, fmt(*out.lambda)});
  if (out.entropy && out.capacity) out.strict_gap = *out.capacity < *out.entropy - eps;
  return out;
}

}  // namespace asygeo
