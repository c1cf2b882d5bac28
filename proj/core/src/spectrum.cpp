#include "asygeo/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "asygeo/asymptotics.hpp"
#include "asygeo/capacity.hpp"
#include "asygeo/errors.hpp"
#include "asygeo/parallel.hpp"

namespace asygeo {

namespace {

constexpr int kGauss = 8;

struct GaussRule {
  std::array<double, kGauss> x{};  // on [0, 1]
  std::array<double, kGauss> log_w{};
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGauss>;
    GaussRule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (int k = 0; k < kGauss / 2; ++k) {
      r.x[k] = 0.5 * (1.0 - a[k]);
      r.x[kGauss - 1 - k] = 0.5 * (1.0 + a[k]);
      r.log_w[k] = r.log_w[kGauss - 1 - k] = std::log(0.5 * w[k]);
    }
    return r;
  }();
  return rule;
}

// Per-segment data for S on a fixed grid.
struct Discretization {
  std::vector<double> t;
  std::vector<double> log_h;
  std::vector<double> log_seg;   // ln ∫_seg S
  std::vector<std::array<double, kGauss>> log_gauss;  // ln(w h S) at Gauss points

  std::size_t segments() const { return log_h.size(); }
};

Discretization discretize(const WarpedManifold& m, std::span<const double> nodes, const QuadratureSpec& q) {
  const GaussRule& g = gauss_rule();
  Discretization d;
  d.t.assign(nodes.begin(), nodes.end());
  const std::size_t n = nodes.size() - 1;
  d.log_h.resize(n);
  d.log_seg.resize(n);
  d.log_gauss.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = nodes[i + 1] - nodes[i];
    d.log_h[i] = std::log(h);
    d.log_seg[i] = m.log_area_power_integral(nodes[i], nodes[i + 1], 1.0, q).log();
    for (int k = 0; k < kGauss; ++k)
      d.log_gauss[i][k] = g.log_w[k] + d.log_h[i] + m.log_area(nodes[i] + h * g.x[k]);
  }
  return d;
}

double safe_log(double v) { return v == 0.0 ? kNegInf : std::log(std::fabs(v)); }

struct Quotient {
  double log_num = kNegInf;
  double log_den = kNegInf;
  double value() const { return log_num - log_den; }
};

Quotient quotient(const Discretization& d, double p, std::span<const double> u) {
  const GaussRule& g = gauss_rule();
  const std::size_t n = d.segments();
  std::vector<double> num(n);
  std::vector<double> den(n * kGauss);
  for (std::size_t i = 0; i < n; ++i) {
    num[i] = d.log_seg[i] + p * (safe_log(u[i + 1] - u[i]) - d.log_h[i]);
    for (int k = 0; k < kGauss; ++k) {
      const double ug = u[i] + (u[i + 1] - u[i]) * g.x[k];
      den[i * kGauss + k] = d.log_gauss[i][k] + p * safe_log(ug);
    }
  }
  return {log_sum_exp(num), log_sum_exp(den)};
}

// One step of nonlinear inverse iteration for the radial equation
// (S |u'|^{p-2} u')' = -λ S |u|^{p-2} u with u'(0) = 0, u(R) = 0. The load
// uses the same Gauss rule as the quotient, so the fixed point is the exact
// stationary point of the discrete quotient. Returns ln of the quotient of
// the input profile, which shares all the logarithms with the step.
double inverse_step(const Discretization& d, double p, std::span<const double> u, std::vector<double>& next) {
  const GaussRule& g = gauss_rule();
  const std::size_t n = d.segments();
  std::vector<double> left(n);   // ln of the load a segment puts on its left node
  std::vector<double> right(n);  // ... and on its right node
  std::vector<double> num(n);
  std::vector<double> den(n);
  std::array<double, kGauss> base{};
  std::array<double, kGauss> ug{};
  for (std::size_t i = 0; i < n; ++i) {
    const double du = u[i + 1] - u[i];
    num[i] = d.log_seg[i] + p * (safe_log(du) - d.log_h[i]);
    // Each segment is summed in linear scale relative to its largest term.
    double top = kNegInf;
    for (int k = 0; k < kGauss; ++k) {
      ug[k] = u[i] + du * g.x[k];
      base[k] = ug[k] > 0.0 ? d.log_gauss[i][k] + (p - 1.0) * std::log(ug[k]) : kNegInf;
      top = std::max(top, base[k]);
    }
    if (top == kNegInf) {
      left[i] = right[i] = den[i] = kNegInf;
      continue;
    }
    double sl = 0.0;
    double sr = 0.0;
    double sd = 0.0;
    for (int k = 0; k < kGauss; ++k) {
      const double e = std::exp(base[k] - top);
      sl += e * (1.0 - g.x[k]);
      sr += e * g.x[k];
      sd += e * ug[k];
    }
    left[i] = top + std::log(sl);
    right[i] = top + std::log(sr);
    den[i] = top + std::log(sd);
  }
  std::vector<double> log_slope(n);
  double flux = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    flux = log_add_exp(flux, left[i]);
    if (i > 0) flux = log_add_exp(flux, right[i - 1]);
    log_slope[i] = (flux - (d.log_seg[i] - d.log_h[i])) / (p - 1.0) + d.log_h[i];
  }
  const double top = *std::max_element(log_slope.begin(), log_slope.end());
  next.assign(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) next[i] = next[i + 1] + std::exp(log_slope[i] - top);
  const double peak = next.front();
  for (double& v : next) v /= peak;
  return log_sum_exp(num) - log_sum_exp(den);
}

// Gradient of ln(num/den) with respect to the nodal values.
std::vector<double> gradient(const Discretization& d, double p, std::span<const double> u, const Quotient& qt) {
  const GaussRule& g = gauss_rule();
  const std::size_t n = d.segments();
  std::vector<double> grad(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double du = u[i + 1] - u[i];
    if (du != 0.0) {
      const double term = p * std::copysign(1.0, du) *
                          std::exp(d.log_seg[i] + (p - 1.0) * (safe_log(du) - d.log_h[i]) - d.log_h[i] - qt.log_num);
      grad[i] -= term;
      grad[i + 1] += term;
    }
    for (int k = 0; k < kGauss; ++k) {
      const double ug = u[i] + du * g.x[k];
      if (ug == 0.0) continue;
      const double term =
          p * std::copysign(1.0, ug) * std::exp(d.log_gauss[i][k] + (p - 1.0) * safe_log(ug) - qt.log_den);
      grad[i] -= term * (1.0 - g.x[k]);
      grad[i + 1] -= term * g.x[k];
    }
  }
  grad[n] = 0.0;
  return grad;
}

int segments_for(double R, const SolverConfig& cfg) {
  const double wanted = std::ceil(R / cfg.max_step);
  return static_cast<int>(std::clamp(wanted, static_cast<double>(cfg.nodes), static_cast<double>(cfg.max_nodes)));
}

// Linear interpolation of a profile onto new nodes on the same [0, R].
void interpolate(const RadialProfile& from, RadialProfile& to) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < to.nodes.size(); ++i) {
    const double t = to.nodes[i];
    while (j + 2 < from.nodes.size() && from.nodes[j + 1] < t) ++j;
    const double w = (t - from.nodes[j]) / (from.nodes[j + 1] - from.nodes[j]);
    to.values[i] = std::max(0.0, (1.0 - w) * from.values[j] + w * from.values[j + 1]);
  }
  to.values.back() = 0.0;
}

EigenResult solve_ball(const WarpedManifold& m, double R, double p, int segments, const SolverConfig& cfg,
                       const RadialProfile* start = nullptr) {
  RadialProfile prof = RadialProfile::initial(R, segments);
  if (start) interpolate(*start, prof);
  const Discretization d = discretize(m, prof.nodes, cfg.quadrature);
  std::vector<double>& u = prof.values;

  EigenResult res;
  res.p = p;
  res.R = R;

  // The quotient history drives the stopping rule for both phases: stop once
  // it has dropped by less than rel_tol over the last `window` iterations.
  std::vector<double> history;
  auto settled = [&] {
    return static_cast<int>(history.size()) > cfg.window &&
           history[history.size() - 1 - cfg.window] - history.back() < cfg.rel_tol;
  };

  // Inverse iteration brings the profile to the discrete minimizer.
  std::vector<double> next;
  std::vector<double> last_good = u;
  int it = 0;
  bool stalled = false;
  for (; it < cfg.max_iterations; ++it) {
    const double q = inverse_step(d, p, u, next);
    if (!history.empty() && q > history.back()) {
      u = last_good;
      stalled = true;
      break;
    }
    history.push_back(q);
    if (settled()) break;
    last_good = u;
    u.swap(next);
  }

  // Projected gradient with backtracking, used when inverse iteration stalls.
  double step = 1e-3;
  int polish = 0;
  for (; stalled && !settled() && it + polish < cfg.max_iterations; ++polish) {
    const Quotient qt = quotient(d, p, u);
    const auto grad = gradient(d, p, u, qt);
    const double gmax = std::accumulate(grad.begin(), grad.end(), 0.0,
                                        [](double a, double b) { return std::max(a, std::fabs(b)); });
    if (gmax == 0.0) break;
    bool moved = false;
    std::vector<double> trial(u.size());
    for (double s = std::min(1.0, step * 2.0); s > 1e-17; s *= 0.5) {
      for (std::size_t j = 0; j < u.size(); ++j) trial[j] = std::max(0.0, u[j] - s * grad[j] / gmax);
      trial.back() = 0.0;
      const double q = quotient(d, p, trial).value();
      if (q < history.back()) {
        u.swap(trial);
        history.push_back(q);
        step = s;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  const std::size_t w = std::min<std::size_t>(history.size() - 1, cfg.window);
  res.residual = history[history.size() - 1 - w] - history.back();
  res.iterations = it + polish;
  if (res.iterations >= cfg.max_iterations && res.residual > cfg.rel_tol)
    throw ToleranceError("eigen solver did not settle within the iteration limit", std::exp(history.back()),
                         res.residual * std::exp(history.back()));
  const double peak = *std::max_element(u.begin(), u.end());
  for (double& v : u) v /= peak;
  res.log_lambda = history.back();
  res.profile = std::move(prof);
  return res;
}

EigenResult solve_with_error(const WarpedManifold& m, double R, double p, int segments, const SolverConfig& cfg) {
  const EigenResult coarse = solve_ball(m, R, p, std::max(2, segments / 2), cfg);
  EigenResult fine = solve_ball(m, R, p, segments, cfg, &coarse.profile);
  // Linear elements converge at second order, so the fine error is about a
  // third of the difference; the whole difference is kept as the bound.
  fine.error_bound = std::max(0.0, coarse.log_lambda - fine.log_lambda) + fine.residual;
  return fine;
}

}  // namespace

RadialProfile RadialProfile::initial(double R, int segments) {
  if (!(R > 0.0)) throw DomainError("ball radius must be positive");
  if (segments < 2) throw DomainError("radial profile needs at least two segments");
  RadialProfile prof;
  prof.nodes.resize(segments + 1);
  prof.values.resize(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double t = R * i / segments;
    prof.nodes[i] = t;
    prof.values[i] = 1.0 - (t / R) * (t / R);
  }
  prof.nodes.back() = R;
  prof.values.back() = 0.0;
  return prof;
}

void RadialProfile::validate() const {
  if (nodes.size() < 3 || nodes.size() != values.size()) throw DomainError("radial profile needs matching nodes and values");
  if (nodes.front() != 0.0) throw DomainError("radial profile must start at t = 0");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("radial profile nodes must increase");
  if (values.back() != 0.0) throw DomainError("radial profile must vanish at t = R");
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; }))
    throw DomainError("radial profile is identically zero");
}

double log_rayleigh_quotient(const WarpedManifold& m, double p, const RadialProfile& u, const QuadratureSpec& q) {
  require_exponent(p);
  u.validate();
  const Discretization d = discretize(m, u.nodes, q);
  const Quotient qt = quotient(d, p, u.values);
  if (qt.log_den == kNegInf) throw DomainError("degenerate profile: zero denominator");
  return qt.value();
}

double rayleigh_quotient(const WarpedManifold& m, double p, const RadialProfile& u, const QuadratureSpec& q) {
  return std::exp(log_rayleigh_quotient(m, p, u, q));
}

EigenResult lambda_1p_ball(const WarpedManifold& m, double R, double p, const SolverConfig& cfg) {
  require_exponent(p);
  if (!(R > 0.0)) throw DomainError("ball radius must be positive");
  return solve_with_error(m, R, p, cfg.nodes, cfg);
}

EigenResult lambda_1p_manifold(const WarpedManifold& m, double p, const RadiusSchedule& schedule,
                               const SolverConfig& cfg) {
  require_exponent(p);
  if (!(schedule.growth > 1.0)) throw DomainError("radius schedule must increase");
  double R = schedule.R0 > 0.0 ? schedule.R0 : std::max(5.0, 5.0 * p);
  EigenResult best = solve_with_error(m, R, p, segments_for(R, cfg), cfg);
  best.stabilized = false;
  while (R * schedule.growth <= schedule.R_max) {
    R *= schedule.growth;
    EigenResult next = solve_with_error(m, R, p, segments_for(R, cfg), cfg);
    const double change = (best.log_lambda - next.log_lambda) / p;
    if (next.log_lambda < best.log_lambda) {
      next.error_bound += best.log_lambda - next.log_lambda;
      next.stabilized = false;
      best = std::move(next);
    }
    // A rise means the grid, not the domain, now limits the estimate.
    if (std::fabs(change) <= schedule.rel_tol || change < 0.0) {
      best.stabilized = true;
      break;
    }
  }
  return best;
}

double log_mazya_f(const WarpedManifold& m, double r, double p, const QuadratureSpec& q) {
  const CapacityResult c = log_cap_ball(m, r, p, q);
  if (c.parabolic) return kNegInf;
  return c.log_cap - m.log_volume(r, q);
}

LogQuantity mazya_f(const WarpedManifold& m, double r, double p, const QuadratureSpec& q) {
  const double lf = log_mazya_f(m, r, p, q);
  return lf == kNegInf ? LogQuantity::zero() : LogQuantity::from_log(lf);
}

MazyaResult mazya_mp(const WarpedManifold& m, double p, const MazyaSearch& search, const QuadratureSpec& q) {
  require_exponent(p);
  if (!(search.r_min > 0.0) || !(search.r_max > search.r_min) || search.scan_points < 3)
    throw DomainError("invalid Maz'ya search bracket");
  MazyaResult res;
  res.p = p;

  const double entropy = search.entropy ? *search.entropy : volume_entropy(m, default_entropy_grid(m), q).entropy;
  res.log_tail_limit = entropy > 0.0 ? p * std::log(entropy) - (p - 1.0) * std::log(p - 1.0) : kNegInf;

  const int k = search.scan_points;
  const double lo = std::log(search.r_min);
  const double hi = std::log(std::max(search.r_max, 10.0 * p));
  std::vector<double> rs(k);
  for (int i = 0; i < k; ++i) rs[i] = std::exp(lo + (hi - lo) * i / (k - 1));

  // Parabolicity is global: one vanishing capacity means all vanish.
  if (log_cap_ball(m, rs.front(), p, q).parabolic) {
    res.argmin_r = rs.front();
    return res;
  }

  std::vector<double> vals(k);
  parallel_for(k, [&](std::size_t i) { vals[i] = log_mazya_f(m, rs[i], p, q); });
  const auto idx = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());

  if (idx == k - 1) {
    if (res.log_tail_limit <= vals[idx]) {
      res.attained_at_infinity = true;
      res.log_mp = res.log_tail_limit;
      res.argmin_r = kPosInf;
    } else {
      res.log_mp = vals[idx];
      res.argmin_r = rs[idx];
    }
    return res;
  }

  double best_r = rs[idx];
  double best = vals[idx];
  if (idx > 0) {
    const auto f = [&](double lr) { return log_mazya_f(m, std::exp(lr), p, q); };
    const auto [lr, v] = boost::math::tools::brent_find_minima(f, std::log(rs[idx - 1]), std::log(rs[idx + 1]), 40);
    if (v < best) {
      best = v;
      best_r = std::exp(lr);
    }
  }
  if (res.log_tail_limit < best) {
    res.attained_at_infinity = true;
    res.log_mp = res.log_tail_limit;
    res.argmin_r = kPosInf;
  } else {
    res.log_mp = best;
    res.argmin_r = best_r;
  }
  return res;
}

SandwichResult sandwich_check(const WarpedManifold& m, double p, const RadiusSchedule& schedule,
                              const SolverConfig& cfg, const MazyaSearch& search) {
  const MazyaResult mp = mazya_mp(m, p, search, cfg.quadrature);
  const EigenResult ev = lambda_1p_manifold(m, p, schedule, cfg);
  SandwichResult out;
  out.log_lambda = ev.log_lambda;
  out.log_mp = mp.log_mp;
  const double slack = std::log1p(1e-3);
  if (mp.log_mp == kNegInf) {
    out.lower_ok = true;
    out.upper_ok = ev.log_lambda <= std::log(1e-6);
    out.lower_ratio = kPosInf;
    out.upper_ratio = kPosInf;
    return out;
  }
  const double log_c = (p - 1.0) * std::log(p - 1.0) - p * std::log(p);
  out.lower_ok = ev.log_lambda >= log_c + mp.log_mp - slack;
  out.upper_ok = ev.log_lambda <= mp.log_mp + slack;
  out.lower_ratio = std::exp(ev.log_lambda - log_c - mp.log_mp);
  out.upper_ratio = std::exp(ev.log_lambda - mp.log_mp);
  return out;
}

SweepReport infinity_eigenvalue_sweep(const WarpedManifold& m, const PGrid& grid, const RadiusSchedule& schedule,
                                      const SolverConfig& cfg, const MazyaSearch& search) {
  MazyaSearch s = search;
  if (!s.entropy) s.entropy = volume_entropy(m, default_entropy_grid(m), cfg.quadrature).entropy;
  std::vector<SweepSample> samples(grid.size());
  std::vector<bool> settled(grid.size(), true);
  parallel_for(grid.size(), [&](std::size_t i) {
    const double p = grid[i];
    const MazyaResult mp = mazya_mp(m, p, s, cfg.quadrature);
    double log_l = mp.log_mp;
    double err = 0.0;
    if (log_l != kNegInf) {
      const EigenResult ev = lambda_1p_manifold(m, p, schedule, cfg);
      settled[i] = ev.stabilized;
      if (ev.log_lambda < log_l) {
        log_l = ev.log_lambda;
        err = ev.scaled_error();
      }
    }
    samples[i] = {p, log_l == kNegInf ? 0.0 : p * std::exp(log_l / p), err};
  });
  SweepReport rep = summarize_sweep(samples);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].value < samples[i - 1].value - samples[i].error - samples[i - 1].error) {
      rep.diagnostics.push_back("numerical inconsistency: scaled eigenvalue decreases between p = " +
                                std::to_string(samples[i - 1].p) + " and p = " + std::to_string(samples[i].p));
    }
  }
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!settled[i]) rep.diagnostics.push_back("ball exhaustion did not settle at p = " + std::to_string(grid[i]));
  return rep;
}

SweepReport mazya_sweep(const WarpedManifold& m, const PGrid& grid, const MazyaSearch& search, const QuadratureSpec& q) {
  MazyaSearch s = search;
  if (!s.entropy) s.entropy = volume_entropy(m, default_entropy_grid(m), q).entropy;
  std::vector<SweepSample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { samples[i] = {grid[i], mazya_mp(m, grid[i], s, q).scaled()}; });
  return summarize_sweep(samples);
}

}  // namespace asygeo
