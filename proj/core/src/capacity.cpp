#include "asygeo/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "asygeo/errors.hpp"
#include "asygeo/parallel.hpp"

namespace asygeo {

namespace {

CapacityResult from_integral(const Integral& in, double p, double r, double r_outer) {
  CapacityResult res;
  res.p = p;
  res.r = r;
  res.r_outer = r_outer;
  if (in.divergent) {
    res.parabolic = true;
    return res;
  }
  res.log_cap = (1.0 - p) * in.log();
  // Relative error carries through the power 1 - p.
  res.error_log = std::log(p - 1.0) + in.log_error - in.log() + res.log_cap;
  return res;
}

}  // namespace

double CapacityResult::scaled() const noexcept {
  if (parabolic || log_cap == kNegInf) return 0.0;
  return p * std::exp(log_cap / p);
}

CapacityResult log_cap_ball(const WarpedManifold& m, double r, double p, const QuadratureSpec& q) {
  require_exponent(p);
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  const Integral in = m.log_area_power_integral(r, kPosInf, 1.0 / (1.0 - p), q);
  return from_integral(in, p, r, kPosInf);
}

double capacitary_potential(const WarpedManifold& m, double r, double p, double x, const QuadratureSpec& q) {
  require_exponent(p);
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  if (!(x >= r)) throw DomainError("potential is evaluated at x >= r");
  const double w = 1.0 / (1.0 - p);
  const Integral whole = m.log_area_power_integral(r, kPosInf, w, q);
  if (whole.divergent) throw ParabolicError("no p-potential: the capacity of the ball vanishes");
  if (x == r) return 1.0;
  // The inner piece is integrated separately so u(x) stays accurate near 1.
  const Integral inner = m.log_area_power_integral(r, x, w, q);
  const double log_rest = log_sub_exp(whole.log(), inner.log());
  return std::clamp(std::exp(log_rest - whole.log()), 0.0, 1.0);
}

CapacityResult log_cap_condenser(const WarpedManifold& m, double r1, double r2, double p, const QuadratureSpec& q) {
  require_exponent(p);
  if (!(r1 > 0.0)) throw DomainError("inner radius must be positive");
  if (!(r1 < r2)) throw DomainError("condenser requires r1 < r2");
  const Integral in = m.log_area_power_integral(r1, r2, 1.0 / (1.0 - p), q);
  return from_integral(in, p, r1, r2);
}

double inverse_volume(const WarpedManifold& m, double vol, const QuadratureSpec& q) {
  if (!(vol > 0.0)) throw DomainError("volume must be positive");
  const double target = std::log(vol);
  double lo = 0.0;
  double hi = 1.0;
  while (m.log_volume(hi, q) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw DomainError("volume exceeds the total volume of the manifold");
  }
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double g = m.log_volume(r, q) - target;
    if (g > 0.0) hi = r; else lo = r;
    if (std::fabs(g) < 1e-13 || hi - lo < 1e-14 * hi) break;
    // d ln V / dr = S / V.
    const double step = g / std::exp(m.log_area(r) - m.log_volume(r, q));
    double next = r - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
  }
  return r;
}

LogQuantity isoperimetric_lower_bound(const WarpedManifold& m, double vol, double p, const QuadratureSpec& q) {
  require_exponent(p);
  if (!(vol > 0.0)) throw DomainError("volume must be positive");
  const Integral total = m.log_area_power_integral(0.0, kPosInf, 1.0, q);
  if (!total.divergent && std::log(vol) >= total.log())
    throw DomainError("volume must be below the total volume of the manifold");
  const double r = inverse_volume(m, vol, q);
  // dτ = S dt turns I(τ)^{p/(1-p)} dτ into S^{p/(1-p)} S dt.
  const double e = p / (1.0 - p);
  const Integral in = m.log_area_power_integral(r, kPosInf, e + 1.0, q);
  if (in.divergent) return LogQuantity::zero();
  return LogQuantity::from_log((1.0 - p) * in.log());
}

CapacityBracket capacity_bracket(const WarpedManifold& m, double r1, double r2, double p, const QuadratureSpec& q) {
  if (!(r1 <= r2)) throw DomainError("bracket requires r1 <= r2");
  return {log_cap_ball(m, r1, p, q), log_cap_ball(m, r2, p, q)};
}

SweepReport infinity_capacity_sweep(const WarpedManifold& m, double r, const PGrid& grid, const QuadratureSpec& q,
                                    const std::vector<PSubsequence>& subsequences) {
  std::vector<SweepSample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const CapacityResult c = log_cap_ball(m, r, grid[i], q);
    const double scaled = c.scaled();
    const double rel = c.parabolic ? 0.0 : std::exp(c.error_log - c.log_cap);
    samples[i] = {grid[i], scaled, scaled * rel / grid[i]};
  });

  SweepReport rep = summarize_sweep(samples);

  for (const auto& sub : subsequences) {
    std::vector<SweepSample> pts(sub.ps.size());
    parallel_for(sub.ps.size(), [&](std::size_t i) {
      pts[i] = {sub.ps[i], log_cap_ball(m, r, sub.ps[i], q).scaled()};
    });
    rep.subsequence_limits.push_back({sub.label, subsequence_limit(pts)});
  }
  if (rep.subsequence_limits.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(
        rep.subsequence_limits.begin(), rep.subsequence_limits.end(),
        [](const SubsequenceLimit& a, const SubsequenceLimit& b) { return a.limit < b.limit; });
    if (!rep.limit_estimate) {
      rep.limsup_estimate = std::max(rep.limsup_estimate, hi->limit);
      rep.liminf_estimate = std::min(rep.liminf_estimate, lo->limit);
    }
  }
  return rep;
}

BallIndependence ball_independence_check(const WarpedManifold& m, double r1, double r2, double p_large,
                                         const QuadratureSpec& q) {
  if (!(r1 > 0.0) || !(r1 <= r2)) throw DomainError("ball_independence_check requires 0 < r1 <= r2");
  const CapacityResult c1 = log_cap_ball(m, r1, p_large, q);
  const CapacityResult c2 = r1 == r2 ? c1 : log_cap_ball(m, r2, p_large, q);
  if (c1.parabolic || c2.parabolic) throw ParabolicError("capacity vanishes; ratio undefined");
  BallIndependence out;
  out.scaled_r1 = c1.scaled();
  out.scaled_r2 = c2.scaled();
  out.ratio = r1 == r2 ? 1.0 : std::exp((c1.log_cap - c2.log_cap) / p_large);
  out.flagged = log_cap_ball(m, r1, 2.0 * p_large, q).parabolic;
  return out;
}

}  // namespace asygeo
