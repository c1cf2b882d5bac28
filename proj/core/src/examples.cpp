#include "asygeo/examples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "asygeo/errors.hpp"

namespace asygeo {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

double signed_value(const Integral& r) { return r.value.value(); }

}  // namespace

PlateauSequence plateau_sequence(int N) {
  if (N < 0) throw DomainError("plateau_sequence requires N >= 0");
  return PlateauSequence::generate(N + 1);
}

PlateauCapacityBound example31_capacity(double p, int K_terms) {
  require_exponent(p);
  if (!(p > 2.0)) throw DomainError("the plateau capacity bound requires p > 2");
  if (K_terms < 2) throw DomainError("the plateau capacity bound needs at least two terms");
  const PlateauSequence seq = PlateauSequence::generate(K_terms + 1);
  PlateauCapacityBound out;
  out.p = p;
  out.terms_requested = K_terms;
  const double slope = (p - 2.0) / (p - 1.0);
  std::vector<double> logs;
  for (int n = 1; n <= K_terms && n <= PlateauProfile::kLastRepresentable; ++n) {
    logs.push_back((seq.xs[n] + 1.0) * slope);
  }
  out.terms_used = static_cast<int>(logs.size());
  out.truncated = K_terms > out.terms_used;
  out.log_bound = (1.0 - p) * log_sum_exp(logs);
  out.log_last_term = logs.back();
  return out;
}

std::vector<PlateauEntropyPoint> example31_entropy(int K_terms) {
  if (K_terms < 1) throw DomainError("example31_entropy requires K >= 1");
  const PlateauSequence seq = PlateauSequence::generate(K_terms + 1);
  std::vector<PlateauEntropyPoint> out;
  for (int k = 1; k <= K_terms && k <= PlateauProfile::kLastRepresentable; ++k) {
    const double x = seq.xs[k];
    PlateauEntropyPoint pt;
    pt.k = k;
    pt.R = x + 2.0;
    pt.lower = (x + 1.0) / (x + 2.0);
    pt.upper = (std::log(x + 2.0) + x + 1.0) / (x + 2.0);
    out.push_back(pt);
  }
  return out;
}

double example32_tail_integral(double x, const QuadratureSpec& q) {
  if (!(x > 0.0) || !(x <= 1.0)) throw DomainError("J(x) requires 0 < x <= 1");
  const double lx = std::log(x);
  const auto f = [lx](double t) { return -t * (4.0 + std::sin(std::log(t) - lx)); };
  // 4 + sin >= 3, so e^{-3θ} dominates the tail.
  const auto br = sin_log_zeros(x, 60.0, lx);
  return std::exp(integrate(f, x, kPosInf, q, TailBound{0.0, 3.0}, br).log());
}

double example32_I(int sign, const QuadratureSpec& q) {
  if (sign != 1 && sign != -1) throw DomainError("example32_I takes sign +1 or -1");
  const double s = sign;
  const auto f = [s](double t) { return -t * (4.0 + s * std::sin(std::log(t))); };
  const auto br = sin_log_zeros(1e-12, 60.0);
  return std::exp(integrate(f, 0.0, kPosInf, q, TailBound{0.0, 3.0}, br).log());
}

bool OscillationAnalysis::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

OscillationAnalysis example32_bound_chain(const QuadratureSpec& q) {
  OscillationAnalysis out;
  out.I1 = example32_I(1, q);
  out.I2 = example32_I(-1, q);
  out.gap = out.I2 - out.I1;
  out.separation = 1.0 / out.I2 - 1.0 / out.I1;

  // With θ = e^t the k = 0 series term ∫ θ e^{-4θ} sin ln θ dθ splits at θ = e^{±π}.
  const auto k0 = [](double th) {
    const double s = std::sin(std::log(th));
    if (s == 0.0) return LogQuantity::zero();
    return LogQuantity::from_log(std::log(th) - 4.0 * th + std::log(std::abs(s)), s > 0 ? 1 : -1);
  };
  const double lo = std::exp(-kPi);
  const double hi = std::exp(kPi);
  {
    const auto br = sin_log_zeros(1e-200, lo);
    out.A = signed_value(integrate_signed(k0, 0.0, lo, q, std::nullopt, br));
  }
  {
    const auto b = [](double t) { return std::exp(2.0 * t - 4.0 * std::exp(t)) * std::sin(t); };
    const auto fb = [&b](double t) { return LogQuantity::from_value(b(t)); };
    const double mid[] = {0.0};
    out.B = signed_value(integrate_signed(fb, -kPi, kPi, q, std::nullopt, mid));
  }
  {
    // θ e^{-4θ} <= e^{-3θ}.
    const auto br = sin_log_zeros(hi, 400.0);
    const Integral c = integrate_signed(k0, hi, kPosInf, q, TailBound{0.0, 3.0}, br);
    out.log_abs_C = c.value.log_abs();
    out.sign_C = c.value.sign();
  }

  const double a = (1.0 - std::exp(-kPi)) / kPi;
  out.A_bound = (1.0 - std::exp(-4.0 * lo) * (4.0 * lo + 1.0)) / 16.0;
  out.B_bound = std::exp(-4.0) * ((1.0 + std::exp(-2.0 * kPi)) / 5.0 -
                                  (1.0 + std::exp(-(2.0 - 4.0 * a) * kPi)) /
                                      ((2.0 - 4.0 * a) * (2.0 - 4.0 * a) + 1.0));
  out.log_C_bound = -4.0 * hi + std::log(4.0 * hi + 1.0) - std::log(16.0);
  out.series_tail_bound = 1.0 / 240.0;

  // Σ_{k>=1} ∫ e^{-4θ} (θ sin ln θ)^{2k+1} / (2k+1)!; the bound 4^{-(2k+2)} leaves
  // nothing representable past k = 30.
  double tail = 0.0;
  for (int k = 1; k <= 30; ++k) {
    const int m = 2 * k + 1;
    const double lg = std::lgamma(m + 1.0);
    const auto fk = [m, lg](double th) {
      const double s = std::sin(std::log(th));
      if (s == 0.0) return LogQuantity::zero();
      const int sg = (s < 0.0) ? -1 : 1;
      return LogQuantity::from_log(-4.0 * th + m * (std::log(th) + std::log(std::abs(s))) - lg, sg);
    };
    const auto br = sin_log_zeros(1e-12, 400.0);
    tail += signed_value(integrate_signed(fk, 0.0, 400.0, q, std::nullopt, br));
  }
  out.series_tail_direct = tail;

  const double C = out.sign_C * std::exp(out.log_abs_C);
  const double k0_sum = out.A + out.B + C;
  out.bound_sum = k0_sum + out.series_tail_bound;
  out.bound_sum_closed = out.A_bound + out.B_bound + std::exp(out.log_C_bound) + out.series_tail_bound;

  auto add = [&out](std::string name, bool pass, std::string detail) {
    out.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  add("|A| <= A bound", std::abs(out.A) <= out.A_bound, fmt("A = %.12g, bound %.12g", out.A, out.A_bound));
  add("B <= B bound", out.B <= out.B_bound, fmt("B = %.12g, bound %.12g", out.B, out.B_bound));
  add("|C| <= C bound", out.log_abs_C <= out.log_C_bound,
      fmt("ln|C| = %.6f, ln bound %.6f", out.log_abs_C, out.log_C_bound));
  add("|series tail| <= 1/240", std::abs(tail) <= out.series_tail_bound,
      fmt("tail = %.12g, bound %.12g", tail, out.series_tail_bound));
  const double identity = 2.0 * (k0_sum + tail);
  add("I2 - I1 == 2 (A + B + C + tail)",
      std::abs(out.gap - identity) <= 1e-8 * std::max(1.0, std::abs(out.gap)),
      fmt("I2 - I1 = %.12g, series %.12g", out.gap, identity));
  add("bound sum < 0", out.bound_sum < 0.0 && out.bound_sum_closed < 0.0,
      fmt("direct %.12g, closed-form %.12g", out.bound_sum, out.bound_sum_closed));
  add("I2 - I1 <= 2 (A + B + C + 1/240)", out.gap <= 2.0 * out.bound_sum,
      fmt("I2 - I1 = %.12g, bound %.12g", out.gap, 2.0 * out.bound_sum));
  add("I2 - I1 <= A + B + C + 1/240", out.gap <= out.bound_sum,
      fmt("I2 - I1 = %.12g, bound %.12g", out.gap, out.bound_sum));
  add("I1 > I2", out.I1 > out.I2, fmt("I1 = %.12g, I2 = %.12g", out.I1, out.I2));

  out.notes.push_back(
      "I2 - I1 = 2 * sum over k of the odd series terms; the factor 2 carries into the final bound, "
      "and the inequality without it also holds numerically");
  out.notes.push_back(fmt("closed-form C bound: ln = %.4f against -38 ln 10 = %.4f", out.log_C_bound,
                          -38.0 * std::log(10.0)));

  for (std::size_t i = 0; i < 4; ++i) {
    if (!out.checks[i].pass) throw InvariantError("bound violated: " + out.checks[i].detail);
  }
  return out;
}

SweepReport example32_capacity_oscillation(std::span<const int> k_list, const QuadratureSpec& q) {
  if (k_list.empty()) throw DomainError("k list is empty");
  std::vector<int> ks(k_list.begin(), k_list.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) throw DomainError("k must be at least 1");
  if (ks.back() > 112) throw DomainError("k too large: 1 + e^{2k pi} overflows");

  std::vector<SweepSample> even;  // p_k = 1 + e^{2kπ}
  std::vector<SweepSample> odd;   // p'_k = 1 + e^{2kπ - π}
  std::vector<SweepSample> all;
  for (int k : ks) {
    const double le = 2.0 * k * kPi;
    const double lo = le - kPi;
    // x = 1/(p - 1) taken directly from the exponent.
    const SweepSample so{1.0 + std::exp(lo), 1.0 / example32_tail_integral(std::exp(-lo), q)};
    const SweepSample se{1.0 + std::exp(le), 1.0 / example32_tail_integral(std::exp(-le), q)};
    odd.push_back(so);
    even.push_back(se);
    all.push_back(so);
    all.push_back(se);
  }

  SweepReport rep;
  if (all.size() >= 6) {
    rep = extrapolate(all);
  } else {
    rep.samples = all;
    rep.diagnostics.push_back("fewer than six samples: no a + b/p fit");
  }
  // J(x) - J(0) = O(x), so the last sample is within O(1/(p-1)) of the limit.
  const double lim_even = even.back().value;
  const double lim_odd = odd.back().value;
  rep.subsequence_limits = {{"p_k = 1 + e^{2k pi}", lim_even}, {"p'_k = 1 + e^{(2k-1) pi}", lim_odd}};
  rep.limsup_estimate = std::max(lim_even, lim_odd);
  rep.liminf_estimate = std::min(lim_even, lim_odd);
  const double scale = std::max(std::abs(lim_even), std::abs(lim_odd));
  if (rep.limsup_estimate - rep.liminf_estimate > 1e-6 * scale) {
    rep.oscillating = true;
    rep.monotone = false;
    rep.limit_estimate.reset();
  }
  if (ks.front() == 1) {
    rep.diagnostics.push_back("k = 1 is pre-asymptotic: J(x) at x = e^{-pi} is far from its limit");
  }
  rep.diagnostics.push_back(
      "values are (p-1) Cap_p^{1/(p-1)} = 1/J(1/(p-1)); p Cap_p^{1/p} has the same limit points");
  if (rep.oscillating) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "C(B(o,1)) >= %.12g > %.12g >= Lambda(M): capacity exceeds the eigenvalue limit",
                  rep.limsup_estimate, rep.liminf_estimate);
    rep.diagnostics.push_back(buf);
  }
  return rep;
}

}  // namespace asygeo
