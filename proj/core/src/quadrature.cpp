#include "asygeo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "asygeo/errors.hpp"

namespace asygeo {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  int depth = 0;
  LogQuantity kronrod;
  double log_abs = kNegInf;  // ln ∫|f| (Kronrod estimate)
  double log_err = kNegInf;
  bool noise_limited = false;
};

struct Accumulated {
  LogQuantity value;
  double log_abs = kNegInf;
  double log_err = kNegInf;
  int evaluations = 0;
};

Segment evaluate(const SignedIntegrand& f, double a, double b, int depth, int& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<LogQuantity, 15> v;
  v[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    v[j] = f(center - half * kXgk[j]);
    v[14 - j] = f(center + half * kXgk[j]);
  }
  evals += 15;

  double top = kNegInf;
  for (const auto& q : v) {
    if (std::isnan(q.log_abs())) throw DomainError("integrand returned NaN on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    if (q.sign() != 0) top = std::max(top, q.log_abs());
  }
  Segment s{a, b, depth, {}, kNegInf, kNegInf, false};
  if (top == kNegInf) return s;
  if (top == kPosInf) throw DomainError("integrand is infinite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");

  auto lin = [&](int i) { return v[i].sign() * std::exp(v[i].log_abs() - top); };
  double k = kWgk[7] * lin(7);
  double g = kWg[3] * lin(7);
  double k_abs = kWgk[7] * std::fabs(lin(7));
  for (int j = 0; j < 7; ++j) {
    const double pair = lin(j) + lin(14 - j);
    k += kWgk[j] * pair;
    k_abs += kWgk[j] * (std::fabs(lin(j)) + std::fabs(lin(14 - j)));
    if (j % 2 == 1) g += kWg[j / 2] * pair;
  }
  const double log_h = std::log(half);
  s.kronrod = LogQuantity::from_value(k);
  if (s.kronrod.sign() != 0) s.kronrod = LogQuantity::from_log(s.kronrod.log_abs() + top + log_h, s.kronrod.sign());
  s.log_abs = std::log(k_abs) + top + log_h;
  const double diff = std::fabs(k - g);
  // Floor the estimate at a few ulps of the absolute mass so that exact
  // rules do not report zero error.
  const double eps = std::numeric_limits<double>::epsilon();
  const double err = std::max(diff, 50.0 * eps * k_abs);
  s.log_err = std::log(err) + top + log_h;
  // Integrand values known only as ln f carry a relative error of about
  // eps * |ln f|; below that the Kronrod-Gauss difference is rounding noise.
  s.noise_limited = diff <= 20.0 * eps * std::max(1.0, std::fabs(top)) * k_abs;
  return s;
}

Accumulated sum(const std::vector<Segment>& segs) {
  Accumulated acc;
  std::vector<double> abs_logs;
  std::vector<double> err_logs;
  abs_logs.reserve(segs.size());
  err_logs.reserve(segs.size());
  // Positive and negative parts are summed separately to keep cancellation
  // to a single subtraction.
  std::vector<double> pos;
  std::vector<double> neg;
  for (const auto& s : segs) {
    abs_logs.push_back(s.log_abs);
    err_logs.push_back(s.log_err);
    if (s.kronrod.sign() > 0) pos.push_back(s.kronrod.log_abs());
    if (s.kronrod.sign() < 0) neg.push_back(s.kronrod.log_abs());
  }
  acc.value = LogQuantity::from_log(log_sum_exp(pos), 1) - LogQuantity::from_log(log_sum_exp(neg), 1);
  acc.log_abs = log_sum_exp(abs_logs);
  acc.log_err = log_sum_exp(err_logs);
  return acc;
}

Accumulated adaptive(const SignedIntegrand& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  int evals = 0;
  std::vector<Segment> segs;
  segs.reserve(64);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) segs.push_back(evaluate(f, cuts[i], cuts[i + 1], 0, evals));

  const double log_rel = std::log(spec.rel_tol);
  for (;;) {
    Accumulated acc = sum(segs);
    acc.evaluations = evals;
    if (acc.log_abs == kNegInf || acc.log_err <= log_rel + acc.log_abs) return acc;
    // Noise-limited segments cannot improve; judge the rest on their own.
    double log_err_rest = kNegInf;
    for (const auto& s : segs)
      if (!s.noise_limited) log_err_rest = log_add_exp(log_err_rest, s.log_err);
    if (log_err_rest <= log_rel + acc.log_abs) return acc;

    // Refine the worst segment that can still be split.
    int worst = -1;
    for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
      const auto& s = segs[i];
      if (s.depth >= spec.max_depth || s.noise_limited) continue;
      const double mid = 0.5 * (s.a + s.b);
      if (!(mid > s.a && mid < s.b)) continue;
      if (worst < 0 || s.log_err > segs[worst].log_err) worst = i;
    }
    const bool exhausted = worst < 0 || static_cast<int>(segs.size()) >= spec.max_intervals;
    if (exhausted) {
      if (acc.log_err - acc.log_abs <= std::log(spec.abs_tol_log)) return acc;
      const double best = acc.value.value();
      throw ToleranceError("quadrature tolerance not met on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                           best, std::exp(acc.log_err));
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    segs[worst] = evaluate(f, s.a, mid, s.depth + 1, evals);
    segs.push_back(evaluate(f, mid, s.b, s.depth + 1, evals));
  }
}

Integral finish(const Accumulated& acc) {
  Integral out;
  out.value = acc.value;
  out.log_error = acc.log_err;
  out.evaluations = acc.evaluations;
  return out;
}

// Power-law tails decaying no faster than t^{-1-kMarginalSlope} are treated as divergent.
constexpr double kMarginalSlope = 1e-6;

Integral improper(const SignedIntegrand& f, double a, const QuadratureSpec& spec, std::optional<TailBound> tail,
                  std::span<const double> breakpoints) {
  const double scale = std::max(1.0, std::fabs(a));
  double lo = a;
  double hi = a + scale;
  Accumulated total = adaptive(f, lo, hi, spec, breakpoints);
  LogQuantity value = total.value;
  double log_abs = total.log_abs;
  double log_err = total.log_err;
  int evals = total.evaluations;
  // Divergence is judged by growth relative to the first nonzero piece, so a
  // constant factor in the integrand cannot trigger it.
  double anchor = total.log_abs;

  double beta_prev = std::nan("");
  const double log_rel = std::log(spec.rel_tol);
  for (int j = 1;; ++j) {
    lo = hi;
    hi = a + scale * std::ldexp(1.0, j);
    const Accumulated piece = adaptive(f, lo, hi, spec, breakpoints);
    evals += piece.evaluations;
    value += piece.value;
    log_abs = log_add_exp(log_abs, piece.log_abs);
    log_err = log_add_exp(log_err, piece.log_err);
    if (anchor == kNegInf) anchor = piece.log_abs;

    if (log_abs - anchor > spec.divergence_log) {
      Integral out;
      out.value = LogQuantity::from_log(kPosInf);
      out.divergent = true;
      out.evaluations = evals;
      return out;
    }

    // Remainder beyond `hi`.
    const double f_lo = f(lo).log_abs();
    const double f_hi = f(hi).log_abs();
    evals += 2;
    double beta = std::nan("");
    double tail_log = kPosInf;
    if (tail) {
      tail_log = tail->log_c - tail->alpha * hi - std::log(tail->alpha);
    } else if (f_hi == kNegInf) {
      tail_log = kNegInf;
    } else if (lo > 0.0) {
      beta = -(f_hi - f_lo) / std::log(hi / lo);
      if (beta > 1.0) tail_log = f_hi + std::log(hi) - std::log(beta - 1.0);
    }

    if (tail_log <= log_abs + log_rel - std::log(10.0)) {
      Integral out;
      out.value = value;
      out.log_error = log_add_exp(log_err, tail_log);
      out.evaluations = evals;
      return out;
    }

    // A stable power-law tail t^{-beta} integrates in closed form.
    if (!tail && beta > 1.0 + kMarginalSlope && std::isfinite(beta_prev) &&
        std::fabs(beta - beta_prev) <= 1e-6 * (beta - 1.0)) {
      const double drift = std::max(std::fabs(beta - beta_prev) / (beta - 1.0), 1e-14);
      Integral out;
      out.value = value + LogQuantity::from_log(tail_log, 1);
      out.log_error = log_add_exp(log_err, tail_log + std::log(drift));
      out.evaluations = evals;
      if (out.log_error - out.value.log_abs() <= log_rel) return out;
    }

    // Exponential decay with a small rate also shows beta <= 1 for a while, but
    // beta then doubles with T; only a stalled slope means divergence.
    const bool stalled = !std::isfinite(beta_prev) || beta_prev <= 0.0 || beta < 1.25 * beta_prev;
    if (j >= spec.divergence_doublings && !tail && !(beta > 1.0 + kMarginalSlope) && stalled) {
      Integral out;
      out.value = LogQuantity::from_log(kPosInf);
      out.divergent = true;
      out.evaluations = evals;
      return out;
    }
    if (j >= spec.max_doublings)
      throw ToleranceError("improper integral tail did not decay within the doubling limit", value.value(),
                           std::exp(log_add_exp(log_err, tail_log)));
    beta_prev = beta;
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (max_depth < 10) throw DomainError("max_depth must be at least 10");
  if (!(abs_tol_log > 0.0)) throw DomainError("abs_tol_log must be positive");
}

double Integral::rel_error() const noexcept {
  if (divergent) return kPosInf;
  if (value.is_zero()) return log_error == kNegInf ? 0.0 : kPosInf;
  return std::exp(log_error - value.log_abs());
}

namespace {

Integral integrate_any(const SignedIntegrand& f, double a, double b, const QuadratureSpec& spec,
                       std::optional<TailBound> tail, std::span<const double> breakpoints) {
  spec.validate();
  if (!(a < b)) throw DomainError("integration requires a < b");
  if (std::isinf(a)) throw DomainError("lower limit must be finite");
  if (std::isinf(b)) return improper(f, a, spec, tail, breakpoints);
  return finish(adaptive(f, a, b, spec, breakpoints));
}

}  // namespace

Integral integrate_signed(const SignedIntegrand& f, double a, double b, const QuadratureSpec& spec,
                          std::optional<TailBound> tail, std::span<const double> breakpoints) {
  if (std::isinf(b) && !tail) throw DomainError("signed integrals over [a, inf) need a tail bound");
  return integrate_any(f, a, b, spec, tail, breakpoints);
}

Integral integrate(const LogIntegrand& f_log, double a, double b, const QuadratureSpec& spec,
                   std::optional<TailBound> tail, std::span<const double> breakpoints) {
  const SignedIntegrand wrapped = [&f_log](double t) {
    const double l = f_log(t);
    if (std::isnan(l)) return LogQuantity::from_log(l);
    return LogQuantity::from_log(l, 1);
  };
  Integral out = integrate_any(wrapped, a, b, spec, tail, breakpoints);
  if (out.value.sign() < 0) out.value = LogQuantity::zero();
  return out;
}

std::vector<double> sin_log_zeros(double a, double b, double shift) {
  std::vector<double> out;
  if (!(b > 0.0)) return out;
  const double lo = a > 0.0 ? std::log(a) : std::log(std::numeric_limits<double>::min());
  const double hi = std::isinf(b) ? 700.0 : std::log(b);
  const auto k0 = static_cast<long>(std::ceil((lo - shift) / std::numbers::pi));
  for (long k = k0;; ++k) {
    const double t = std::exp(k * std::numbers::pi + shift);
    if (std::log(t) >= hi) break;
    if (t > a && t < b) out.push_back(t);
  }
  return out;
}

}  // namespace asygeo
