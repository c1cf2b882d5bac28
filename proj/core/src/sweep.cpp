#include "asygeo/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "asygeo/errors.hpp"
#include "asygeo/log_quantity.hpp"

namespace asygeo {

namespace {

double parse_number(std::string_view s, std::size_t offset) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1), ++offset;
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("malformed number '" + std::string(s) + "' in p-grid", offset);
  return v;
}

struct LineFit {
  double a = 0.0;
  double b = 0.0;
  double rms = 0.0;
  bool degenerate = false;
};

// Least squares y = a + b x.
LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  // 1/p spans nothing useful once p is astronomically large.
  const double span = *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());
  if (x.size() < 2 || span < 1e-9 || sxx <= 0.0) {
    f.degenerate = true;
    f.a = my;
  } else {
    f.b = sxy / sxx;
    f.a = my - f.b * mx;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.a + f.b * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

double require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must exceed 1");
  return p;
}

PGrid::PGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("p-grid must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require_exponent(values_[i]);
    if (i > 0 && !(values_[i] > values_[i - 1])) throw DomainError("p-grid must be strictly increasing");
  }
}

PGrid PGrid::geometric(double p_min, double p_max, int count) {
  require_exponent(p_min);
  if (count < 1) throw DomainError("p-grid count must be positive");
  if (count == 1) return PGrid({p_min});
  if (!(p_max > p_min)) throw DomainError("p-grid requires pmax > pmin");
  std::vector<double> v(count);
  const double ratio = std::log(p_max / p_min) / (count - 1);
  for (int i = 0; i < count; ++i) v[i] = p_min * std::exp(ratio * i);
  v.back() = p_max;
  return PGrid(std::move(v));
}

PGrid PGrid::parse(std::string_view spec) {
  if (spec.rfind("geom:", 0) == 0) {
    std::vector<std::string_view> parts;
    std::size_t start = 5;
    for (;;) {
      const auto colon = spec.find(':', start);
      parts.push_back(spec.substr(start, colon == std::string_view::npos ? spec.npos : colon - start));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) throw ParseError("expected geom:pmin:pmax:count", 0);
    const double lo = parse_number(parts[0], 5);
    const double hi = parse_number(parts[1], 5 + parts[0].size() + 1);
    const double cnt = parse_number(parts[2], 5 + parts[0].size() + parts[1].size() + 2);
    if (cnt != std::floor(cnt)) throw ParseError("p-grid count must be an integer", 0);
    return geometric(lo, hi, static_cast<int>(cnt));
  }
  std::vector<double> v;
  std::size_t start = 0;
  for (;;) {
    const auto comma = spec.find(',', start);
    v.push_back(parse_number(spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start), start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return PGrid(std::move(v));
}

double subsequence_limit(std::span<const SweepSample> samples) {
  if (samples.empty()) throw DomainError("empty subsequence");
  if (samples.size() < 3) return samples.back().value;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : samples) {
    x.push_back(1.0 / s.p);
    y.push_back(s.value);
  }
  const LineFit f = fit_line(x, y);
  return f.degenerate ? samples.back().value : f.a;
}

SweepReport summarize_sweep(std::span<const SweepSample> samples) {
  const bool all_zero =
      !samples.empty() && std::all_of(samples.begin(), samples.end(), [](const SweepSample& s) { return s.value == 0.0; });
  if (!all_zero) return extrapolate(samples);
  SweepReport rep;
  rep.samples.assign(samples.begin(), samples.end());
  rep.limit_estimate = 0.0;
  rep.monotone = true;
  rep.diagnostics.push_back("quantity vanishes on the whole grid");
  return rep;
}

SweepReport extrapolate(std::span<const SweepSample> samples) {
  if (samples.size() < 6) throw DomainError("extrapolation needs at least 6 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].p > samples[i - 1].p)) throw DomainError("sweep samples must have increasing p");

  SweepReport rep;
  rep.samples.assign(samples.begin(), samples.end());

  const std::size_t n = samples.size();
  const std::size_t tail_n = std::max<std::size_t>(3, n / 2);
  const auto tail = samples.subspan(n - tail_n);
  std::vector<double> x;
  std::vector<double> y;
  double scale = 0.0;
  for (const auto& s : tail) {
    x.push_back(1.0 / s.p);
    y.push_back(s.value);
    scale = std::max(scale, std::fabs(s.value));
  }
  const LineFit fit = fit_line(x, y);
  rep.fit_a = fit.a;
  rep.fit_b = fit.b;
  rep.fit_residual = fit.rms;

  const double tol = 1e-9 * scale + 1e-300;
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    const double d = tail[i].value - tail[i - 1].value;
    if (d < -tol) up = false;
    if (d > tol) down = false;
  }
  rep.monotone = up || down;

  const std::size_t quarter = std::max<std::size_t>(2, n / 4);
  double q_hi = -kPosInf;
  double q_lo = kPosInf;
  for (std::size_t i = n - quarter; i < n; ++i) {
    q_hi = std::max(q_hi, samples[i].value);
    q_lo = std::min(q_lo, samples[i].value);
  }
  const double amplitude = q_hi - q_lo;

  // A monotone tail already rules out oscillation; the amplitude test is for
  // wiggling tails only (it would reject the exact a + b/p generator).
  const bool converged = fit.rms <= 1e-3 * std::fabs(fit.a) + 1e-12 &&
                         (rep.monotone || amplitude <= 5.0 * fit.rms + 1e-12);
  rep.oscillating = !rep.monotone && !converged;

  const auto [lo_it, hi_it] =
      std::minmax_element(y.begin(), y.end());
  if (converged) {
    rep.limit_estimate = fit.a;
    rep.limsup_estimate = fit.a;
    rep.liminf_estimate = fit.a;
  } else {
    rep.limsup_estimate = *hi_it;
    rep.liminf_estimate = *lo_it;
  }
  if (rep.oscillating) {
    rep.diagnostics.push_back("oscillating tail: last-quarter amplitude " + std::to_string(amplitude) +
                              ", fit residual " + std::to_string(fit.rms));
  } else if (!converged) {
    rep.diagnostics.push_back("monotone tail without a converged a + b/p fit; limit not declared");
  }
  if (fit.degenerate) rep.diagnostics.push_back("1/p range too small for a slope fit; constant fit used");
  return rep;
}

}  // namespace asygeo
