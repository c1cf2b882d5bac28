#include "asygeo/manifold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

// boost 1.74 pchip calls unqualified isnan; make ::isnan visible first.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <json.hpp>

#include "asygeo/errors.hpp"
#include "asygeo/expression.hpp"

namespace asygeo {

namespace {

// ln sinh t without overflow.
double log_sinh(double t) {
  if (t > 20.0) return t - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * t));
  return std::log(std::sinh(t));
}

void require_dimension(int n) {
  if (n < 1) throw DomainError("sphere dimension n must be at least 1");
}

}  // namespace

std::string_view to_string(ManifoldKind kind) noexcept {
  switch (kind) {
    case ManifoldKind::kHyperbolic: return "hyperbolic";
    case ManifoldKind::kEuclidean: return "euclidean";
    case ManifoldKind::kExample31: return "example31";
    case ManifoldKind::kExample32: return "example32";
    case ManifoldKind::kCustom: return "custom";
    case ManifoldKind::kTabulated: return "tabulated";
  }
  return "unknown";
}

ManifoldKind manifold_kind_from_string(std::string_view name) {
  for (auto k : {ManifoldKind::kHyperbolic, ManifoldKind::kEuclidean, ManifoldKind::kExample31,
                 ManifoldKind::kExample32, ManifoldKind::kCustom, ManifoldKind::kTabulated}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown manifold kind '" + std::string(name) + "'");
}

double log_unit_sphere_area(int n) {
  require_dimension(n);
  const double h = 0.5 * (n + 1);
  return std::numbers::ln2 + h * std::log(std::numbers::pi) - std::lgamma(h);
}

double smooth_step(double s) noexcept {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  // psi(s) / (psi(s) + psi(1-s)) with psi(s) = e^{-1/s}, written as a logistic
  // in 1/(1-s) - 1/s to stay finite near both ends.
  const double z = 1.0 / (1.0 - s) - 1.0 / s;
  return 1.0 / (1.0 + std::exp(-z));
}

// ---------------------------------------------------------------------------
// Plateau construction

PlateauSequence PlateauSequence::generate(int count) {
  if (count < 1) throw DomainError("plateau sequence needs at least one term");
  PlateauSequence seq;
  double x = 1.0;
  double lx = 0.0;
  bool exact = true;
  for (int k = 0; k < count; ++k) {
    if (k == 1) {
      x = 2.0;
      lx = std::numbers::ln2;
    } else if (k > 1) {
      const double prev = seq.xs.back();
      if (exact && prev + 1.0 < 709.0) {
        x = prev + 1.0 + std::exp(prev + 1.0);
        lx = std::log(x);
      } else if (exact) {
        // e^{x+1} overflows: keep the dominant term in log form.
        lx = (prev + 1.0) + std::log1p((prev + 1.0) * std::exp(-(prev + 1.0)));
        x = kPosInf;
        exact = false;
      } else {
        lx = std::isfinite(seq.log_xs.back()) ? std::exp(seq.log_xs.back()) : kPosInf;
        x = kPosInf;
      }
    }
    seq.xs.push_back(x);
    seq.log_xs.push_back(lx);
    seq.exact.push_back(exact);
  }
  return seq;
}

PlateauProfile::PlateauProfile(int n) : n_(n), seq_(PlateauSequence::generate(kLastRepresentable + 2)) {
  require_dimension(n);
}

double PlateauProfile::log_area(double t) const {
  if (!(t > 0.0)) throw DomainError("log_area requires t > 0 on a profile with a pole");
  if (t <= 1.0) return 1.0 + n_ * std::log(t);
  const auto& x = seq_.xs;
  for (int k = 0; k <= kLastRepresentable; ++k) {
    const double v0 = k == 0 ? 1.0 : x[k - 1] + 1.0;
    const double v1 = x[k] + 1.0;
    if (t <= x[k] + 1.0) return v0 + (v1 - v0) * smooth_step(t - x[k]);
    if (t <= x[k + 1]) return v1;
  }
  // Unreachable in double precision: x_4 is not representable.
  return x[kLastRepresentable] + 1.0;
}

Integral PlateauProfile::log_area_power_integral(double a, double b, double w, const QuadratureSpec& q) const {
  if (!(a >= 0.0) || !(a < b)) throw DomainError("plateau integral requires 0 <= a < b");
  const auto& x = seq_.xs;
  LogQuantity total;
  double log_err = kNegInf;
  int evals = 0;
  auto divergent = [&] {
    Integral out;
    out.value = LogQuantity::from_log(kPosInf);
    out.divergent = true;
    out.evaluations = evals;
    return out;
  };
  auto add = [&](const Integral& piece) {
    total += piece.value;
    log_err = log_add_exp(log_err, piece.log_error);
    evals += piece.evaluations;
  };

  // Cone part on (0, 1].
  if (a < 1.0) {
    const double hi = std::min(b, 1.0);
    const auto f = [this, w](double t) { return w * (1.0 + n_ * std::log(t)); };
    add(integrate(f, a, hi, q));
  }
  for (int k = 0; k <= kLastRepresentable; ++k) {
    const double v0 = k == 0 ? 1.0 : x[k - 1] + 1.0;
    const double v1 = x[k] + 1.0;
    // Transition [x_k, x_k + 1], integrated in the local coordinate.
    const double t0 = std::max(a, x[k]);
    const double t1 = std::min(b, x[k] + 1.0);
    if (t0 < t1) {
      const double base = x[k];
      const auto f = [w, v0, v1](double s) { return w * (v0 + (v1 - v0) * smooth_step(s)); };
      add(integrate(f, t0 - base, t1 - base, q));
    }
    // Plateau [x_k + 1, x_{k+1}] at height v1.
    const double p0 = std::max(a, x[k] + 1.0);
    const double p1 = std::min(b, x[k + 1]);
    if (p0 < p1) {
      double log_len = 0.0;
      if (std::isinf(p1)) {
        log_len = seq_.log_xs[k + 1];  // length ≈ x_{k+1}
      } else {
        log_len = std::log(p1 - p0);
      }
      Integral piece;
      piece.value = LogQuantity::from_log(log_len + w * v1, 1);
      piece.log_error = piece.value.log_abs() + std::log(std::numeric_limits<double>::epsilon());
      add(piece);
      if (std::isinf(b) && total.log_abs() > q.divergence_log) return divergent();
    }
  }
  if (std::isinf(b)) {
    // Later plateaus have length e^{x_k+1} at height x_k+1: each contributes
    // e^{(x_k+1)(1+w)}, so the tail diverges iff w >= -1 and vanishes in
    // double precision otherwise.
    if (w >= -1.0) return divergent();
  }
  Integral out;
  out.value = total;
  out.log_error = log_err;
  out.evaluations = evals;
  return out;
}

// ---------------------------------------------------------------------------

WarpedManifold::WarpedManifold(ManifoldKind kind, int n, LogAreaFn log_area, bool has_pole, std::string label)
    : kind_(kind), n_(n), log_area_(std::move(log_area)), has_pole_(has_pole), label_(std::move(label)) {
  require_dimension(n);
}

double WarpedManifold::log_area(double t) const {
  if (t < 0.0 || std::isnan(t)) throw DomainError("log_area requires t >= 0");
  if (t == 0.0 && has_pole_) throw DomainError("log_area requires t > 0 on a profile with a pole");
  if (scale_ == 1.0) return log_area_(t);
  return n_ * std::log(scale_) + log_area_(t / scale_);
}

double WarpedManifold::log_phi(double t) const { return (log_area(t) - log_unit_sphere_area(n_)) / n_; }

Integral WarpedManifold::log_area_power_integral(double a, double b, double w, const QuadratureSpec& q) const {
  if (!(a >= 0.0) || !(a < b)) throw DomainError("integration range must satisfy 0 <= a < b");
  const double ls = std::log(scale_);
  const double a0 = a / scale_;
  const double b0 = b / scale_;
  Integral out;
  if (plateaus_) {
    out = plateaus_->log_area_power_integral(a0, b0, w, q);
  } else {
    const auto f = [this, w](double t) { return w * log_area_(t); };
    const auto cuts = breakpoints(a0, b0);
    out = integrate(f, a0, b0, q, std::nullopt, cuts);
  }
  if (!out.divergent && scale_ != 1.0) {
    const double shift = (n_ * w + 1.0) * ls;
    out.value *= LogQuantity::from_log(shift, 1);
    out.log_error += shift;
  }
  return out;
}

double WarpedManifold::log_volume(double r, const QuadratureSpec& q) const {
  if (!(r > 0.0)) throw DomainError("log_volume requires r > 0");
  return log_area_power_integral(0.0, r, 1.0, q).log();
}

WarpedManifold WarpedManifold::rescaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("metric scale factor must be positive");
  WarpedManifold m = *this;
  m.scale_ = scale_ * lambda;
  return m;
}

std::vector<double> WarpedManifold::breakpoints(double a, double b) const {
  if (kind_ != ManifoldKind::kExample32) return {};
  std::vector<double> cuts = sin_log_zeros(std::max(a, 1.0), b);
  if (a < 1.0 && b > 1.0) cuts.insert(cuts.begin(), 1.0);
  return cuts;
}

// ---------------------------------------------------------------------------
// Factories

WarpedManifold make_example31(int n) {
  auto profile = std::make_shared<const PlateauProfile>(n);
  WarpedManifold m(ManifoldKind::kExample31, n, [profile](double t) { return profile->log_area(t); }, true,
                   "example31:" + std::to_string(n));
  m.plateaus_ = std::move(profile);
  return m;
}

WarpedManifold make_model(ManifoldKind kind, int n) {
  require_dimension(n);
  const double log_omega = log_unit_sphere_area(n);
  const std::string label = std::string(to_string(kind)) + ":" + std::to_string(n);
  switch (kind) {
    case ManifoldKind::kHyperbolic:
      return {kind, n, [=](double t) { return log_omega + n * log_sinh(t); }, true, label};
    case ManifoldKind::kEuclidean:
      return {kind, n, [=](double t) { return log_omega + n * std::log(t); }, true, label};
    case ManifoldKind::kExample31:
      return make_example31(n);
    case ManifoldKind::kExample32:
      // ln S held at its t = 1 value on [0, 1]; nothing computed reads t < 1.
      return {kind, n, [](double t) { return t >= 1.0 ? t * (4.0 + std::sin(std::log(t))) : 4.0; }, false, label};
    case ManifoldKind::kCustom:
    case ManifoldKind::kTabulated:
      break;
  }
  throw DomainError("make_model needs a built-in kind; use make_custom or make_tabulated");
}

WarpedManifold make_custom(int n, std::string_view phi_expression) {
  require_dimension(n);
  const Expression phi = Expression::parse(phi_expression);
  const double phi0 = phi(0.0);
  const bool pole = std::fabs(phi0) < 1e-300;
  if (!pole && !(phi0 > 0.0)) throw DomainError("phi(0) must be zero or positive");
  for (int i = 1; i <= 200; ++i) {
    const double t = 0.25 * i;
    const double v = phi(t);
    if (!(v > 0.0)) throw DomainError("phi must be positive for t > 0; phi(" + std::to_string(t) + ") = " + std::to_string(v));
  }
  const double log_omega = log_unit_sphere_area(n);
  return {ManifoldKind::kCustom, n, [=](double t) { return log_omega + n * std::log(phi(t)); }, pole,
          "custom:" + std::string(phi_expression)};
}

WarpedManifold make_tabulated(int n, std::vector<std::pair<double, double>> points) {
  require_dimension(n);
  if (points.size() < 4) throw DomainError("tabulated profile needs at least four points");
  std::vector<double> ts;
  std::vector<double> phis;
  for (const auto& [t, v] : points) {
    if (!ts.empty() && !(t > ts.back())) throw DomainError("tabulated t values must be strictly increasing");
    if (t < 0.0) throw DomainError("tabulated t values must be nonnegative");
    ts.push_back(t);
    phis.push_back(v);
  }
  const bool pole = ts.front() == 0.0 && phis.front() == 0.0;
  for (std::size_t i = pole ? 1 : 0; i < phis.size(); ++i)
    if (!(phis[i] > 0.0)) throw DomainError("tabulated phi values must be positive away from the pole");

  const std::size_t last = ts.size() - 1;
  const double t_lo = ts.front();
  const double t_hi = ts[last];
  const double l_hi = std::log(phis[last]);
  const double slope_hi = (l_hi - std::log(phis[last - 1])) / (t_hi - ts[last - 1]);
  const double l_lo = pole ? 0.0 : std::log(phis[0]);
  const double slope_lo = pole ? 0.0 : (std::log(phis[1]) - l_lo) / (ts[1] - t_lo);
  const boost::math::interpolators::pchip<std::vector<double>> spline(std::move(ts), std::move(phis));

  const double log_omega = log_unit_sphere_area(n);
  auto log_phi = [=](double t) {
    if (t >= t_hi) return l_hi + slope_hi * (t - t_hi);
    if (t < t_lo) {
      if (pole) throw DomainError("tabulated profile evaluated before its pole");
      return l_lo + slope_lo * (t - t_lo);
    }
    return std::log(spline(t));
  };
  return {ManifoldKind::kTabulated, n, [=](double t) { return log_omega + n * log_phi(t); }, pole, "tabulated"};
}

WarpedManifold manifold_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid manifold JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("n"))
    throw ParseError("manifold JSON needs \"kind\" and \"n\"", 0);
  const ManifoldKind kind = manifold_kind_from_string(doc.at("kind").get<std::string>());
  const int n = doc.at("n").get<int>();
  WarpedManifold m = [&] {
    switch (kind) {
      case ManifoldKind::kCustom:
        if (!doc.contains("phi")) throw ParseError("custom manifold needs \"phi\"", 0);
        return make_custom(n, doc.at("phi").get<std::string>());
      case ManifoldKind::kTabulated: {
        if (!doc.contains("points")) throw ParseError("tabulated manifold needs \"points\"", 0);
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : doc.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        return make_tabulated(n, std::move(pts));
      }
      default:
        return make_model(kind, n);
    }
  }();
  if (doc.contains("scale")) m = m.rescaled(doc.at("scale").get<double>());
  return m;
}

WarpedManifold load_manifold(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view name = spec.substr(0, colon);
    const std::string_view rest = spec.substr(colon + 1);
    bool builtin = false;
    for (auto k : {ManifoldKind::kHyperbolic, ManifoldKind::kEuclidean, ManifoldKind::kExample31,
                   ManifoldKind::kExample32})
      builtin = builtin || to_string(k) == name;
    if (builtin) {
      int n = 0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
      if (ec != std::errc{} || ptr != rest.data() + rest.size())
        throw ParseError("expected integer dimension after '" + std::string(name) + ":'", colon + 1);
      return make_model(manifold_kind_from_string(name), n);
    }
  }
  std::ifstream in{std::string(spec)};
  if (!in) throw DomainError("cannot open manifold file '" + std::string(spec) + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return manifold_from_json(buf.str());
}

std::vector<AreaVolumePair> area_volume_table(const WarpedManifold& m, std::span<const double> ts,
                                              const QuadratureSpec& q) {
  std::vector<AreaVolumePair> out;
  out.reserve(ts.size());
  double prev = 0.0;
  double log_v = kNegInf;
  for (double t : ts) {
    if (!(t > prev)) throw DomainError("area_volume_table grid must be positive and increasing");
    log_v = log_add_exp(log_v, m.log_area_power_integral(prev, t, 1.0, q).log());
    out.push_back({t, m.log_area(t), log_v});
    prev = t;
  }
  return out;
}

}  // namespace asygeo
