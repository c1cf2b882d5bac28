#include <doctest.h>

#include <cmath>

#include "asygeo/capacity.hpp"
#include "asygeo/errors.hpp"
#include "oracle.hpp"

using namespace asygeo;
using doctest::Approx;

namespace {

const WarpedManifold kHyp = make_model(ManifoldKind::kHyperbolic, 2);
const WarpedManifold kEuc = make_model(ManifoldKind::kEuclidean, 2);

// ∫_r^T (4π sinh² t)^{1/(1-p)} dt by Simpson; T chosen so the remainder is negligible.
double hyperbolic_cap_oracle(double r, double p, double T, long n) {
  const double e = 1.0 / (1.0 - p);
  const double I = oracle::simpson(
      [e](double t) { return std::pow(4.0 * oracle::kPi * std::sinh(t) * std::sinh(t), e); }, r, T, n);
  return (1.0 - p) * std::log(I);
}

}  // namespace

TEST_CASE("euclidean ball capacities") {
  const CapacityResult c2 = log_cap_ball(kEuc, 1.0, 2.0);
  CHECK(std::exp(c2.log_cap) == Approx(4.0 * oracle::kPi).epsilon(1e-10));
  CHECK_FALSE(c2.parabolic);
  for (double p : {3.0, 4.0, 10.0}) {
    const CapacityResult c = log_cap_ball(kEuc, 1.0, p);
    CHECK(c.parabolic);
    CHECK(c.log_cap == -INFINITY);
    CHECK(c.scaled() == 0.0);
  }
  // Cap_p(B_1) = 4π ((3-p)/(p-1))^{p-1} for p < 3.
  const double p = 2.5;
  const double ref = std::log(4.0 * oracle::kPi) + (p - 1.0) * std::log((3.0 - p) / (p - 1.0));
  CHECK(log_cap_ball(kEuc, 1.0, p).log_cap == Approx(ref).epsilon(1e-10));
}

TEST_CASE("hyperbolic ball capacity against closed form and Simpson") {
  // p = 2: ∫_1^∞ (4π sinh² t)^{-1} dt = (coth 1 - 1) / (4π).
  const double ref2 = std::log(4.0 * oracle::kPi / (1.0 / std::tanh(1.0) - 1.0));
  CHECK(log_cap_ball(kHyp, 1.0, 2.0).log_cap == Approx(ref2).epsilon(1e-11));
  CHECK(log_cap_ball(kHyp, 1.0, 2.5).log_cap == Approx(hyperbolic_cap_oracle(1.0, 2.5, 60.0, 200000)).epsilon(1e-9));
  CHECK(log_cap_ball(kHyp, 1.0, 10.0).log_cap == Approx(hyperbolic_cap_oracle(1.0, 10.0, 450.0, 2000000)).epsilon(1e-9));
}

TEST_CASE("capacity grows with the ball") {
  for (double p : {2.0, 5.0, 50.0}) {
    double prev = -INFINITY;
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const double c = log_cap_ball(kHyp, r, p).log_cap;
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("capacitary potential") {
  CHECK(capacitary_potential(kHyp, 1.0, 3.0, 1.0) == Approx(1.0));
  CHECK(capacitary_potential(kEuc, 1.0, 2.0, 2.0) == Approx(0.5).epsilon(1e-10));
  CHECK(capacitary_potential(kHyp, 1.0, 2.0, 20.0) < 1e-8);
  double prev = 1.0;
  for (double x = 1.5; x < 10.0; x += 0.5) {
    const double u = capacitary_potential(kHyp, 1.0, 4.0, x);
    CHECK(u <= prev);
    prev = u;
  }
  CHECK_THROWS_AS(capacitary_potential(kEuc, 1.0, 3.0, 2.0), ParabolicError);
  CHECK_THROWS_AS(capacitary_potential(kHyp, 1.0, 3.0, 0.5), DomainError);
}

TEST_CASE("condenser capacities") {
  CHECK(std::exp(log_cap_condenser(kEuc, 1.0, 2.0, 2.0).log_cap) == Approx(8.0 * oracle::kPi).epsilon(1e-10));
  for (double p : {2.0, 5.0, 50.0, 500.0}) {
    CHECK(log_cap_condenser(kHyp, 1.0, 3.0, p).log_cap <= log_cap_condenser(kHyp, 1.0, 2.0, p).log_cap);
  }
  for (const auto* m : {&kHyp, &kEuc}) {
    const double root = std::exp(log_cap_condenser(*m, 1.0, 2.0, 1000.0).log_cap / 1000.0);
    CHECK(root == Approx(1.0).epsilon(0.01));
  }
  CHECK_THROWS_AS(log_cap_condenser(kHyp, 2.0, 1.0, 2.0), DomainError);
}

TEST_CASE("isoperimetric lower bound") {
  const double v1 = std::exp(kHyp.log_volume(1.0));
  CHECK(isoperimetric_lower_bound(kHyp, v1, 2.0).log_abs() ==
        Approx(log_cap_ball(kHyp, 1.0, 2.0).log_cap).epsilon(1e-8));
  CHECK(isoperimetric_lower_bound(kEuc, 4.0 * oracle::kPi / 3.0, 2.0).log_abs() ==
        Approx(std::log(4.0 * oracle::kPi)).epsilon(1e-8));
  double prev = -INFINITY;
  for (double vol : {0.5, 2.0, 8.0, 40.0}) {
    const double b = isoperimetric_lower_bound(kHyp, vol, 3.0).log_abs();
    CHECK(b >= prev);
    prev = b;
  }
  CHECK(inverse_volume(kHyp, v1) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("capacity bracket orders its ends") {
  const CapacityBracket b = capacity_bracket(kHyp, 1.0, 2.0, 3.0);
  CHECK(b.lower.log_cap <= b.upper.log_cap);
  CHECK_THROWS_AS(capacity_bracket(kHyp, 2.0, 1.0, 3.0), DomainError);
}

TEST_CASE("infinity capacity sweeps") {
  const SweepReport h = infinity_capacity_sweep(kHyp, 1.0, PGrid::parse("geom:10:1e4:12"));
  REQUIRE(h.samples.size() == 12);
  // p Cap_p^{1/p} approaches 2 from above.
  for (std::size_t i = 1; i < h.samples.size(); ++i) CHECK(h.samples[i].value < h.samples[i - 1].value);
  CHECK(h.samples.back().value == Approx(2.0).epsilon(0.002));
  for (const auto& s : h.samples) CHECK(s.value > 2.0);
  REQUIRE(h.limit_estimate);
  CHECK(*h.limit_estimate == Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(infinity_capacity_sweep(kHyp, 1.0, PGrid({10.0, 100.0, 1000.0})), DomainError);

  const SweepReport e = infinity_capacity_sweep(kEuc, 1.0, PGrid::parse("geom:3:1e3:8"));
  REQUIRE(e.limit_estimate);
  CHECK(*e.limit_estimate == 0.0);
  for (const auto& s : e.samples) CHECK(s.value == 0.0);

  const SweepReport x = infinity_capacity_sweep(make_example31(2), 1.0, PGrid::parse("geom:10:1e4:12"));
  REQUIRE(x.limit_estimate);
  CHECK(*x.limit_estimate == 0.0);
}

TEST_CASE("ball independence") {
  const BallIndependence b = ball_independence_check(kHyp, 1.0, 2.0, 1000.0);
  CHECK(b.ratio == Approx(1.0).epsilon(0.01));
  CHECK_FALSE(b.flagged);
  CHECK(ball_independence_check(kHyp, 1.5, 1.5, 100.0).ratio == 1.0);
  const BallIndependence e = ball_independence_check(kEuc, 1.0, 2.0, 2.5);
  CHECK(std::isfinite(e.ratio));
  CHECK(e.flagged);
  CHECK_THROWS_AS(ball_independence_check(kEuc, 1.0, 2.0, 4.0), ParabolicError);
}
