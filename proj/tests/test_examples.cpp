#include <doctest.h>

#include <cmath>

#include "asygeo/errors.hpp"
#include "asygeo/examples.hpp"
#include "oracle.hpp"

using namespace asygeo;
using doctest::Approx;

TEST_CASE("plateau sequence") {
  const auto s = plateau_sequence(2);
  REQUIRE(s.size() == 3);
  CHECK(s.xs[0] == 1.0);
  CHECK(s.xs[1] == 2.0);
  CHECK(s.xs[2] == Approx(23.0855).epsilon(1e-5));
  const auto t = plateau_sequence(4);
  for (int k = 1; k < t.size(); ++k) CHECK(t.log_xs[k] > t.log_xs[k - 1]);
  CHECK_THROWS_AS(plateau_sequence(-1), DomainError);
}

TEST_CASE("plateau capacity bound") {
  double prev = INFINITY;
  for (int K = 2; K <= 3; ++K) {
    const double b = example31_capacity(3.0, K).log_bound;
    CHECK(b < prev);
    prev = b;
  }
  const PlateauCapacityBound b4 = example31_capacity(3.0, 4);
  CHECK(b4.log_bound < -40.0);
  CHECK(b4.truncated);
  CHECK(b4.terms_used == 3);
  // Inner sum dominated by e^{(1 + x_3)/2}.
  CHECK(b4.log_bound == Approx(-(1.0 + oracle::plateau_x(3))).epsilon(1e-12));
  const PlateauCapacityBound b2 = example31_capacity(3.0, 2);
  const double ref = -2.0 * std::log(std::exp(1.5) + std::exp((1.0 + oracle::plateau_x(2)) / 2.0));
  CHECK(b2.log_bound == Approx(ref).epsilon(1e-12));
  CHECK_FALSE(b2.truncated);
  CHECK_THROWS_AS(example31_capacity(2.0, 4), DomainError);
  CHECK_THROWS_AS(example31_capacity(3.0, 1), DomainError);
}

TEST_CASE("plateau entropy bracket") {
  const auto pts = example31_entropy(3);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].R == 4.0);
  CHECK(pts[0].lower == 0.75);
  CHECK(pts[2].lower > 0.9999);
  for (const auto& p : pts) CHECK(p.lower <= p.upper);
  CHECK(pts[2].upper - pts[2].lower < 1e-8);
}

TEST_CASE("I1 and I2") {
  const double i1 = example32_I(1);
  const double i2 = example32_I(-1);
  CHECK(i1 == Approx(oracle::kI1).epsilon(1e-12));
  CHECK(i2 == Approx(oracle::kI2).epsilon(1e-12));
  for (double v : {i1, i2}) {
    CHECK(v >= 0.2);
    CHECK(v <= 1.0 / 3.0);
  }
  CHECK(i2 - i1 < 0.0);
  CHECK_THROWS_AS(example32_I(0), DomainError);
}

TEST_CASE("I2 - I1 against a fine composite Simpson oracle") {
  const auto f = [](double s) {
    return [s](double th) { return std::exp(-th * (4.0 + s * std::sin(std::log(th)))); };
  };
  // [0, 1e-8] contributes 1e-8 to both, which cancels in the difference.
  const double d = oracle::simpson(f(-1.0), 1e-8, 30.0, 10000000) - oracle::simpson(f(1.0), 1e-8, 30.0, 10000000);
  const double got = example32_I(-1) - example32_I(1);
  CHECK(got == Approx(d).epsilon(1e-6));
}

TEST_CASE("tail integral J") {
  const double J1 = example32_tail_integral(1.0);
  CHECK(J1 >= 0.0);
  CHECK(J1 <= 1.0 / 3.0);
  double prev1 = 0.0;
  double prev2 = 0.0;
  for (int k = 2; k <= 3; ++k) {
    const double a = example32_tail_integral(std::exp(-2.0 * k * oracle::kPi));
    const double b = example32_tail_integral(std::exp(-2.0 * k * oracle::kPi + oracle::kPi));
    CHECK(a == Approx(oracle::kI1).epsilon(1e-4));
    CHECK(b == Approx(oracle::kI2).epsilon(1e-4));
    if (k > 2) {
      CHECK(std::abs(a - oracle::kI1) < std::abs(prev1 - oracle::kI1));
      CHECK(std::abs(b - oracle::kI2) < std::abs(prev2 - oracle::kI2));
    }
    prev1 = a;
    prev2 = b;
  }
  CHECK_THROWS_AS(example32_tail_integral(0.0), DomainError);
  CHECK_THROWS_AS(example32_tail_integral(2.0), DomainError);
}

TEST_CASE("bound chain") {
  const OscillationAnalysis a = example32_bound_chain();
  CHECK(a.A == Approx(oracle::kA).epsilon(1e-10));
  CHECK(a.B == Approx(oracle::kB).epsilon(1e-10));
  CHECK(a.A < 0.0009);
  CHECK(a.B < -0.008);
  CHECK(a.log_abs_C < -38.0 * std::log(10.0));
  CHECK(a.series_tail_bound == 1.0 / 240.0);
  CHECK(a.A_bound == Approx((1.0 - std::exp(-4.0 * std::exp(-oracle::kPi)) * (4.0 * std::exp(-oracle::kPi) + 1.0)) / 16.0));
  CHECK(a.B_bound < -0.008);
  CHECK(a.bound_sum < 0.0);
  CHECK(a.bound_sum_closed < 0.0);
  CHECK(a.gap < -1e-3);
  CHECK(a.separation == Approx(1.0 / oracle::kI2 - 1.0 / oracle::kI1).epsilon(1e-12));
  CHECK(a.all_pass());
  bool factor_note = false;
  for (const auto& n : a.notes) factor_note = factor_note || n.find("factor 2") != std::string::npos;
  CHECK(factor_note);
}

TEST_CASE("capacity oscillation along the two subsequences") {
  const int ks[] = {2, 3, 4};
  const SweepReport r = example32_capacity_oscillation(ks);
  REQUIRE(r.samples.size() == 6);
  CHECK(r.oscillating);
  CHECK_FALSE(r.limit_estimate);
  const double sep = 1.0 / oracle::kI2 - 1.0 / oracle::kI1;
  CHECK(r.limsup_estimate - r.liminf_estimate >= sep - 1e-3);
  CHECK(r.limsup_estimate == Approx(1.0 / oracle::kI2).epsilon(1e-6));
  CHECK(r.liminf_estimate == Approx(1.0 / oracle::kI1).epsilon(1e-6));
  REQUIRE(r.subsequence_limits.size() == 2);
  bool consequence = false;
  for (const auto& d : r.diagnostics) consequence = consequence || d.find("Lambda(M)") != std::string::npos;
  CHECK(consequence);

  const int with_one[] = {1, 2, 3};
  const SweepReport f = example32_capacity_oscillation(with_one);
  bool flagged = false;
  for (const auto& d : f.diagnostics) flagged = flagged || d.find("pre-asymptotic") != std::string::npos;
  CHECK(flagged);
  const int bad[] = {0};
  CHECK_THROWS_AS(example32_capacity_oscillation(bad), DomainError);
}
