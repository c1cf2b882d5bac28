#include <doctest.h>

#include <cmath>

#include "asygeo/errors.hpp"
#include "asygeo/spectrum.hpp"
#include "oracle.hpp"

using namespace asygeo;
using doctest::Approx;

namespace {

const WarpedManifold kHyp = make_model(ManifoldKind::kHyperbolic, 2);
const WarpedManifold kEuc = make_model(ManifoldKind::kEuclidean, 2);

RadialProfile linear_profile(double R, int n, double scale = 1.0) {
  RadialProfile u;
  for (int i = 0; i <= n; ++i) {
    const double t = R * i / n;
    u.nodes.push_back(t);
    u.values.push_back(scale * (1.0 - t / R));
  }
  return u;
}

}  // namespace

TEST_CASE("Rayleigh quotient of a linear test function") {
  // ∫ t² / ∫ t² (1 - t)² = (1/3) / (1/30) = 10 >= π².
  const double q = rayleigh_quotient(kEuc, 2.0, linear_profile(1.0, 50));
  CHECK(q == Approx(10.0).epsilon(1e-10));
  CHECK(q >= oracle::kPi * oracle::kPi);
}

TEST_CASE("Rayleigh quotient is homogeneous of degree zero") {
  for (double p : {1.5, 2.0, 7.0}) {
    const double a = log_rayleigh_quotient(kHyp, p, linear_profile(3.0, 40));
    const double b = log_rayleigh_quotient(kHyp, p, linear_profile(3.0, 40, 2.0));
    CHECK(a == Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("profiles must vanish at R") {
  RadialProfile u = linear_profile(1.0, 10);
  u.values.back() = 0.1;
  CHECK_THROWS_AS(u.validate(), DomainError);
  CHECK_THROWS_AS(rayleigh_quotient(kEuc, 2.0, u), DomainError);
  const RadialProfile init = RadialProfile::initial(2.0, 8);
  CHECK(init.values.front() == 1.0);
  CHECK(init.values.back() == 0.0);
  CHECK(init.values[4] == Approx(0.75));
}

TEST_CASE("unit ball in R^3 at p = 2 gives pi^2") {
  SolverConfig cfg;
  cfg.nodes = 400;
  const EigenResult r = lambda_1p_ball(kEuc, 1.0, 2.0, cfg);
  const double pi2 = oracle::kPi * oracle::kPi;
  CHECK(r.lambda() == Approx(pi2).epsilon(0.01));
  CHECK(r.lambda() >= pi2);
  CHECK(std::abs(r.log_lambda - std::log(pi2)) <= r.error_bound);
}

TEST_CASE("euclidean ball eigenvalues scale like R^-p") {
  const double l1 = lambda_1p_ball(kEuc, 1.0, 3.0).log_lambda;
  const double l5 = lambda_1p_ball(kEuc, 5.0, 3.0).log_lambda;
  CHECK(l5 == Approx(l1 - 3.0 * std::log(5.0)).epsilon(1e-4));
  CHECK(lambda_1p_ball(kEuc, 1000.0, 2.0).lambda() <= 1e-3);
}

TEST_CASE("hyperbolic ball R = 20 against exact and shooting oracles") {
  const EigenResult two = lambda_1p_ball(kHyp, 20.0, 2.0);
  CHECK(two.lambda() == Approx(oracle::hyperbolic_ball_lambda2(20.0)).epsilon(1e-3));
  CHECK(two.lambda() == Approx(1.0).epsilon(0.05));
  const EigenResult three = lambda_1p_ball(kHyp, 20.0, 3.0);
  CHECK(three.lambda() == Approx(oracle::kHyperbolicBall20Lambda3).epsilon(1e-3));
  CHECK(three.lambda() >= oracle::kHyperbolicBall20Lambda3);
}

TEST_CASE("ball eigenvalues decrease with the radius") {
  const double a = lambda_1p_ball(kHyp, 5.0, 2.0).log_lambda;
  const double b = lambda_1p_ball(kHyp, 10.0, 2.0).log_lambda;
  const double c = lambda_1p_ball(kHyp, 20.0, 2.0).log_lambda;
  CHECK(a >= b);
  CHECK(b >= c);
}

TEST_CASE("whole-manifold eigenvalues") {
  const EigenResult h = lambda_1p_manifold(kHyp, 2.0);
  CHECK(h.lambda() == Approx(1.0).epsilon(0.05));
  CHECK(h.lambda() >= 1.0);
  const EigenResult h3 = lambda_1p_manifold(kHyp, 3.0);
  CHECK(h3.lambda() == Approx(8.0 / 27.0).epsilon(0.03));
}

TEST_CASE("Maz'ya function") {
  // Cap_2(B_r) = 4π / (coth r - 1) and V(r) = π (sinh 2r - 2r) on H^3.
  for (double r : {0.5, 2.0, 8.0}) {
    const double ref = 4.0 * oracle::kPi / (1.0 / std::tanh(r) - 1.0) / oracle::hyperbolic_volume(r);
    CHECK(mazya_f(kHyp, r, 2.0).value() == Approx(ref).epsilon(1e-9));
  }
  CHECK(mazya_f(kHyp, 30.0, 2.0).value() == Approx(4.0).epsilon(1e-6));
  const double f20 = log_mazya_f(kHyp, 20.0, 2.0);
  const double f25 = log_mazya_f(kHyp, 25.0, 2.0);
  const double f30 = log_mazya_f(kHyp, 30.0, 2.0);
  CHECK(f20 >= f25);
  CHECK(f25 >= f30);
  for (double r : {0.5, 1.0, 3.0}) CHECK(mazya_f(kEuc, r, 2.0).value() == Approx(3.0 / (r * r)).epsilon(1e-9));
  CHECK(log_mazya_f(kEuc, 1.0, 3.0) == -INFINITY);
}

TEST_CASE("Maz'ya constant") {
  const MazyaResult h2 = mazya_mp(kHyp, 2.0);
  CHECK(std::exp(h2.log_mp) >= 1.0 - 1e-9);
  CHECK(std::exp(h2.log_mp) <= 4.0 + 1e-9);
  CHECK(std::exp(h2.log_mp) == Approx(4.0).epsilon(1e-3));
  for (double p : {5.0, 20.0}) {
    const double ref = p * std::log(2.0) - (p - 1.0) * std::log(p - 1.0);
    CHECK(mazya_mp(kHyp, p).log_mp == Approx(ref).epsilon(1e-3));
  }
  const MazyaResult e = mazya_mp(kEuc, 2.0);
  CHECK(e.log_mp == -INFINITY);
  CHECK(e.attained_at_infinity);
  CHECK(e.scaled() == 0.0);
}

TEST_CASE("sandwich between m_p and lambda") {
  for (double p : {2.0, 5.0}) {
    const SandwichResult h = sandwich_check(kHyp, p);
    CHECK(h.lower_ok);
    CHECK(h.upper_ok);
    const SandwichResult e = sandwich_check(kEuc, p);
    CHECK(e.lower_ok);
    CHECK(e.upper_ok);
  }
}

TEST_CASE("sandwich constant's p-th root tends to 1") {
  // ((p-1)^{p-1} / p^p)^{1/p} squeezes p λ^{1/p} against p m_p^{1/p}.
  auto root = [](double p) { return std::exp(((p - 1.0) * std::log(p - 1.0) - p * std::log(p)) / p); };
  CHECK(root(100.0) > 0.94);
  CHECK(root(1000.0) > 0.99);
  CHECK(root(1000.0) > root(100.0));
  const double p = 100.0;
  const EigenResult l = lambda_1p_manifold(kHyp, p);
  const MazyaResult m = mazya_mp(kHyp, p);
  const double ratio = std::min(l.scaled(), m.scaled()) / m.scaled();
  CHECK(ratio <= 1.0 + 1e-3);
  CHECK(ratio >= root(p) - 1e-3);
}

TEST_CASE("short eigenvalue sweep on hyperbolic space is nondecreasing") {
  const SweepReport s = infinity_eigenvalue_sweep(kHyp, PGrid({2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0}));
  for (std::size_t i = 1; i < s.samples.size(); ++i)
    CHECK(s.samples[i].value >= s.samples[i - 1].value - s.samples[i].error - s.samples[i - 1].error);
  for (const auto& d : s.diagnostics) CHECK(d.find("inconsistency") == std::string::npos);
  CHECK(s.samples.back().value == Approx(2.0).epsilon(0.01));
  CHECK_THROWS_AS(infinity_eigenvalue_sweep(kHyp, PGrid({2.0, 4.0, 8.0})), DomainError);
}

TEST_CASE("Maz'ya sweep on hyperbolic space tends to 2") {
  const SweepReport s = mazya_sweep(kHyp, PGrid::parse("geom:10:1e4:12"));
  REQUIRE(s.limit_estimate);
  CHECK(*s.limit_estimate == Approx(2.0).epsilon(0.02));
}

TEST_CASE("eigen inputs are validated") {
  CHECK_THROWS_AS(lambda_1p_ball(kHyp, -1.0, 2.0), DomainError);
  CHECK_THROWS_AS(lambda_1p_ball(kHyp, 1.0, 1.0), DomainError);
}
