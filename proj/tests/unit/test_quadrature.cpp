#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "toeplitz_bounds/errors.hpp"
#include "toeplitz_bounds/quadrature.hpp"

using namespace tb;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle for the inner Lambda integral: composite midpoint rule
// on a fine uniform grid over [0, pi] (the integrand is even in theta).
double midpoint_lambda(const AnalyticFunction& f, Complex eta, int points) {
  const double h = kPi / points;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = (i + 0.5) * h;
    const Complex zeta = std::polar(1.0, t);
    sum += std::abs(f(zeta * eta) - f(std::conj(zeta) * eta)) / (2.0 * std::sin(t / 2.0));
  }
  return sum * h / kPi;
}

}  // namespace

TEST_CASE("spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.base_panels = 96;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  s.base_panels = 32;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  s = QuadratureSpec{};
  s.abs_tol = 1e-13;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  CHECK(lambda_quadrature_spec().abs_tol == 1e-8);
}

TEST_CASE("smooth integrals on an interval") {
  const QuadratureSpec spec;
  auto r = integrate_interval([](double t) { return Complex(std::sin(t), 0.0); }, 0.0, kPi, spec);
  CHECK(std::abs(r.value - 2.0) < 1e-13);
  CHECK(r.error <= spec.abs_tol);
  r = integrate_interval([](double t) { return std::exp(Complex(0.0, t)); }, 0.0, kPi / 2, spec);
  CHECK(std::abs(r.value - Complex(1.0, 1.0)) < 1e-13);
}

TEST_CASE("kinks and endpoint singularities are resolved") {
  const QuadratureSpec spec;
  auto r = integrate_interval([](double t) { return Complex(std::sqrt(std::abs(t)), 0.0); }, -1.0,
                              1.0, spec);
  CHECK(std::abs(r.value - 4.0 / 3.0) < 1e-9);
  const AngularFeature kink{0.0, 1e-6};
  r = integrate_interval([](double t) { return Complex(std::abs(t), 0.0); }, -1.0, 1.0, spec,
                         std::span(&kink, 1));
  CHECK(std::abs(r.value - 1.0) < 1e-12);
}

TEST_CASE("circle integrals use normalized measure") {
  const QuadratureSpec spec;
  auto r = integrate_circle([](CirclePoint z) { return Complex(1.0, 0.0) + 0.0 * z.value(); },
                            spec);
  CHECK(std::abs(r.value - 1.0) < 1e-14);
  for (int k = 1; k <= 4; ++k) {
    r = integrate_circle([k](CirclePoint z) { return std::pow(z.value(), k); }, spec);
    CHECK(std::abs(r.value) < 1e-13);
  }
  // Poisson kernel of a point near the circle integrates to one
  const Complex a = std::polar(0.999, 0.4);
  const std::vector<Complex> points{a};
  const auto features = features_from_points(points);
  r = integrate_circle(
      [a](CirclePoint z) {
        return Complex((1.0 - std::norm(a)) / std::norm(z.value() - a), 0.0);
      },
      spec, features);
  CHECK(std::abs(r.value - 1.0) < 1e-9);
}

TEST_CASE("exhausted budgets raise ToleranceNotMet with the best value") {
  QuadratureSpec spec;
  spec.max_evaluations = 2000;
  spec.abs_tol = 1e-12;
  const Complex a = std::polar(1.0 - 1e-9, 0.3);
  try {
    integrate_circle([a](CirclePoint z) { return 1.0 / (z.value() - a); }, spec);
    FAIL("expected ToleranceNotMet");
  } catch (const ToleranceNotMet& e) {
    CHECK(e.numeric());
    CHECK(std::isfinite(e.best().value.real()));
    CHECK(e.best().error > spec.abs_tol);
    CHECK(e.best().evaluations > 0);
  }
}

TEST_CASE("Lambda of the identity is 4/pi") {
  const BlaschkeProduct z{Complex(0.0, 0.0)};
  const LambdaResult r = lambda_functional(z);
  CHECK(std::abs(r.value - 4.0 / kPi) < 1e-10);
  const LambdaEstimate inner = lambda_at_rotation(disk_function(z), CirclePoint::from_angle(1.0));
  CHECK(std::abs(inner.value - 4.0 / kPi) < 1e-10);
}

TEST_CASE("inner Lambda integral matches an independent midpoint oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const BlaschkeProduct b(testing::random_zeros(rng, testing::random_int(rng, 1, 5), 0.9));
    const CirclePoint eta = CirclePoint::from_angle(2.0 * kPi * testing::uniform01(rng));
    const auto f = disk_function(b);
    const double adaptive = lambda_at_rotation(f, eta).value;
    const double oracle = midpoint_lambda(f.eval, eta.value(), 1 << 20);
    CHECK(std::abs(adaptive - oracle) < 1e-9);
  }
}

TEST_CASE("doubling base panels stays within the reported error") {
  std::mt19937_64 rng(22);
  int agree = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    const BlaschkeProduct b(testing::random_zeros(rng, testing::random_int(rng, 1, 4), 0.99));
    const CirclePoint eta = CirclePoint::from_angle(2.0 * kPi * testing::uniform01(rng));
    QuadratureSpec coarse = lambda_quadrature_spec();
    QuadratureSpec fine = coarse;
    fine.base_panels *= 2;
    const auto f = disk_function(b);
    const LambdaEstimate a = lambda_at_rotation(f, eta, coarse);
    const LambdaEstimate c = lambda_at_rotation(f, eta, fine);
    if (std::abs(a.value - c.value) <= a.error) ++agree;
  }
  CHECK(agree >= 0.95 * trials);
}

TEST_CASE("Moebius factors satisfy Lambda <= 2") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const MoebiusFactor m(testing::random_point(rng, 0.999));
    CHECK(lambda_functional(disk_function(m)).value <= 2.0 + 1e-8);
  }
  const MoebiusFactor m(Complex(0.9, 0.0));
  CHECK(lambda_at_rotation(disk_function(m), CirclePoint::from_angle(0.0)).value <= 2.0 + 1e-8);
}

TEST_CASE("Lambda is subadditive over factorizations") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = testing::random_int(rng, 2, 6);
    const auto zeros = testing::random_zeros(rng, n, 0.95);
    const int split = testing::random_int(rng, 1, n - 1);
    const BlaschkeProduct left(std::span<const Complex>(zeros).first(split));
    const BlaschkeProduct right(std::span<const Complex>(zeros).subspan(split));
    const double whole = lambda_functional(left * right).value;
    CHECK(whole <= lambda_functional(left).value + lambda_functional(right).value + 1e-6);
    CHECK(whole <= 2.0 * n + 1e-6);
  }
}

TEST_CASE("degree-n products can exceed 2, so the bound grows with n") {
  // Two zeros near the same boundary point: the product behaves like z^2
  // locally, whose oscillation pushes Lambda past the single-factor bound.
  const BlaschkeProduct b{Complex(0.5, 0.0), Complex(-0.5, 0.0)};
  CHECK(lambda_functional(b).value <= 4.0 + 1e-8);
  double worst = 0.0;
  for (double r : {0.9, 0.99, 0.999}) {
    const BlaschkeProduct c{Complex(r, 0.0), Complex(-r, 0.0)};
    worst = std::max(worst, lambda_functional(c).value);
    const BlaschkeProduct d{Complex(r, 0.0), std::polar(r, 0.05)};
    worst = std::max(worst, lambda_functional(d).value);
  }
  CHECK(worst > 2.0);
  CHECK(worst <= 4.0 + 1e-6);
}

TEST_CASE("Lambda is invariant under rotating the argument") {
  const std::vector<Complex> zeros{Complex(0.3, 0.4), Complex(-0.6, 0.1)};
  const Complex c = std::polar(1.0, 0.9);
  std::vector<Complex> rotated;
  for (Complex a : zeros) rotated.push_back(a * std::conj(c));
  // B(c z) has zeros conj(c) a_k and equals B up to a unimodular constant
  const double l1 = lambda_functional(BlaschkeProduct(zeros)).value;
  const double l2 = lambda_functional(BlaschkeProduct(rotated)).value;
  CHECK(std::abs(l1 - l2) < 1e-7);
}
