#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "toeplitz_bounds/errors.hpp"
#include "toeplitz_bounds/json_io.hpp"
#include "toeplitz_bounds/omega.hpp"
#include "toeplitz_bounds/pick.hpp"

using namespace tb;

namespace {

// Two nodes: by Schwarz-Pick, level mu is feasible iff mu >= max|y| and
// rho(y1/mu, y2/mu) <= rho(x1, x2). Solved by scalar bisection.
double two_node_level(Complex x1, Complex x2, Complex y1, Complex y2) {
  const double target = pseudohyperbolic(x1, x2);
  auto feasible = [&](double mu) {
    if (std::abs(y1) >= mu || std::abs(y2) >= mu) return false;
    return pseudohyperbolic(y1 / mu, y2 / mu) <= target;
  };
  double lo = std::max(std::abs(y1), std::abs(y2));
  double hi = 2.0 * lo + 1.0;
  while (!feasible(hi)) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

InterpolationProblem random_problem(std::mt19937_64& rng, int n) {
  InterpolationProblem p;
  p.nodes = testing::random_zeros(rng, n, 0.9);
  for (int i = 0; i < n; ++i) p.targets.push_back(testing::random_point(rng, 2.0));
  return p;
}

}  // namespace

TEST_CASE("problem validation") {
  InterpolationProblem p{{Complex(0.1, 0.0)}, {}};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {{}, {}};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {{Complex(1.0, 0.0)}, {Complex(0.0, 0.0)}};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {{Complex(0.2, 0.0), Complex(0.2, 0.0)}, {1.0, 2.0}};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = {{Complex(0.2, 0.0), Complex(-0.2, 0.0)}, {1.0, 2.0}};
  CHECK_NOTHROW(p.validate());
  CHECK(p.max_target() == 2.0);
}

TEST_CASE("one node: the minimal level is |y|") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const InterpolationProblem p = random_problem(rng, 1);
    CHECK(std::abs(minimal_level(p) - std::abs(p.targets[0])) < 1e-10);
  }
}

TEST_CASE("Schwarz two-node case") {
  const InterpolationProblem p{{Complex(0.0, 0.0), Complex(0.5, 0.0)},
                               {Complex(0.0, 0.0), Complex(0.25, 0.0)}};
  const double mu = minimal_level(p);
  CHECK(std::abs(mu - 0.5) < 1e-9);
  const InterpolantCertificate cert = construct_interpolant(p, mu * (1.0 + 1e-6));
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.7, 0.1), Complex(0.0, 0.9)}) {
    CHECK(std::abs(cert.interpolant(z) - mu * z) < 1e-5);
  }
  CHECK(cert.max_residual() < 1e-12);
}

TEST_CASE("two nodes against the Schwarz-Pick oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const InterpolationProblem p = random_problem(rng, 2);
    const double oracle = two_node_level(p.nodes[0], p.nodes[1], p.targets[0], p.targets[1]);
    CHECK(minimal_level(p) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("all-zero targets need level zero") {
  const InterpolationProblem p{{Complex(0.1, 0.0), Complex(0.5, 0.2)}, {0.0, 0.0}};
  CHECK(minimal_level(p) == 0.0);
}

TEST_CASE("feasibility is monotone in the level") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const InterpolationProblem p = random_problem(rng, testing::random_int(rng, 1, 6));
    const double mu = minimal_level(p);
    bool seen = false;
    for (double f : {0.5, 0.9, 0.99, 1.0 - 1e-6, 1.0, 1.0 + 1e-8, 1.1, 2.0, 10.0}) {
      const bool feasible = pick_feasible(p, mu * f);
      CHECK((feasible || !seen));
      seen = seen || feasible;
    }
    CHECK(pick_feasible(p, mu));
    if (mu > p.max_target()) CHECK(pick_test(p, mu * (1.0 - 1e-6)).min_eigenvalue < 0.0);
  }
}

TEST_CASE("covariance: target scaling, target rotation, node automorphisms") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const InterpolationProblem p = random_problem(rng, testing::random_int(rng, 2, 5));
    const double mu = minimal_level(p);
    const double lambda = 0.01 + 10.0 * testing::uniform01(rng);
    InterpolationProblem scaled = p;
    for (auto& y : scaled.targets) y *= lambda;
    CHECK(minimal_level(scaled) == doctest::Approx(lambda * mu).epsilon(1e-9));
    const Complex c = std::polar(1.0, 2.0 * std::numbers::pi * testing::uniform01(rng));
    InterpolationProblem rotated = p;
    for (auto& y : rotated.targets) y *= c;
    CHECK(minimal_level(rotated) == doctest::Approx(mu).epsilon(1e-9));
    InterpolationProblem moved = p;
    const MoebiusFactor phi(testing::random_point(rng, 0.5));
    for (auto& x : moved.nodes) x = phi(x);
    CHECK(minimal_level(moved) == doctest::Approx(mu).epsilon(1e-8));
  }
}

TEST_CASE("Schur construction agrees with the eigenvalue route") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const InterpolationProblem p = random_problem(rng, testing::random_int(rng, 1, 6));
    const double mu = minimal_level(p);
    const InterpolantCertificate cert = construct_interpolant(p, mu * (1.0 + 1e-4));
    CHECK(cert.max_residual() < 1e-8 * (1.0 + p.max_target()));
    CHECK(cert.sup_norm <= cert.level * (1.0 + 1e-6));
    CHECK(cert.sup_norm >= mu * (1.0 - 1e-6));
    CHECK_THROWS_AS(construct_interpolant(p, mu * (1.0 - 1e-4)), NotStrictlyFeasible);
    // the monomial form is the same function
    const RationalFunction r = cert.interpolant.to_rational();
    for (int k = 0; k < 5; ++k) {
      const Complex z = testing::random_point(rng, 0.9);
      CHECK(std::abs(r(z) - cert.interpolant(z)) < 1e-8 * (1.0 + std::abs(cert.interpolant(z))));
    }
  }
}

TEST_CASE("minimal levels of ray configurations match high-precision references") {
  // references from 50-digit arithmetic on the same Pick matrices, nodes
  // taken as the exact doubles 1 - q^k used here (1 - 1e-12 itself is not a
  // double, and the level is sensitive to the probe gap)
  struct Case {
    int n;
    double q;
    int m;
    double level;
  };
  const Case cases[] = {
      {1, 0.1, 5, 1.0195888785433587},    {1, 0.05, 5, 1.0049432023490586},
      {1, 0.05, 3, 1.1012193073398301},   {2, 0.003, 4, 1.1093289557680903},
      {2, 0.001, 4, 1.0632013698511223},  {2, 0.001, 3, 1.0914328991544429},
      {3, 0.003, 5, 1.1574984789426045},   {3, 0.001, 4, 1.104837434084043},
  };
  for (const Case& c : cases) {
    const auto config = make_ray_configuration(CirclePoint::from_angle(0.0), c.q, c.n, c.m);
    const RayInstance instance = build_configuration(config);
    CHECK(minimal_level(instance.problem) == doctest::Approx(c.level).epsilon(1e-8));
  }
}

TEST_CASE("clustered nodes") {
  // pseudohyperbolic separation 1.3e-7: the normalized Pick matrix has
  // relative eigenvalue gaps near separation^2, below the strictness margin
  const InterpolationProblem p{{Complex(0.5, 0.0), Complex(0.5 + 1e-7, 0.0)},
                               {Complex(0.1, 0.0), Complex(0.1 + 1e-7, 0.0)}};
  CHECK(min_node_separation(p) < 1e-6);
  CHECK_THROWS_AS(construct_interpolant(p, 1.5 * minimal_level(p)), NumericalBreakdown);
  // at separation 1e-3 the gaps (~1e-6) clear the feasibility tolerance
  const InterpolationProblem q{{Complex(0.5, 0.0), Complex(0.5 + 7.5e-4, 0.0)},
                               {Complex(0.1, 0.0), Complex(0.1 + 7.5e-4, 0.0)}};
  CHECK(min_node_separation(q) > 1e-6);
  const InterpolantCertificate cert = construct_interpolant(q, 1.5 * minimal_level(q));
  CHECK(cert.warnings.empty());
  CHECK(cert.max_residual() < 1e-8);
}

TEST_CASE("certificates survive a JSON round trip") {
  std::mt19937_64 rng(46);
  const InterpolationProblem p = random_problem(rng, 4);
  const InterpolantCertificate cert = construct_interpolant(p, minimal_level(p) * 1.01);
  const json j = cert;
  const auto back = parse_json(j.dump()).get<InterpolantCertificate>();
  CHECK(back == cert);
  CHECK(parse_json(json(p).dump()).get<InterpolationProblem>() == p);
}
