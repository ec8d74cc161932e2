#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "toeplitz_bounds/errors.hpp"
#include "toeplitz_bounds/json_io.hpp"
#include "toeplitz_bounds/omega.hpp"

using namespace tb;

namespace {

const CirclePoint kOne = CirclePoint::from_angle(0.0);
const CirclePoint kI = CirclePoint(Complex(0.0, 1.0));

}  // namespace

TEST_CASE("ray configurations are validated") {
  CHECK_THROWS_AS(make_ray_configuration(kOne, 0.0, 1, 3), InvalidConfiguration);
  CHECK_THROWS_AS(make_ray_configuration(kOne, 1.0, 1, 3), InvalidConfiguration);
  CHECK_THROWS_AS(make_ray_configuration(kOne, 0.1, 0, 3), InvalidConfiguration);
  CHECK_THROWS_AS(make_ray_configuration(kOne, 0.1, 2, 2), InvalidConfiguration);
  CHECK_THROWS_AS(make_ray_configuration(kOne, 0.1, 1, 3, 0.95), InvalidConfiguration);
  const auto c = make_ray_configuration(kI, 0.1, 2, 5);
  CHECK(c.inner_radius == doctest::Approx(0.45));
  CHECK(std::abs(c.point(1) - Complex(0.0, 0.9)) < 1e-16);
  CHECK(std::abs(c.probe() - Complex(0.0, 1.0 - 1e-5)) < 1e-16);
  CHECK(c.probe_gap() == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(c.zeros().size() == 2);
}

TEST_CASE("interpolation data of a ray configuration") {
  const auto c = make_ray_configuration(CirclePoint::from_angle(0.7), 0.2, 3, 6);
  const RayInstance inst = build_configuration(c);
  REQUIRE(inst.problem.size() == 4);
  const Complex xi = c.direction.value();
  for (int k = 1; k <= 3; ++k) {
    const Complex x = c.point(k);
    CHECK(inst.problem.nodes[k - 1] == x);
    const Complex y = inst.symbol.derivative(x) * (std::norm(x) - 1.0) * xi;
    CHECK(std::abs(inst.problem.targets[k - 1] - y) < 1e-14);
  }
  CHECK(std::abs(inst.problem.targets[3] - inst.symbol(c.probe())) < 1e-15);
}

TEST_CASE("ideal limit closed form") {
  for (int n = 1; n <= 4; ++n) {
    for (double q : {0.3, 0.2, 0.1, 0.05, 1e-3}) {
      double s = 0.0;
      for (int k = 1; k <= n; ++k) s += std::pow(q, k);
      CHECK(std::abs(ideal_limit(n, q) - (1.0 + 2.0 * n - s)) < 1e-12);
    }
    CHECK(std::abs(ideal_limit(n, 1e-14) - (1.0 + 2.0 * n)) < 1e-12);
  }
}

TEST_CASE("the functional value decreases in m toward the ideal limit") {
  for (int n = 1; n <= 3; ++n) {
    for (double q : {0.3, 0.1, 0.01}) {
      double previous = INFINITY;
      for (int m = n + 1; m <= n + 12; ++m) {
        const auto c = make_ray_configuration(kOne, q, n, m);
        if (c.probe_gap() < 1e-13) break;
        const double v = functional_closed_form(c);
        CHECK(v < previous);
        CHECK(v > ideal_limit(n, q) - 1e-9);
        previous = v;
      }
    }
  }
}

TEST_CASE("certified lower bounds never exceed their ideal limit") {
  for (int n = 1; n <= 3; ++n) {
    for (double q : {0.3, 0.1, 0.03}) {
      for (int offset : {1, 2, 4}) {
        const auto c = make_ray_configuration(kOne, q, n, n + offset);
        const LowerBoundCertificate cert = certify_lower_bound(c);
        CHECK(cert.lower_bound <= ideal_limit(n, q) + 1e-6);
        CHECK(cert.lower_bound >= 1.0);
        CHECK(cert.interpolant_norm >= cert.minimal_level * (1.0 - 1e-9));
        CHECK(std::abs(std::abs(cert.functional_value) - functional_closed_form(c)) <
              1e-8 * functional_closed_form(c));
        CHECK(cert.lower_bound ==
              doctest::Approx(std::abs(cert.functional_value) / cert.interpolant_norm));
      }
    }
  }
}

TEST_CASE("probes at the edge of double precision are guarded") {
  const auto c = make_ray_configuration(kOne, 0.1, 1, 17);
  CHECK_THROWS_AS(certify_lower_bound(c), ConditioningGuard);
}

TEST_CASE("rotating the ray leaves the certificate unchanged") {
  for (int n = 1; n <= 3; ++n) {
    const auto a = certify_lower_bound(make_ray_configuration(kOne, 0.05, n, n + 3));
    const auto b = certify_lower_bound(make_ray_configuration(kI, 0.05, n, n + 3));
    const auto c =
        certify_lower_bound(make_ray_configuration(CirclePoint::from_angle(2.2), 0.05, n, n + 3));
    CHECK(std::abs(a.lower_bound - b.lower_bound) < 1e-8);
    CHECK(std::abs(a.lower_bound - c.lower_bound) < 1e-8);
  }
}

TEST_CASE("brackets") {
  const auto c = make_ray_configuration(kOne, 0.1, 1, 2);
  const BlaschkeProduct b(c.zeros());
  const NormBracket with = bracket_norm(b, c);
  CHECK(with.lower_provenance.has_value());
  CHECK(with.lower <= with.upper + 1e-6);
  CHECK(with.upper <= 3.0 + 1e-6);
  CHECK(with.lower > 2.5);
  const NormBracket without = bracket_norm(b, std::nullopt);
  CHECK(without.lower == 1.0);
  CHECK(without.upper == with.upper);
  const BlaschkeProduct other{Complex(0.2, 0.0)};
  CHECK_THROWS_AS(bracket_norm(other, c), InvalidInput);
}

TEST_CASE("the direct estimate falls inside the bracket") {
  for (int n = 1; n <= 2; ++n) {
    const auto c = make_ray_configuration(kOne, 0.1, n, n + 2);
    const BlaschkeProduct b(c.zeros());
    const NormBracket br = bracket_norm(b, c);
    REQUIRE(br.lower_provenance.has_value());
    // the certificate bounds the functional at its own probe
    const UnitDiskPoint probe(br.lower_provenance->config.probe());
    const double d = direct_norm_estimate(b, probe, 32, 7);
    CHECK(d >= br.lower - 1e-6);
    CHECK(d <= br.upper + 1e-6);
    CHECK(d == direct_norm_estimate(b, probe, 32, 7));
  }
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const BlaschkeProduct b(testing::random_zeros(rng, testing::random_int(rng, 1, 3), 0.9));
    const UnitDiskPoint z(testing::random_point(rng, 0.95));
    const double d = direct_norm_estimate(b, z, 4, 3);
    CHECK(d >= 1.0 - 1e-12);
    CHECK(d <= lemma1_upper_bound(b).value + 1e-6);
  }
}

TEST_CASE("studies are deterministic and ordered by schedule") {
  StudyOptions o;
  o.degree = 1;
  o.q_schedule = {0.3, 0.1};
  o.m_offsets = {1, 2, 4, 16};
  o.threads = 1;
  const StudyTable serial = omega_convergence_study(o);
  o.threads = 3;
  const StudyTable parallel = omega_convergence_study(o);
  CHECK(study_csv(serial) == study_csv(parallel));
  REQUIRE(serial.rows.size() == 8);
  CHECK(serial.uppers.size() == 2);
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    const StudyRow& r = serial.rows[i];
    CHECK(r.config.ratio == o.q_schedule[i / 4]);
    CHECK(r.config.probe_index == 1 + o.m_offsets[i % 4]);
    if (r.status == RowStatus::ok) {
      CHECK(r.lower <= r.upper + 1e-6);
    } else {
      CHECK(std::isnan(r.lower));
      CHECK_FALSE(r.warnings.empty());
    }
  }
  CHECK(serial.rows[7].status == RowStatus::guarded);
  REQUIRE(serial.best_row.has_value());
  for (const StudyRow& r : serial.rows) {
    if (r.status == RowStatus::ok) CHECK(r.lower <= serial.rows[*serial.best_row].lower);
  }
  const std::string csv = study_csv(serial);
  CHECK(csv.rfind("n,xi_re,xi_im,q,m,lower,upper,ideal_limit,interp_norm,warnings\n", 0) == 0);
}

TEST_CASE("study tables serialize to JSON") {
  StudyOptions o;
  o.q_schedule = {0.2};
  o.m_offsets = {2, 40};
  const json j = omega_convergence_study(o);
  CHECK(j.at("rows").size() == 2);
  CHECK(j.at("rows")[1].at("lower").is_null());
  const auto cert = j.at("rows")[0].at("certificate").get<LowerBoundCertificate>();
  CHECK(cert.config.probe_index == 3);
}

TEST_CASE("lower bound certificates survive a JSON round trip") {
  const auto cert = certify_lower_bound(make_ray_configuration(kI, 0.1, 2, 4));
  const json j = cert;
  CHECK(parse_json(j.dump()).get<LowerBoundCertificate>() == cert);
}

TEST_CASE("thread count and number formatting") {
  ::setenv("TOEPLITZ_BOUNDS_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::unsetenv("TOEPLITZ_BOUNDS_THREADS");
  CHECK(default_thread_count() >= 1);
  for (double v : {0.1, 1.0 / 3.0, 2.949960639422271, 1e-300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
