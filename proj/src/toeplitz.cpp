#include "toeplitz_bounds/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "toeplitz_bounds/errors.hpp"

namespace tb {

namespace {

constexpr double kPi = std::numbers::pi;

void check_residue_preconditions(const BlaschkeProduct& b, Complex z) {
  if (!b.has_distinct_zeros(1e-12)) {
    throw RepeatedZero("residue formula needs pairwise distinct zeros");
  }
  for (Complex a : b.zeros()) {
    if (std::abs(a - z) <= 1e-12) {
      std::ostringstream msg;
      msg << "evaluation point " << z << " collides with the zero " << a;
      throw PointCollision(msg.str());
    }
  }
}

}  // namespace

Complex apply_toeplitz_residue(const BlaschkeProduct& b, const AnalyticFunction& h,
                               UnitDiskPoint z_point) {
  const Complex z = z_point.value();
  check_residue_preconditions(b, z);
  Complex value = h(z) / b(z);
  for (Complex a : b.zeros()) value += h(a) / (b.derivative(a) * (a - z));
  return value;
}

QuadratureResult apply_toeplitz_contour(const BlaschkeProduct& b, const AnalyticFunction& h,
                                        UnitDiskPoint z_point, const QuadratureSpec& spec) {
  spec.validate();
  const Complex z = z_point.value();
  if (std::abs(z) > 1.0 - 1e-3) {
    throw InvalidInput("contour application needs |z| <= 1 - 1e-3");
  }
  auto integrand = [&](Complex zeta) { return std::conj(b(zeta)) * h(zeta) * zeta / (zeta - z); };

  constexpr long kMaxNodes = 1L << 22;
  long n = spec.base_panels;
  long evaluations = 0;
  Complex sum = 0.0;
  for (long j = 0; j < n; ++j) sum += integrand(CirclePoint::from_angle(2.0 * kPi * j / n));
  evaluations += n;
  Complex estimate = sum / static_cast<double>(n);

  while (2 * n <= kMaxNodes) {
    Complex odd = 0.0;
    for (long j = 0; j < n; ++j) {
      odd += integrand(CirclePoint::from_angle(2.0 * kPi * (2 * j + 1) / (2 * n)));
    }
    evaluations += n;
    sum += odd;
    n *= 2;
    const Complex refined = sum / static_cast<double>(n);
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (change <= spec.abs_tol) return QuadratureResult{estimate, change, evaluations};
  }

  std::vector<Complex> points = b.zeros();
  points.push_back(z);
  const auto features = features_from_points(points);
  QuadratureResult r = integrate_circle([&](CirclePoint zeta) { return integrand(zeta.value()); },
                                        spec, features);
  r.evaluations += evaluations;
  return r;
}

SupNormEstimate sup_norm_on_circle(const AnalyticFunction& f, std::span<const Complex> features,
                                   int samples, int peaks) {
  if (samples < 16) throw InvalidInput("sup-norm sampling needs at least 16 samples");
  double anchor = 0.0;
  for (Complex p : features) {
    if (std::abs(p) > 0.0) {
      anchor = std::arg(p);
      break;
    }
  }

  std::vector<double> angles;
  angles.reserve(samples + 80 * features.size());
  const double step = 2.0 * kPi / samples;
  for (int j = 0; j < samples; ++j) angles.push_back(anchor + step * j);
  for (Complex p : features) {
    if (std::abs(p) == 0.0) continue;
    const double c = std::arg(p);
    const double w = std::max(1.0 - std::abs(p), 1e-15);
    angles.push_back(c);
    for (double d = w / 64.0; d < step; d *= std::sqrt(2.0)) {
      angles.push_back(c - d);
      angles.push_back(c + d);
    }
  }
  // Wrap into [anchor - pi, anchor + pi) so the sort order is circular.
  for (double& t : angles) t = anchor + std::remainder(t - anchor, 2.0 * kPi);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

  auto modulus = [&f](double t) { return std::abs(f(CirclePoint::from_angle(t).value())); };
  const std::size_t n = angles.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = modulus(angles[i]);

  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] >= prev && values[i] >= next) maxima.push_back(i);
  }
  std::sort(maxima.begin(), maxima.end(),
            [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (maxima.size() > static_cast<std::size_t>(peaks)) maxima.resize(peaks);

  SupNormEstimate best;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] > best.value) best = {values[i], angles[i]};
  }

  constexpr double kInvPhi = 0.6180339887498949;
  for (std::size_t i : maxima) {
    double lo = angles[(i + n - 1) % n];
    double hi = angles[(i + 1) % n];
    if (i == 0) lo -= 2.0 * kPi;
    if (i == n - 1) hi += 2.0 * kPi;
    const double min_width = std::max((hi - lo) * 1e-9, 1e-16);
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = modulus(x1);
    double f2 = modulus(x2);
    for (int it = 0; it < 100 && hi - lo > min_width; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = modulus(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = modulus(x1);
      }
    }
    if (f1 > best.value) best = {f1, x1};
    if (f2 > best.value) best = {f2, x2};
  }
  return best;
}

SupNormEstimate sup_norm_on_circle(const RationalFunction& f, int samples, int peaks) {
  const auto poles = f.poles();
  std::vector<Complex> features;
  // Poles just outside T show up as peaks at the reflected point.
  for (Complex p : poles) {
    if (std::abs(p) > 0.0) features.push_back(1.0 / std::conj(p));
  }
  return sup_norm_on_circle(AnalyticFunction(f), features, samples, peaks);
}

UpperBound lemma1_upper_bound(const BlaschkeProduct& b, const QuadratureSpec& spec,
                              int rotation_grid) {
  UpperBound out;
  if (b.degree() == 0) {
    out.value = 1.0;
    out.lambda.value = 0.0;
    return out;
  }
  out.lambda = lambda_functional(b, spec, rotation_grid);
  out.value = 1.0 + out.lambda.value + out.lambda.error;
  return out;
}

}  // namespace tb
