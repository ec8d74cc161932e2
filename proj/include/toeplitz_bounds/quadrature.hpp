#pragma once

#include <functional>
#include <span>
#include <vector>

#include "toeplitz_bounds/disk.hpp"
#include "toeplitz_bounds/errors.hpp"

namespace tb {

/// Adaptive panel quadrature settings.
struct QuadratureSpec {
  int base_panels = 64;    // power of two, >= 64
  int max_depth = 60;      // bisections allowed below a base panel
  double abs_tol = 1e-9;   // >= 1e-12
  long max_evaluations = 4'000'000;

  void validate() const;
};

/// Defaults used for the Lambda functional (absolute 1e-8).
QuadratureSpec lambda_quadrature_spec();

struct QuadratureResult {
  Complex value;
  double error = 0.0;
  long evaluations = 0;
};

/// Raised when refinement stops before the tolerance is met. Carries the
/// best value found together with its honest error estimate.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, QuadratureResult best)
      : Error(what), best_(best) {}
  bool numeric() const override { return true; }
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

/// A place where the integrand varies on the scale `width` (radians).
struct AngularFeature {
  double angle;
  double width;
};

/// Features on T induced by points of D near the circle (zeros, poles,
/// interpolation nodes): angle arg(p), width max(1 - |p|, 1e-15).
std::vector<AngularFeature> features_from_points(std::span<const Complex> points);

/// Integral of g over [a, b] by globally adaptive bisection. Each panel is
/// integrated with 7-point Gauss-Legendre, whole and as two halves; the
/// difference is the panel's error estimate. Features add graded
/// breakpoints at their angle.
QuadratureResult integrate_interval(const std::function<Complex(double)>& g, double a, double b,
                                    const QuadratureSpec& spec,
                                    std::span<const AngularFeature> features = {});

/// Integral over T with respect to normalized Lebesgue measure.
QuadratureResult integrate_circle(const std::function<Complex(CirclePoint)>& f,
                                  const QuadratureSpec& spec,
                                  std::span<const AngularFeature> features = {});

/// A function analytic on the disk together with the points of D near
/// which its boundary values vary quickly.
struct DiskFunction {
  AnalyticFunction eval;
  std::vector<Complex> features;
  /// Set when f is the Blaschke product whose zeros are exactly `features`.
  /// Its boundary phase is then known in closed form, which locates the
  /// kinks of |f(zeta eta) - f(conj(zeta) eta)|.
  bool inner = false;
};

DiskFunction disk_function(const BlaschkeProduct& b);
DiskFunction disk_function(const MoebiusFactor& m);

struct LambdaEstimate {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

/// Inner integral of Lambda at a fixed rotation:
///   int_T |f(zeta eta) - f(conj(zeta) eta)| / |1 - zeta| dm(zeta).
LambdaEstimate lambda_at_rotation(const DiskFunction& f, CirclePoint eta,
                                  const QuadratureSpec& spec = lambda_quadrature_spec());

struct LambdaResult {
  double value = 0.0;
  CirclePoint eta = CirclePoint::from_angle(0.0);
  double error = 0.0;
  long evaluations = 0;
};

/// sup over eta of the inner integral, approximated by a uniform grid of
/// rotations plus the directions of f's features, each followed by
/// golden-section refinement. The value is a lower estimate of the sup.
LambdaResult lambda_functional(const DiskFunction& f,
                               const QuadratureSpec& spec = lambda_quadrature_spec(),
                               int rotation_grid = 256);

LambdaResult lambda_functional(const BlaschkeProduct& b,
                               const QuadratureSpec& spec = lambda_quadrature_spec(),
                               int rotation_grid = 256);

}  // namespace tb
