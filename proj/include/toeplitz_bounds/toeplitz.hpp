#pragma once

#include <span>

#include "toeplitz_bounds/disk.hpp"
#include "toeplitz_bounds/quadrature.hpp"
#include "toeplitz_bounds/rational.hpp"

namespace tb {

/// (T_B h)(z) = (1/2 pi i) \oint_T h(zeta) / (B(zeta)(zeta - z)) dzeta, by residues:
///   h(z)/B(z) + sum_k h(a_k) / (B'(a_k)(a_k - z)).
/// Needs pairwise distinct zeros (RepeatedZero) and z off every zero
/// (PointCollision), both at separation 1e-12.
Complex apply_toeplitz_residue(const BlaschkeProduct& b, const AnalyticFunction& h,
                               UnitDiskPoint z);

/// Same value from the defining boundary integral
///   int_T conj(B(zeta)) h(zeta) zeta / (zeta - z) dm(zeta),
/// trapezoidal rule with doubling, adaptive panels as a fallback.
/// Requires |z| <= 1 - 1e-3.
QuadratureResult apply_toeplitz_contour(const BlaschkeProduct& b, const AnalyticFunction& h,
                                        UnitDiskPoint z, const QuadratureSpec& spec = {});

struct SupNormEstimate {
  double value = 0.0;
  double angle = 0.0;
};

/// max |f| on T: 4096 samples anchored at the first feature's direction,
/// graded samples around every feature, then golden-section refinement of
/// the 8 highest local maxima. A lower estimate of the true sup.
SupNormEstimate sup_norm_on_circle(const AnalyticFunction& f,
                                   std::span<const Complex> features = {},
                                   int samples = 4096, int peaks = 8);

SupNormEstimate sup_norm_on_circle(const RationalFunction& f, int samples = 4096,
                                   int peaks = 8);

struct UpperBound {
  double value = 1.0;
  LambdaResult lambda;
};

/// ||T_B|| <= ||B||_inf + Lambda(B) = 1 + Lambda(B); the Lambda estimate's
/// error is added on top.
UpperBound lemma1_upper_bound(const BlaschkeProduct& b,
                              const QuadratureSpec& spec = lambda_quadrature_spec(),
                              int rotation_grid = 256);

}  // namespace tb
