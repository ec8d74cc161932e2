#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace tb {

using Complex = std::complex<double>;

/// Any function analytic on a neighbourhood of the closed disk.
using AnalyticFunction = std::function<Complex(Complex)>;

/// 1 - |z|^2 with error-free products, accurate to a few ulps of the
/// result even when |z| is within 1e-15 of the circle.
double one_minus_abs2(Complex z);

/// 1 - conj(a) z, computed as (1 - |a|^2) + conj(a)(a - z) so that the
/// result keeps full relative precision when z and a are both near T.
Complex one_minus_conj_mul(Complex a, double a_gap, Complex z);

/// Pseudohyperbolic distance |z - w| / |1 - conj(w) z|.
double pseudohyperbolic(Complex z, Complex w);

/// A point of the open unit disk.
class UnitDiskPoint {
 public:
  explicit UnitDiskPoint(Complex value);
  Complex value() const { return value_; }
  operator Complex() const { return value_; }

 private:
  Complex value_;
};

/// A point of the unit circle, stored with modulus exactly 1.
class CirclePoint {
 public:
  /// Normalizes any finite nonzero value onto T.
  explicit CirclePoint(Complex value);
  static CirclePoint from_angle(double theta);

  Complex value() const { return value_; }
  operator Complex() const { return value_; }
  double angle() const { return std::arg(value_); }

 private:
  struct Exact {};
  CirclePoint(Complex value, Exact) : value_(value) {}
  Complex value_;
};

/// I(z) = (z - a) / (1 - z conj(a)) with |a| < 1.
class MoebiusFactor {
 public:
  explicit MoebiusFactor(Complex zero);

  Complex zero() const { return zero_; }
  /// 1 - |a|^2.
  double gap() const { return gap_; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  bool operator==(const MoebiusFactor& other) const { return zero_ == other.zero_; }

 private:
  Complex zero_;
  double gap_;
};

Complex eval_moebius(const MoebiusFactor& factor, Complex z);

/// Finite Blaschke product prod_k (z - a_k)/(1 - z conj(a_k)), zeros kept
/// in the given order and with multiplicity. The empty product is f == 1.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  explicit BlaschkeProduct(std::span<const Complex> zeros);
  BlaschkeProduct(std::initializer_list<Complex> zeros)
      : BlaschkeProduct(std::span<const Complex>(zeros.begin(), zeros.size())) {}

  std::size_t degree() const { return factors_.size(); }
  const std::vector<MoebiusFactor>& factors() const { return factors_; }
  std::vector<Complex> zeros() const;

  Complex operator()(Complex z) const;

  /// B'(z) by the product rule over the factored form. Throws RepeatedZero
  /// when z sits on a zero of multiplicity > 1.
  Complex derivative(Complex z) const;

  /// True when every pair of zeros is separated by more than `threshold`.
  bool has_distinct_zeros(double threshold = 1e-12) const;

  /// Product of this and other, zeros concatenated.
  BlaschkeProduct operator*(const BlaschkeProduct& other) const;

  bool operator==(const BlaschkeProduct& other) const = default;

 private:
  std::vector<MoebiusFactor> factors_;
};

Complex eval_blaschke(const BlaschkeProduct& b, Complex z);
Complex eval_blaschke_derivative(const BlaschkeProduct& b, Complex z);

}  // namespace tb
