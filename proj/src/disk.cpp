#include "toeplitz_bounds/disk.hpp"

#include <cmath>
#include <sstream>

#include "toeplitz_bounds/errors.hpp"

namespace tb {

namespace {

double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

void require_closed_disk(Complex z, const char* what) {
  if (!(std::abs(z) <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << what << ": point " << z << " lies outside the closed unit disk";
    throw InvalidInput(msg.str());
  }
}

}  // namespace

double one_minus_abs2(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double px = x * x;
  const double ex = std::fma(x, x, -px);
  const double py = y * y;
  const double ey = std::fma(y, y, -py);
  double e1 = 0.0;
  double e2 = 0.0;
  double s = two_sum(1.0, -px, e1);
  s = two_sum(s, -py, e2);
  return s + ((e1 + e2) - ex - ey);
}

Complex one_minus_conj_mul(Complex a, double a_gap, Complex z) {
  return a_gap + std::conj(a) * (a - z);
}

double pseudohyperbolic(Complex z, Complex w) {
  return std::abs(z - w) / std::abs(one_minus_conj_mul(w, one_minus_abs2(w), z));
}

UnitDiskPoint::UnitDiskPoint(Complex value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
      !(one_minus_abs2(value) > 0.0)) {
    std::ostringstream msg;
    msg << "point " << value << " is not inside the open unit disk";
    throw InvalidInput(msg.str());
  }
}

CirclePoint::CirclePoint(Complex value) {
  const double r = std::abs(value);
  if (!std::isfinite(r) || r == 0.0) {
    throw InvalidInput("circle point needs a finite nonzero value");
  }
  value_ = value / r;
}

CirclePoint CirclePoint::from_angle(double theta) {
  return CirclePoint(Complex(std::cos(theta), std::sin(theta)), Exact{});
}

MoebiusFactor::MoebiusFactor(Complex zero) : zero_(zero), gap_(one_minus_abs2(zero)) {
  if (!std::isfinite(zero.real()) || !std::isfinite(zero.imag()) || !(gap_ > 0.0)) {
    std::ostringstream msg;
    msg << "Moebius zero " << zero << " must lie in the open unit disk";
    throw InvalidInput(msg.str());
  }
}

Complex MoebiusFactor::operator()(Complex z) const {
  return (z - zero_) / one_minus_conj_mul(zero_, gap_, z);
}

Complex MoebiusFactor::derivative(Complex z) const {
  const Complex d = one_minus_conj_mul(zero_, gap_, z);
  return gap_ / (d * d);
}

Complex eval_moebius(const MoebiusFactor& factor, Complex z) {
  require_closed_disk(z, "eval_moebius");
  return factor(z);
}

BlaschkeProduct::BlaschkeProduct(std::span<const Complex> zeros) {
  factors_.reserve(zeros.size());
  for (Complex a : zeros) factors_.emplace_back(a);
}

std::vector<Complex> BlaschkeProduct::zeros() const {
  std::vector<Complex> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.zero());
  return out;
}

Complex BlaschkeProduct::operator()(Complex z) const {
  Complex value = 1.0;
  for (const auto& f : factors_) value *= f(z);
  return value;
}

Complex BlaschkeProduct::derivative(Complex z) const {
  const std::size_t n = factors_.size();
  if (n == 0) return 0.0;

  // A zero of multiplicity > 1 at z is outside the supported scope.
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(z - factors_[j].zero()) > 1e-12) continue;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (std::abs(factors_[k].zero() - factors_[j].zero()) <= 1e-12) {
        throw RepeatedZero("derivative requested at a repeated zero");
      }
    }
  }

  std::vector<Complex> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = factors_[j](z);

  // suffix[j] = prod_{k >= j} values[k]
  std::vector<Complex> suffix(n + 1, 1.0);
  for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * values[j];

  Complex prefix = 1.0;
  Complex sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += prefix * factors_[j].derivative(z) * suffix[j + 1];
    prefix *= values[j];
  }
  return sum;
}

bool BlaschkeProduct::has_distinct_zeros(double threshold) const {
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    for (std::size_t k = j + 1; k < factors_.size(); ++k) {
      if (std::abs(factors_[j].zero() - factors_[k].zero()) <= threshold) return false;
    }
  }
  return true;
}

BlaschkeProduct BlaschkeProduct::operator*(const BlaschkeProduct& other) const {
  BlaschkeProduct out = *this;
  out.factors_.insert(out.factors_.end(), other.factors_.begin(), other.factors_.end());
  return out;
}

Complex eval_blaschke(const BlaschkeProduct& b, Complex z) {
  require_closed_disk(z, "eval_blaschke");
  return b(z);
}

Complex eval_blaschke_derivative(const BlaschkeProduct& b, Complex z) {
  if (!(one_minus_abs2(z) > 0.0)) {
    throw InvalidInput("eval_blaschke_derivative needs |z| < 1");
  }
  return b.derivative(z);
}

}  // namespace tb
