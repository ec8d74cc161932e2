#pragma once

#include <vector>

#include "toeplitz_bounds/disk.hpp"

namespace tb {

/// num(z) / den(z), coefficients in ascending powers. Construction checks
/// that every pole lies outside the closed disk (|pole| > 1 + 1e-9).
class RationalFunction {
 public:
  RationalFunction() : num_{0.0}, den_{1.0} {}
  RationalFunction(std::vector<Complex> numerator, std::vector<Complex> denominator);

  static RationalFunction constant(Complex c) { return RationalFunction({c}, {1.0}); }
  static RationalFunction polynomial(std::vector<Complex> coefficients) {
    return RationalFunction(std::move(coefficients), {1.0});
  }
  /// Skips the pole check; for exporting functions whose poles are known
  /// to lie outside the disk but may sit numerically close to T.
  static RationalFunction unchecked(std::vector<Complex> numerator,
                                    std::vector<Complex> denominator);

  const std::vector<Complex>& numerator() const { return num_; }
  const std::vector<Complex>& denominator() const { return den_; }

  Complex operator()(Complex z) const;

  /// Roots of the denominator (companion-matrix eigenvalues).
  std::vector<Complex> poles() const;

  RationalFunction operator+(const RationalFunction& other) const;
  RationalFunction operator*(Complex scale) const;

  bool operator==(const RationalFunction& other) const = default;

 private:
  struct NoCheck {};
  RationalFunction(std::vector<Complex> numerator, std::vector<Complex> denominator, NoCheck);

  std::vector<Complex> num_;
  std::vector<Complex> den_;
};

std::vector<Complex> poly_mul(const std::vector<Complex>& p, const std::vector<Complex>& q);
std::vector<Complex> poly_add(const std::vector<Complex>& p, const std::vector<Complex>& q);
Complex poly_eval(const std::vector<Complex>& p, Complex z);
std::vector<Complex> poly_roots(const std::vector<Complex>& p);

}  // namespace tb
