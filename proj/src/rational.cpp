#include "toeplitz_bounds/rational.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "toeplitz_bounds/errors.hpp"

namespace tb {

namespace {

void trim(std::vector<Complex>& p) {
  while (p.size() > 1 && p.back() == Complex(0.0)) p.pop_back();
  if (p.empty()) p.push_back(0.0);
}

}  // namespace

std::vector<Complex> poly_mul(const std::vector<Complex>& p, const std::vector<Complex>& q) {
  std::vector<Complex> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

std::vector<Complex> poly_add(const std::vector<Complex>& p, const std::vector<Complex>& q) {
  std::vector<Complex> out(std::max(p.size(), q.size()), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) out[i] += q[i];
  return out;
}

Complex poly_eval(const std::vector<Complex>& p, Complex z) {
  Complex acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& p) {
  std::vector<Complex> c = p;
  trim(c);
  const std::size_t deg = c.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalBreakdown("polynomial root finding failed");
  std::vector<Complex> roots(deg);
  for (std::size_t i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

RationalFunction::RationalFunction(std::vector<Complex> numerator,
                                   std::vector<Complex> denominator, NoCheck)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.empty()) num_.push_back(0.0);
  trim(den_);
  if (den_.size() == 1 && den_[0] == Complex(0.0)) {
    throw InvalidInput("rational function denominator is identically zero");
  }
}

RationalFunction::RationalFunction(std::vector<Complex> numerator,
                                   std::vector<Complex> denominator)
    : RationalFunction(std::move(numerator), std::move(denominator), NoCheck{}) {
  for (Complex p : poles()) {
    if (!(std::abs(p) > 1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "rational function has a pole at " << p << " in the closed unit disk";
      throw InvalidInput(msg.str());
    }
  }
}

RationalFunction RationalFunction::unchecked(std::vector<Complex> numerator,
                                             std::vector<Complex> denominator) {
  return RationalFunction(std::move(numerator), std::move(denominator), NoCheck{});
}

Complex RationalFunction::operator()(Complex z) const {
  return poly_eval(num_, z) / poly_eval(den_, z);
}

std::vector<Complex> RationalFunction::poles() const { return poly_roots(den_); }

RationalFunction RationalFunction::operator+(const RationalFunction& other) const {
  if (den_ == other.den_) return RationalFunction(poly_add(num_, other.num_), den_, NoCheck{});
  return RationalFunction(poly_add(poly_mul(num_, other.den_), poly_mul(other.num_, den_)),
                          poly_mul(den_, other.den_), NoCheck{});
}

RationalFunction RationalFunction::operator*(Complex scale) const {
  std::vector<Complex> n = num_;
  for (auto& c : n) c *= scale;
  return RationalFunction(std::move(n), den_, NoCheck{});
}

}  // namespace tb
