#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "toeplitz_bounds/disk.hpp"
#include "toeplitz_bounds/rational.hpp"

namespace tb {

/// Find h analytic in D with h(x_k) = y_k.
struct InterpolationProblem {
  std::vector<Complex> nodes;
  std::vector<Complex> targets;

  /// N >= 1, equal lengths, nodes in D and pairwise separated by > 1e-12.
  void validate() const;
  std::size_t size() const { return nodes.size(); }
  double max_target() const;

  bool operator==(const InterpolationProblem&) const = default;
};

/// P_jk = (mu^2 - y_j conj(y_k)) / (1 - x_j conj(x_k)).
struct PickMatrix {
  Eigen::MatrixXcd entries;
  double level = 0.0;

  /// D P D with D = diag(sqrt(1 - |x_j|^2)); congruent to P, entries
  /// bounded by mu^2 + max|y|^2 however close the nodes are to T.
  Eigen::MatrixXcd normalized;
};

PickMatrix pick_matrix(const InterpolationProblem& problem, double level);

struct PickTest {
  bool feasible = false;
  double min_eigenvalue = 0.0;
  double norm = 0.0;  // spectral norm of the normalized matrix
};

/// Smallest eigenvalue of the normalized Pick matrix against -1e-10 * norm.
PickTest pick_test(const InterpolationProblem& problem, double level);
bool pick_feasible(const InterpolationProblem& problem, double level);

/// Infimal feasible level: max|y| when that already passes pick_feasible,
/// otherwise bisection on the sign of the smallest eigenvalue over
/// [max|y|, seed] to relative width 1e-10, the seed doubling from max|y|.
/// Returns the positive semidefinite end of the final bracket.
double minimal_level(const InterpolationProblem& problem);

/// Schur-Nevanlinna interpolant  h = level * f_1  with
///   f_j(z) = (w_j + r_j(z) f_{j+1}(z)) / (1 + conj(w_j) r_j(z) f_{j+1}(z)),
///   r_j(z) = (z - x_j) / (1 - conj(x_j) z),  f_N == w_N.
/// Evaluated in this nested form, which stays accurate at nodes near T.
class SchurInterpolant {
 public:
  SchurInterpolant() = default;
  SchurInterpolant(double level, std::vector<Complex> nodes, std::vector<Complex> parameters);

  Complex operator()(Complex z) const;

  double level() const { return level_; }
  const std::vector<Complex>& nodes() const { return nodes_; }
  /// Schur parameters w_1..w_N, each |w_j| < 1 except possibly the last.
  const std::vector<Complex>& parameters() const { return params_; }
  std::size_t degree() const { return nodes_.empty() ? 0 : nodes_.size() - 1; }

  /// Monomial-coefficient form of the same function (degree <= N-1).
  RationalFunction to_rational() const;

  bool operator==(const SchurInterpolant&) const = default;

 private:
  double level_ = 0.0;
  std::vector<Complex> nodes_;
  std::vector<MoebiusFactor> factors_;
  std::vector<Complex> params_;
};

struct InterpolantCertificate {
  SchurInterpolant interpolant;
  double level = 0.0;
  std::vector<double> residuals;  // |h(x_k) - y_k|
  double sup_norm = 0.0;          // measured on T
  std::vector<std::string> warnings;

  double max_residual() const;
  bool operator==(const InterpolantCertificate&) const = default;
};

/// Builds the interpolant at a strictly feasible level and measures it.
/// Throws NotStrictlyFeasible when the normalized Pick matrix has minimum
/// eigenvalue <= 1e-12 * norm, NumericalBreakdown when the recursion or the
/// certificate checks fail.
InterpolantCertificate construct_interpolant(const InterpolationProblem& problem, double level);

/// Closest pair of nodes in the pseudohyperbolic metric.
double min_node_separation(const InterpolationProblem& problem);

}  // namespace tb
