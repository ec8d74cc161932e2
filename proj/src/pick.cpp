#include "toeplitz_bounds/pick.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toeplitz_bounds/errors.hpp"
#include "toeplitz_bounds/toeplitz.hpp"

namespace tb {

void InterpolationProblem::validate() const {
  if (nodes.empty()) throw InvalidInput("interpolation problem needs at least one node");
  if (nodes.size() != targets.size()) {
    throw InvalidInput("interpolation problem needs as many targets as nodes");
  }
  for (Complex x : nodes) UnitDiskPoint check(x);
  for (Complex y : targets) {
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
      throw InvalidInput("interpolation targets must be finite");
    }
  }
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t k = j + 1; k < nodes.size(); ++k) {
      if (std::abs(nodes[j] - nodes[k]) <= 1e-12) {
        throw InvalidInput("interpolation nodes must be pairwise distinct");
      }
    }
  }
}

double InterpolationProblem::max_target() const {
  double m = 0.0;
  for (Complex y : targets) m = std::max(m, std::abs(y));
  return m;
}

double min_node_separation(const InterpolationProblem& problem) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < problem.nodes.size(); ++j) {
    for (std::size_t k = j + 1; k < problem.nodes.size(); ++k) {
      best = std::min(best, pseudohyperbolic(problem.nodes[j], problem.nodes[k]));
    }
  }
  return best;
}

PickMatrix pick_matrix(const InterpolationProblem& problem, double level) {
  problem.validate();
  if (!(level > 0.0) || !std::isfinite(level)) throw InvalidInput("Pick level must be positive");
  if (problem.max_target() > level * (1.0 + 1e9)) {
    throw InvalidInput("Pick level is out of scale with the targets");
  }
  const std::size_t n = problem.size();
  const double mu2 = level * level;
  std::vector<double> gaps(n);
  std::vector<double> scale(n);
  for (std::size_t j = 0; j < n; ++j) {
    gaps[j] = one_minus_abs2(problem.nodes[j]);
    scale[j] = std::sqrt(gaps[j]);
  }

  PickMatrix pm;
  pm.level = level;
  pm.entries.resize(n, n);
  pm.normalized.resize(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex yj = problem.targets[j];
    pm.normalized(j, j) = mu2 - std::norm(yj);
    pm.entries(j, j) = pm.normalized(j, j) / gaps[j];
    for (std::size_t k = j + 1; k < n; ++k) {
      const Complex yk = problem.targets[k];
      const Complex kernel = one_minus_conj_mul(problem.nodes[k], gaps[k], problem.nodes[j]);
      const Complex raw = (mu2 - yj * std::conj(yk)) / kernel;
      pm.entries(j, k) = raw;
      pm.entries(k, j) = std::conj(raw);
      pm.normalized(j, k) = raw * (scale[j] * scale[k]);
      pm.normalized(k, j) = std::conj(pm.normalized(j, k));
    }
  }
  return pm;
}

PickTest pick_test(const InterpolationProblem& problem, double level) {
  const PickMatrix pm = pick_matrix(problem, level);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pm.normalized, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalBreakdown("Pick matrix eigensolve did not converge");
  }
  const auto& ev = solver.eigenvalues();
  PickTest t;
  t.min_eigenvalue = ev(0);
  t.norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  t.feasible = t.min_eigenvalue >= -1e-10 * t.norm;
  return t;
}

bool pick_feasible(const InterpolationProblem& problem, double level) {
  return pick_test(problem, level).feasible;
}

double minimal_level(const InterpolationProblem& problem) {
  problem.validate();
  double lo = problem.max_target();
  if (lo == 0.0) return 0.0;
  if (pick_feasible(problem, lo)) return lo;

  // Bisect on the sign of the smallest eigenvalue itself. The -1e-10 margin
  // of pick_feasible would pull the answer below the infimum by roughly
  // 1e-10 / (node separation)^2; the sign is accurate to eps * norm. The
  // returned level passes pick_feasible a fortiori.
  auto psd = [&](double mu) { return pick_test(problem, mu).min_eigenvalue >= 0.0; };
  double hi = 2.0 * lo;
  for (int it = 0; !psd(hi); ++it) {
    if (it > 200) throw NumericalBreakdown("no feasible Pick level found while doubling");
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (psd(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

SchurInterpolant::SchurInterpolant(double level, std::vector<Complex> nodes,
                                   std::vector<Complex> parameters)
    : level_(level), nodes_(std::move(nodes)), params_(std::move(parameters)) {
  if (nodes_.size() != params_.size() || nodes_.empty()) {
    throw InvalidInput("Schur interpolant needs one parameter per node");
  }
  factors_.reserve(nodes_.size());
  for (Complex x : nodes_) factors_.emplace_back(x);
}

Complex SchurInterpolant::operator()(Complex z) const {
  if (params_.empty()) return 0.0;
  Complex f = params_.back();
  for (std::size_t i = params_.size() - 1; i-- > 0;) {
    const Complex rf = factors_[i](z) * f;
    f = (params_[i] + rf) / (1.0 + std::conj(params_[i]) * rf);
  }
  return level_ * f;
}

RationalFunction SchurInterpolant::to_rational() const {
  if (params_.empty()) return RationalFunction::constant(0.0);
  std::vector<Complex> p{params_.back()};
  std::vector<Complex> q{1.0};
  for (std::size_t i = params_.size() - 1; i-- > 0;) {
    const Complex w = params_[i];
    const std::vector<Complex> r{-nodes_[i], 1.0};
    const std::vector<Complex> s{1.0, -std::conj(nodes_[i])};
    const auto sq = poly_mul(s, q);
    const auto rp = poly_mul(r, p);
    std::vector<Complex> np = sq;
    for (auto& c : np) c *= w;
    np = poly_add(np, rp);
    std::vector<Complex> nq = rp;
    for (auto& c : nq) c *= std::conj(w);
    nq = poly_add(sq, nq);
    p = std::move(np);
    q = std::move(nq);
  }
  for (auto& c : p) c *= level_;
  return RationalFunction::unchecked(std::move(p), std::move(q));
}

double InterpolantCertificate::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

InterpolantCertificate construct_interpolant(const InterpolationProblem& problem, double level) {
  const PickTest test = pick_test(problem, level);
  if (!(test.min_eigenvalue > 1e-12 * test.norm)) {
    std::ostringstream msg;
    msg << "level " << level << " is not strictly feasible (min eigenvalue "
        << test.min_eigenvalue << ")";
    throw NotStrictlyFeasible(msg.str());
  }

  const std::size_t n = problem.size();
  std::vector<Complex> current(n);
  for (std::size_t j = 0; j < n; ++j) current[j] = problem.targets[j] / level;

  std::vector<Complex> params(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex w = current[i];
    params[i] = w;
    if (i + 1 == n) {
      if (std::abs(w) > 1.0 + 1e-12) throw NumericalBreakdown("final Schur parameter exceeds 1");
      break;
    }
    const double w_gap = one_minus_abs2(w);
    if (!(w_gap > 0.0)) throw NumericalBreakdown("Schur parameter reached the unit circle");
    const MoebiusFactor r(problem.nodes[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      // 1 - conj(w) w_j written to keep precision when both are near T.
      const Complex denom = one_minus_conj_mul(w, w_gap, current[j]) * r(problem.nodes[j]);
      current[j] = (current[j] - w) / denom;
    }
  }

  InterpolantCertificate cert;
  cert.interpolant = SchurInterpolant(level, problem.nodes, params);
  cert.level = level;
  cert.residuals.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    cert.residuals[k] = std::abs(cert.interpolant(problem.nodes[k]) - problem.targets[k]);
  }
  if (cert.max_residual() > 1e-8 * (1.0 + problem.max_target())) {
    std::ostringstream msg;
    msg << "interpolant residual " << cert.max_residual() << " exceeds tolerance";
    throw NumericalBreakdown(msg.str());
  }

  const SchurInterpolant& h = cert.interpolant;
  cert.sup_norm = sup_norm_on_circle([&h](Complex z) { return h(z); }, problem.nodes).value;
  if (cert.sup_norm > level * (1.0 + 1e-6)) {
    std::ostringstream msg;
    msg << "interpolant sup-norm " << cert.sup_norm << " exceeds level " << level;
    throw NumericalBreakdown(msg.str());
  }

  const double sep = min_node_separation(problem);
  if (sep < 1e-6) {
    std::ostringstream msg;
    msg << "clustered nodes: pseudohyperbolic separation " << sep;
    cert.warnings.push_back(msg.str());
  }
  return cert;
}

}  // namespace tb
