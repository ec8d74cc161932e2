#include "toeplitz_bounds/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

namespace tb {

namespace {

constexpr double kPi = std::numbers::pi;

// 7-point Gauss-Legendre on [-1, 1]; the middle node is the panel midpoint.
constexpr std::array<double, 7> kNodes = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr std::array<double, 7> kWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

struct Panel {
  double a;
  double b;
  Complex whole;
  Complex left;
  Complex right;
  int depth;

  Complex value() const { return left + right; }
  double error() const { return std::abs(whole - (left + right)); }
  bool operator<(const Panel& other) const { return error() < other.error(); }
};

class PanelIntegrator {
 public:
  explicit PanelIntegrator(const std::function<Complex(double)>& g) : g_(g) {}

  Complex gauss(double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) sum += kWeights[i] * g_(c + h * kNodes[i]);
    evaluations_ += static_cast<long>(kNodes.size());
    return sum * h;
  }

  Panel make(double a, double b, Complex whole, int depth) {
    const double m = 0.5 * (a + b);
    return Panel{a, b, whole, gauss(a, m), gauss(m, b), depth};
  }

  long evaluations() const { return evaluations_; }

 private:
  const std::function<Complex(double)>& g_;
  long evaluations_ = 0;
};

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

std::vector<double> breakpoints(double a, double b, int base_panels,
                                std::span<const AngularFeature> features) {
  const int n0 = std::max(1, static_cast<int>(std::lround(base_panels * (b - a) / (2.0 * kPi))));
  const double h0 = (b - a) / n0;
  std::vector<double> pts;
  pts.reserve(n0 + 1 + 64 * features.size());
  for (int i = 0; i <= n0; ++i) pts.push_back(a + h0 * i);
  pts.back() = b;

  for (const auto& f : features) {
    const double w = std::max(f.width, 1e-15);
    for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
      const double c = f.angle + shift;
      if (c < a - h0 || c > b + h0) continue;
      if (c > a && c < b) pts.push_back(c);
      for (double d = w; d < h0; d *= 2.0) {
        if (c - d > a && c - d < b) pts.push_back(c - d);
        if (c + d > a && c + d < b) pts.push_back(c + d);
      }
    }
  }

  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts) {
    if (out.empty() ||
        p - out.back() > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(p))) {
      out.push_back(p);
    }
  }
  if (out.back() != b) out.back() = b;
  return out;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (base_panels < 64 || !is_power_of_two(base_panels)) {
    throw InvalidInput("quadrature base panel count must be a power of two >= 64");
  }
  if (max_depth < 0) throw InvalidInput("quadrature max depth must be nonnegative");
  if (!(abs_tol >= 1e-12)) throw InvalidInput("quadrature tolerance must be >= 1e-12");
  if (max_evaluations <= 0) throw InvalidInput("quadrature evaluation budget must be positive");
}

QuadratureSpec lambda_quadrature_spec() {
  QuadratureSpec spec;
  spec.abs_tol = 1e-8;
  return spec;
}

std::vector<AngularFeature> features_from_points(std::span<const Complex> points) {
  std::vector<AngularFeature> out;
  out.reserve(points.size());
  for (Complex p : points) {
    if (std::abs(p) == 0.0) continue;
    out.push_back({std::arg(p), std::max(1.0 - std::abs(p), 1e-15)});
  }
  return out;
}

QuadratureResult integrate_interval(const std::function<Complex(double)>& g, double a, double b,
                                    const QuadratureSpec& spec,
                                    std::span<const AngularFeature> features) {
  spec.validate();
  if (!(b > a)) throw InvalidInput("integration interval must have b > a");

  PanelIntegrator integ(g);
  const auto pts = breakpoints(a, b, spec.base_panels, features);

  std::priority_queue<Panel> open;
  std::vector<Panel> done;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Panel p = integ.make(pts[i], pts[i + 1], integ.gauss(pts[i], pts[i + 1]), 0);
    total_err += p.error();
    open.push(p);
  }

  auto recount = [&] {
    double e = 0.0;
    auto copy = open;
    while (!copy.empty()) {
      e += copy.top().error();
      copy.pop();
    }
    for (const auto& p : done) e += p.error();
    return e;
  };

  bool budget_exhausted = false;
  while (total_err > spec.abs_tol && !open.empty()) {
    if (integ.evaluations() > spec.max_evaluations) {
      budget_exhausted = true;
      break;
    }
    Panel worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool too_small = (worst.b - worst.a) <
                           8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid));
    if (worst.depth >= spec.max_depth || too_small) {
      done.push_back(worst);
      continue;
    }
    total_err -= worst.error();
    Panel l = integ.make(worst.a, mid, worst.left, worst.depth + 1);
    Panel r = integ.make(mid, worst.b, worst.right, worst.depth + 1);
    total_err += l.error() + r.error();
    open.push(l);
    open.push(r);
    if (total_err <= spec.abs_tol) total_err = recount();
  }

  QuadratureResult result;
  Complex sum = 0.0;
  Complex comp = 0.0;  // Kahan compensation
  auto add = [&](Complex v) {
    Complex y = v - comp;
    Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  double err = 0.0;
  double magnitude = 0.0;
  while (!open.empty()) {
    add(open.top().value());
    err += open.top().error();
    magnitude += std::abs(open.top().value());
    open.pop();
  }
  for (const auto& p : done) {
    add(p.value());
    err += p.error();
    magnitude += std::abs(p.value());
  }
  result.value = sum;
  // discretization estimate plus a floor for rounding in the panel rules
  result.error = err + 16.0 * std::numeric_limits<double>::epsilon() * magnitude;
  result.evaluations = integ.evaluations();

  if (err > spec.abs_tol) {
    std::ostringstream msg;
    msg << "quadrature tolerance " << spec.abs_tol << " not met (estimate " << err << ", "
        << (budget_exhausted ? "evaluation budget exhausted" : "depth limit reached") << ")";
    throw ToleranceNotMet(msg.str(), result);
  }
  return result;
}

QuadratureResult integrate_circle(const std::function<Complex(CirclePoint)>& f,
                                  const QuadratureSpec& spec,
                                  std::span<const AngularFeature> features) {
  QuadratureSpec scaled = spec;
  scaled.abs_tol = spec.abs_tol * 2.0 * kPi;
  auto g = [&f](double theta) { return f(CirclePoint::from_angle(theta)); };
  try {
    QuadratureResult r = integrate_interval(g, -kPi, kPi, scaled, features);
    r.value /= 2.0 * kPi;
    r.error /= 2.0 * kPi;
    return r;
  } catch (const ToleranceNotMet& e) {
    QuadratureResult best = e.best();
    best.value /= 2.0 * kPi;
    best.error /= 2.0 * kPi;
    throw ToleranceNotMet(e.what(), best);
  }
}

DiskFunction disk_function(const BlaschkeProduct& b) {
  return DiskFunction{[b](Complex z) { return b(z); }, b.zeros(), true};
}

DiskFunction disk_function(const MoebiusFactor& m) {
  return DiskFunction{[m](Complex z) { return m(z); }, {m.zero()}, true};
}

namespace {

// Continuous boundary phase of prod_k (zeta - a_k)/(1 - conj(a_k) zeta) at
// zeta = e^{i theta}. Each factor equals zeta conj(w)/w with
// w = 1 - conj(a) zeta, and Re w >= 1 - |a| > 0, so arg w needs no unwrapping.
double boundary_phase(std::span<const Complex> zeros, std::span<const double> gaps,
                      double theta) {
  const Complex zeta(std::cos(theta), std::sin(theta));
  double phase = 0.0;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    phase += theta - 2.0 * std::arg(one_minus_conj_mul(zeros[k], gaps[k], zeta));
  }
  return phase;
}

// Angles t in (0, pi) where B(e^{it} eta) = B(e^{-it} eta). The phase
// difference phi(t) has derivative sum_k P_k(e^{it} eta) + P_k(e^{-it} eta)
// > 0 (Poisson kernels) and runs from 0 to 2 pi n, so the coincidences are
// the n - 1 solutions of phi(t) = 2 pi k, found by bisection.
std::vector<double> coincidence_angles(std::span<const Complex> zeros, double eta_arg) {
  std::vector<double> gaps;
  for (Complex a : zeros) gaps.push_back(one_minus_abs2(a));
  auto phi = [&](double t) {
    return boundary_phase(zeros, gaps, eta_arg + t) - boundary_phase(zeros, gaps, eta_arg - t);
  };
  std::vector<double> out;
  for (std::size_t k = 1; k < zeros.size(); ++k) {
    const double target = 2.0 * kPi * static_cast<double>(k);
    double lo = 0.0;
    double hi = kPi;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (phi(mid) < target ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace

LambdaEstimate lambda_at_rotation(const DiskFunction& f, CirclePoint eta,
                                  const QuadratureSpec& spec) {
  const Complex e = eta.value();
  // The integrand is even in theta, so integrate over (0, pi) and double.
  auto g = [&f, e](double theta) -> Complex {
    const Complex zeta(std::cos(theta), std::sin(theta));
    const Complex diff = f.eval(zeta * e) - f.eval(std::conj(zeta) * e);
    return std::abs(diff) / (2.0 * std::sin(0.5 * theta));
  };

  std::vector<AngularFeature> features;
  const double eta_arg = eta.angle();
  for (Complex p : f.features) {
    if (std::abs(p) == 0.0) continue;
    const double phi = std::remainder(std::arg(p) - eta_arg, 2.0 * kPi);
    features.push_back({std::abs(phi), std::max(1.0 - std::abs(p), 1e-15)});
  }
  // |B(zeta eta) - B(conj(zeta) eta)| has a corner wherever the two values
  // coincide; a panel whose nodes straddle it can report a deceptively small
  // error, so the corners become breakpoints.
  if (f.inner) {
    for (double t : coincidence_angles(f.features, eta_arg)) features.push_back({t, kPi});
  }

  QuadratureSpec scaled = spec;
  scaled.abs_tol = spec.abs_tol * kPi;
  QuadratureResult r;
  try {
    r = integrate_interval(g, 0.0, kPi, scaled, features);
  } catch (const ToleranceNotMet& ex) {
    QuadratureResult best = ex.best();
    best.value /= kPi;
    best.error /= kPi;
    throw ToleranceNotMet(ex.what(), best);
  }
  return LambdaEstimate{r.value.real() / kPi, r.error / kPi, r.evaluations};
}

namespace {

struct RotationSearch {
  const DiskFunction& f;
  const QuadratureSpec& spec;
  LambdaResult best;
  long evaluations = 0;

  double eval(double theta) {
    const CirclePoint eta = CirclePoint::from_angle(theta);
    const LambdaEstimate est = lambda_at_rotation(f, eta, spec);
    evaluations += est.evaluations;
    if (est.value > best.value) {
      best.value = est.value;
      best.eta = eta;
      best.error = est.error;
    }
    return est.value;
  }

  // Golden-section maximization on [lo, hi].
  void refine(double lo, double hi, double min_width) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    for (int it = 0; it < 80 && hi - lo > min_width; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = eval(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = eval(x1);
      }
    }
  }
};

}  // namespace

LambdaResult lambda_functional(const DiskFunction& f, const QuadratureSpec& spec,
                               int rotation_grid) {
  if (rotation_grid < 64) throw InvalidInput("rotation grid must have at least 64 points");
  spec.validate();

  RotationSearch search{f, spec, LambdaResult{}, 0};
  search.best.value = -1.0;

  const double step = 2.0 * kPi / rotation_grid;
  std::vector<double> grid(rotation_grid);
  for (int j = 0; j < rotation_grid; ++j) grid[j] = search.eval(-kPi + step * j);

  // Refine around the three best local maxima of the grid.
  std::vector<int> peaks;
  for (int j = 0; j < rotation_grid; ++j) {
    const double prev = grid[(j + rotation_grid - 1) % rotation_grid];
    const double next = grid[(j + 1) % rotation_grid];
    if (grid[j] >= prev && grid[j] >= next) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return grid[x] > grid[y]; });
  if (peaks.size() > 3) peaks.resize(3);
  for (int j : peaks) {
    const double c = -kPi + step * j;
    search.refine(c - step, c + step, step * 1e-6);
  }

  // Near-boundary features produce peaks narrower than the grid spacing.
  for (Complex p : f.features) {
    if (std::abs(p) == 0.0) continue;
    const double c = std::arg(p);
    const double w = std::max(1.0 - std::abs(p), 1e-15);
    search.eval(c);
    const double half = std::min(step, 64.0 * w);
    search.refine(c - half, c + half, std::max(half * 1e-6, 1e-15));
  }

  LambdaResult result = search.best;
  result.value = std::max(result.value, 0.0);
  result.evaluations = search.evaluations;
  return result;
}

LambdaResult lambda_functional(const BlaschkeProduct& b, const QuadratureSpec& spec,
                               int rotation_grid) {
  return lambda_functional(disk_function(b), spec, rotation_grid);
}

}  // namespace tb
