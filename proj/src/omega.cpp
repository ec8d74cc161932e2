#include "toeplitz_bounds/omega.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "toeplitz_bounds/errors.hpp"

namespace tb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int default_thread_count() {
  if (const char* env = std::getenv("TOEPLITZ_BOUNDS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void RayConfiguration::validate() const {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidConfiguration("ratio q must lie in (0, 1)");
  if (degree < 1) throw InvalidConfiguration("degree n must be at least 1");
  if (probe_index <= degree) throw InvalidConfiguration("probe index m must exceed n");
  if (!(inner_radius > 0.0 && inner_radius < 1.0 - ratio)) {
    throw InvalidConfiguration("inner radius epsilon must lie in (0, 1 - q)");
  }
}

Complex RayConfiguration::point(int k) const {
  return (1.0 - std::pow(ratio, k)) * direction.value();
}

std::vector<Complex> RayConfiguration::zeros() const {
  std::vector<Complex> out;
  out.reserve(degree);
  for (int k = 1; k <= degree; ++k) out.push_back(point(k));
  return out;
}

double RayConfiguration::probe_gap() const { return 1.0 - std::abs(probe()); }

bool RayConfiguration::operator==(const RayConfiguration& o) const {
  return direction.value() == o.direction.value() && ratio == o.ratio && degree == o.degree &&
         probe_index == o.probe_index && inner_radius == o.inner_radius;
}

RayConfiguration make_ray_configuration(CirclePoint xi, double q, int n, int m,
                                        std::optional<double> inner_radius) {
  RayConfiguration c;
  c.direction = xi;
  c.ratio = q;
  c.degree = n;
  c.probe_index = m;
  c.inner_radius = inner_radius.value_or(0.5 * (1.0 - q));
  c.validate();
  return c;
}

RayInstance build_configuration(const RayConfiguration& config) {
  config.validate();
  RayInstance inst;
  inst.config = config;
  const auto zeros = config.zeros();
  inst.symbol = BlaschkeProduct(zeros);
  const Complex xi = config.direction.value();
  const Complex xm = config.probe();
  if (!(one_minus_abs2(xm) > 0.0)) {
    throw ConditioningGuard("probe x_m rounds onto the unit circle");
  }

  inst.problem.nodes = zeros;
  inst.problem.nodes.push_back(xm);
  for (Complex x : zeros) {
    inst.problem.targets.push_back(-inst.symbol.derivative(x) * one_minus_abs2(x) * xi);
  }
  inst.problem.targets.push_back(inst.symbol(xm));
  for (Complex y : inst.problem.targets) {
    if (std::abs(y) > 1.0 + 1e-10) {
      throw NumericalBreakdown("interpolation target exceeds the Schwarz-Pick bound");
    }
  }
  return inst;
}

double ideal_limit(int n, double q) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k <= n; ++k) {
    power *= q;
    sum += power;
  }
  return 1.0 + 2.0 * n - sum;
}

double functional_closed_form(const RayConfiguration& config) {
  const double rm = std::abs(config.probe());
  double v = 1.0;
  for (Complex x : config.zeros()) v += one_minus_abs2(x) / (rm - std::abs(x));
  return v;
}

LowerBoundCertificate certify_lower_bound(const RayConfiguration& config, double slack) {
  if (config.probe_gap() < kBoundaryGuard) {
    std::ostringstream msg;
    msg << "guard:boundary 1-|x_m|=" << config.probe_gap();
    throw ConditioningGuard(msg.str());
  }
  const RayInstance inst = build_configuration(config);

  LowerBoundCertificate cert;
  cert.config = config;
  cert.ideal_limit = ideal_limit(config.degree, config.ratio);
  cert.minimal_level = minimal_level(inst.problem);
  cert.interpolant = construct_interpolant(inst.problem, cert.minimal_level * (1.0 + slack));
  cert.warnings = cert.interpolant.warnings;

  const SchurInterpolant& h = cert.interpolant.interpolant;
  cert.functional_value = apply_toeplitz_residue(
      inst.symbol, [&h](Complex z) { return h(z); }, UnitDiskPoint(config.probe()));
  cert.interpolant_norm = cert.interpolant.sup_norm;
  cert.lower_bound = std::abs(cert.functional_value) / cert.interpolant_norm;
  if (!(cert.lower_bound > 0.0) || !std::isfinite(cert.lower_bound)) {
    throw NumericalBreakdown("certified lower bound is not a positive number");
  }
  return cert;
}

NormBracket bracket_norm(const BlaschkeProduct& b, const std::optional<RayConfiguration>& config,
                         const BracketOptions& options) {
  NormBracket bracket;
  bracket.upper_provenance = lemma1_upper_bound(b, options.lambda_spec, options.rotation_grid);
  bracket.upper = bracket.upper_provenance.value;
  bracket.lower = 1.0;

  if (config) {
    const auto zeros = config->zeros();
    const auto given = b.zeros();
    bool same = zeros.size() == given.size();
    for (std::size_t k = 0; same && k < zeros.size(); ++k) {
      same = std::abs(zeros[k] - given[k]) <= 1e-15;
    }
    if (!same) throw InvalidInput("symbol does not match the ray configuration");

    for (int offset : options.m_offsets) {
      RayConfiguration c = *config;
      c.probe_index = config->degree + offset;
      try {
        LowerBoundCertificate cert = certify_lower_bound(c);
        if (cert.lower_bound > bracket.lower) {
          bracket.lower = cert.lower_bound;
          bracket.lower_provenance = std::move(cert);
        }
      } catch (const NumericalBreakdown&) {
        // guarded or ill-conditioned probe; other offsets may still certify
      }
    }
  }

  if (bracket.lower > bracket.upper + 1e-6) {
    std::ostringstream msg;
    msg << "inverted bracket [" << bracket.lower << ", " << bracket.upper << "]";
    throw NumericalBreakdown(msg.str());
  }
  return bracket;
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok:
      return "ok";
    case RowStatus::guarded:
      return "guarded";
    case RowStatus::failed:
      return "failed";
  }
  return "unknown";
}

StudyTable omega_convergence_study(const StudyOptions& options) {
  if (options.q_schedule.empty() || options.m_offsets.empty()) {
    throw InvalidInput("study schedules must be nonempty");
  }
  for (int off : options.m_offsets) {
    if (off < 1) throw InvalidInput("probe offsets must be positive");
  }
  const int threads = options.threads > 0 ? options.threads : default_thread_count();

  std::vector<RayConfiguration> bases;
  for (double q : options.q_schedule) {
    bases.push_back(
        make_ray_configuration(options.direction, q, options.degree, options.degree + 1));
  }

  StudyTable table;
  table.uppers.resize(bases.size());
  parallel_for(bases.size(), threads, [&](std::size_t i) {
    table.uppers[i] = lemma1_upper_bound(BlaschkeProduct(bases[i].zeros()), options.lambda_spec,
                                         options.rotation_grid);
  });

  const std::size_t per_q = options.m_offsets.size();
  table.rows.resize(bases.size() * per_q);
  parallel_for(table.rows.size(), threads, [&](std::size_t idx) {
    const std::size_t qi = idx / per_q;
    StudyRow& row = table.rows[idx];
    row.config = bases[qi];
    row.config.probe_index = options.degree + options.m_offsets[idx % per_q];
    row.upper = table.uppers[qi].value;
    row.ideal_limit = ideal_limit(options.degree, row.config.ratio);
    row.lower = kNaN;
    row.interp_norm = kNaN;
    try {
      LowerBoundCertificate cert = certify_lower_bound(row.config);
      row.lower = cert.lower_bound;
      row.interp_norm = cert.interpolant_norm;
      row.warnings = cert.warnings;
      row.certificate = std::move(cert);
      row.status = RowStatus::ok;
      if (row.lower > row.upper + 1e-6) {
        row.status = RowStatus::failed;
        row.warnings.push_back("inverted bracket");
      }
    } catch (const ConditioningGuard& e) {
      row.status = RowStatus::guarded;
      row.warnings.push_back(e.what());
    } catch (const Error& e) {
      row.status = RowStatus::failed;
      row.warnings.push_back(std::string("failed: ") + e.what());
    }
  });

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (r.status != RowStatus::ok) continue;
    if (!table.best_row || r.lower > table.rows[*table.best_row].lower) table.best_row = i;
  }
  return table;
}

std::string study_csv(const StudyTable& table) {
  std::ostringstream out;
  out << "n,xi_re,xi_im,q,m,lower,upper,ideal_limit,interp_norm,warnings\n";
  for (const auto& r : table.rows) {
    std::string warnings;
    for (const auto& w : r.warnings) {
      if (!warnings.empty()) warnings += ';';
      warnings += w;
    }
    const Complex xi = r.config.direction.value();
    out << r.config.degree << ',' << format_double(xi.real()) << ',' << format_double(xi.imag())
        << ',' << format_double(r.config.ratio) << ',' << r.config.probe_index << ','
        << format_double(r.lower) << ',' << format_double(r.upper) << ','
        << format_double(r.ideal_limit) << ',' << format_double(r.interp_norm) << ','
        << csv_field(warnings) << '\n';
  }
  return out.str();
}

namespace {

// Hyperbolic parametrization u in R^2 -> tanh(|u|) u/|u| in D.
constexpr double kMaxHyperbolicRadius = 18.0;

Complex disk_from_params(double ux, double uy) {
  const double r = std::hypot(ux, uy);
  if (r == 0.0) return 0.0;
  return std::tanh(std::min(r, kMaxHyperbolicRadius)) * Complex(ux / r, uy / r);
}

void params_from_disk(Complex c, double* out) {
  const double r = std::abs(c);
  if (r == 0.0) {
    out[0] = out[1] = 0.0;
    return;
  }
  const double h = std::min(std::atanh(std::min(r, 1.0 - 1e-15)), kMaxHyperbolicRadius);
  out[0] = h * c.real() / r;
  out[1] = h * c.imag() / r;
}

struct DirectProblem {
  const BlaschkeProduct* symbol;
  Complex z;
};

double functional_modulus(const BlaschkeProduct& symbol, Complex z, const BlaschkeProduct& b) {
  return std::abs(apply_toeplitz_residue(symbol, [&b](Complex w) { return b(w); },
                                         UnitDiskPoint(z)));
}

double negative_objective(const gsl_vector* x, void* data) {
  const auto* p = static_cast<const DirectProblem*>(data);
  const std::size_t k = x->size / 2;
  std::vector<Complex> zeros(k);
  for (std::size_t j = 0; j < k; ++j) {
    zeros[j] = disk_from_params(gsl_vector_get(x, 2 * j), gsl_vector_get(x, 2 * j + 1));
  }
  try {
    return -functional_modulus(*p->symbol, p->z, BlaschkeProduct(zeros));
  } catch (const Error&) {
    return 0.0;
  }
}

// Uniform double in [0, 1) from the raw engine output; identical on every
// platform, unlike the standard distributions.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex hyperbolic_midpoint(Complex p, Complex q) {
  const MoebiusFactor to_origin(p);
  const Complex w = to_origin(q);
  const double rho = std::abs(w);
  if (rho == 0.0) return p;
  const double s = rho / (1.0 + std::sqrt(std::max(0.0, one_minus_abs2(w))));
  const Complex m = s * w / rho;
  return (m + p) / (1.0 + std::conj(p) * m);
}

}  // namespace

double direct_norm_estimate(const BlaschkeProduct& b, UnitDiskPoint z_point, int restarts,
                            std::uint64_t seed) {
  const Complex z = z_point.value();
  if (!b.has_distinct_zeros(1e-12)) throw RepeatedZero("direct estimate needs distinct zeros");

  // Candidates in the closure of the search set: constants and B itself.
  double best = functional_modulus(b, z, BlaschkeProduct());
  best = std::max(best, functional_modulus(b, z, b));

  std::vector<Complex> anchors = b.zeros();
  anchors.push_back(z);
  const std::size_t k = b.degree() + 1;
  const std::size_t dim = 2 * k;

  std::mt19937_64 rng(seed);
  DirectProblem problem{&b, z};
  gsl_multimin_function fn;
  fn.n = dim;
  fn.f = &negative_objective;
  fn.params = &problem;

  gsl_set_error_handler_off();
  gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);
  gsl_vector_set_all(step, 0.4);

  for (int r = 0; r < restarts; ++r) {
    for (std::size_t j = 0; j < k; ++j) {
      const Complex a = anchors[static_cast<std::size_t>(uniform01(rng) * anchors.size())];
      Complex c;
      if (uniform01(rng) < 0.5) {
        const Complex a2 = anchors[static_cast<std::size_t>(uniform01(rng) * anchors.size())];
        c = hyperbolic_midpoint(a, a2);
      } else {
        const double rad = 0.6 * uniform01(rng);
        const double ang = 2.0 * M_PI * uniform01(rng);
        const Complex d = std::polar(rad, ang);
        c = (d + a) / (1.0 + std::conj(a) * d);
      }
      double uv[2];
      params_from_disk(c, uv);
      gsl_vector_set(x, 2 * j, uv[0]);
      gsl_vector_set(x, 2 * j + 1, uv[1]);
    }
    gsl_multimin_fminimizer_set(solver, &fn, x, step);
    for (int it = 0; it < 4000; ++it) {
      if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), 1e-10) == GSL_SUCCESS) break;
    }
    best = std::max(best, -gsl_multimin_fminimizer_minimum(solver));
  }

  gsl_vector_free(step);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(solver);
  return best;
}

}  // namespace tb
