#include "toeplitz_bounds/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "toeplitz_bounds/errors.hpp"
#include "toeplitz_bounds/json_io.hpp"
#include "toeplitz_bounds/omega.hpp"
#include "toeplitz_bounds/pick.hpp"
#include "toeplitz_bounds/toeplitz.hpp"

namespace tb::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(const std::vector<Complex>& zeros) {
  // FNV-1a over the canonical JSON form.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : write_zeros(zeros)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::vector<Complex>> load_symbols(const RunConfig& cfg) {
  std::vector<std::vector<Complex>> symbols;
  for (const auto& text : cfg.zeros) symbols.push_back(parse_zeros(text));
  if (!cfg.zeros_file.empty()) {
    const json j = parse_json(read_file(cfg.zeros_file));
    // Either one zeros list or a list of them.
    if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array()) {
      for (const auto& s : j) symbols.push_back(zeros_from_json(s));
    } else {
      symbols.push_back(zeros_from_json(j));
    }
  }
  if (symbols.empty()) throw InvalidInput("no symbol given; use --zeros or --zeros-file");
  return symbols;
}

RationalFunction parse_rational(const std::string& text) {
  const json j = parse_json(text);
  if (j.is_number()) return RationalFunction::constant(j.get<double>());
  // ascending coefficients, each a real or an [re, im] pair
  if (j.is_array()) return RationalFunction::polynomial(zeros_from_json(j));
  if (j.is_object() && j.contains("num")) {
    std::vector<Complex> den{1.0};
    if (j.contains("den")) den = zeros_from_json(j.at("den"));
    return RationalFunction(zeros_from_json(j.at("num")), den);
  }
  throw InvalidInput("--h must be a number, a coefficient list, or {\"num\": [...], \"den\": [...]}");
}

QuadratureSpec integral_spec(const RunConfig& cfg) {
  QuadratureSpec s;
  s.base_panels = cfg.base_panels;
  s.abs_tol = cfg.tol;
  s.max_evaluations = cfg.max_evaluations;
  s.validate();
  return s;
}

QuadratureSpec lambda_spec(const RunConfig& cfg) {
  QuadratureSpec s = lambda_quadrature_spec();
  s.base_panels = cfg.base_panels;
  s.abs_tol = cfg.lambda_tol;
  s.max_evaluations = cfg.max_evaluations;
  s.validate();
  return s;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidInput("cannot write " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::optional<double> epsilon_option(const RunConfig& cfg) {
  if (cfg.epsilon > 0.0) return cfg.epsilon;
  return std::nullopt;
}

void run_lambda(const RunConfig& cfg, std::ostream& out) {
  const auto spec = lambda_spec(cfg);
  const auto symbols = load_symbols(cfg);
  std::vector<BlaschkeProduct> products(symbols.begin(), symbols.end());
  std::vector<LambdaResult> results;
  for (const auto& b : products) results.push_back(lambda_functional(b, spec, cfg.rotation_grid));

  Output o(cfg.out, out);
  if (cfg.format == OutputFormat::csv) {
    *o << "degree,zeros_digest,lambda,eta_argmax,error\n";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      const LambdaResult& r = results[i];
      *o << products[i].degree() << ',' << digest(symbols[i]) << ',' << format_double(r.value)
         << ',' << format_double(r.eta.angle()) << ',' << format_double(r.error) << '\n';
    }
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      json row = results[i];
      row["degree"] = products[i].degree();
      row["zeros"] = zeros_to_json(symbols[i]);
      row["zeros_digest"] = digest(symbols[i]);
      rows.push_back(std::move(row));
    }
    *o << rows.dump(2) << '\n';
  }
}

void run_apply(const RunConfig& cfg, std::ostream& out) {
  const auto symbols = load_symbols(cfg);
  if (symbols.size() != 1) throw InvalidInput("apply takes exactly one symbol");
  const BlaschkeProduct b(symbols.front());
  const RationalFunction h = parse_rational(cfg.h);
  const UnitDiskPoint z(parse_complex(cfg.z));
  if (cfg.method != "residue" && cfg.method != "contour" && cfg.method != "both") {
    throw InvalidInput("--method must be residue, contour or both");
  }

  Output o(cfg.out, out);
  json rows = json::array();
  if (cfg.format == OutputFormat::csv) *o << "method,value_re,value_im,error\n";
  auto emit = [&](const char* method, Complex v, double err) {
    if (cfg.format == OutputFormat::csv) {
      *o << method << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
         << format_double(err) << '\n';
    } else {
      rows.push_back(json{{"method", method}, {"value", complex_to_json(v)}, {"error", err}});
    }
  };
  if (cfg.method != "contour") emit("residue", apply_toeplitz_residue(b, h, z), 0.0);
  if (cfg.method != "residue") {
    const QuadratureResult r = apply_toeplitz_contour(b, h, z, integral_spec(cfg));
    emit("contour", r.value, r.error);
  }
  if (cfg.format == OutputFormat::json) *o << rows.dump(2) << '\n';
}

void run_pick(const RunConfig& cfg, std::ostream& out) {
  InterpolationProblem problem;
  if (!cfg.problem_file.empty()) {
    problem = parse_json(read_file(cfg.problem_file)).get<InterpolationProblem>();
  } else if (!cfg.nodes.empty() && !cfg.targets.empty()) {
    problem.nodes = parse_zeros(cfg.nodes);
    problem.targets = parse_zeros(cfg.targets);
  } else {
    throw InvalidInput("pick needs --problem or both --nodes and --targets");
  }
  problem.validate();

  const double mu = minimal_level(problem);
  std::optional<InterpolantCertificate> cert;
  if (cfg.construct) cert = construct_interpolant(problem, mu * (1.0 + 1e-6));

  Output o(cfg.out, out);
  if (cfg.format == OutputFormat::csv) {
    *o << "nodes,minimal_level,level,max_residual,sup_norm,warnings\n";
    *o << problem.size() << ',' << format_double(mu);
    if (cert) {
      std::string warnings;
      for (const auto& w : cert->warnings) warnings += (warnings.empty() ? "" : ";") + w;
      *o << ',' << format_double(cert->level) << ',' << format_double(cert->max_residual()) << ','
         << format_double(cert->sup_norm) << ',' << warnings;
    } else {
      *o << ",,,,";
    }
    *o << '\n';
  } else {
    json j{{"problem", problem}, {"minimal_level", mu}};
    if (cert) j["certificate"] = *cert;
    *o << j.dump(2) << '\n';
  }
}

void run_bracket(const RunConfig& cfg, std::ostream& out) {
  BracketOptions options;
  options.m_offsets = cfg.m_offsets;
  options.lambda_spec = lambda_spec(cfg);
  options.rotation_grid = cfg.rotation_grid;

  BlaschkeProduct b;
  std::optional<RayConfiguration> config;
  if (!cfg.zeros.empty() || !cfg.zeros_file.empty()) {
    const auto symbols = load_symbols(cfg);
    if (symbols.size() != 1) throw InvalidInput("bracket takes exactly one symbol");
    b = BlaschkeProduct(symbols.front());
  } else {
    if (cfg.q.size() != 1) throw InvalidInput("bracket takes a single --q value");
    config = make_ray_configuration(CirclePoint(parse_complex(cfg.xi)), cfg.q.front(), cfg.n,
                                    cfg.n + 1, epsilon_option(cfg));
    b = BlaschkeProduct(config->zeros());
  }

  const NormBracket bracket = bracket_norm(b, config, options);
  double direct = std::numeric_limits<double>::quiet_NaN();
  if (cfg.direct) {
    const Complex probe =
        bracket.lower_provenance ? bracket.lower_provenance->config.probe() : parse_complex(cfg.z);
    direct = direct_norm_estimate(b, UnitDiskPoint(probe), cfg.restarts, cfg.seed);
  }

  Output o(cfg.out, out);
  if (cfg.format == OutputFormat::csv) {
    *o << "degree,lower,upper,lower_source,lambda,lambda_error,direct_estimate\n";
    *o << b.degree() << ',' << format_double(bracket.lower) << ',' << format_double(bracket.upper)
       << ',' << (bracket.lower_provenance ? "ray_certificate" : "trivial") << ','
       << format_double(bracket.upper_provenance.lambda.value) << ','
       << format_double(bracket.upper_provenance.lambda.error) << ',' << format_double(direct)
       << '\n';
  } else {
    json j = bracket;
    if (cfg.direct) j["direct_estimate"] = direct;
    *o << j.dump(2) << '\n';
  }
}

void run_study(const RunConfig& cfg, std::ostream& out) {
  StudyOptions options;
  options.degree = cfg.n;
  options.direction = CirclePoint(parse_complex(cfg.xi));
  options.q_schedule = cfg.q;
  options.m_offsets = cfg.m_offsets;
  options.lambda_spec = lambda_spec(cfg);
  options.rotation_grid = cfg.rotation_grid;
  options.threads = cfg.threads;
  const StudyTable table = omega_convergence_study(options);

  {
    Output o(cfg.out, out);
    if (cfg.format == OutputFormat::csv) {
      *o << study_csv(table);
    } else {
      *o << json(table).dump(2) << '\n';
    }
  }
  if (!cfg.out.empty()) {
    if (table.best_row) {
      const auto& best = table.rows[*table.best_row];
      out << "best bracket: [" << format_double(best.lower) << ", " << format_double(best.upper)
          << "] at q=" << format_double(best.config.ratio) << " m=" << best.config.probe_index
          << " (exact value " << 1 + 2 * cfg.n << ")\n";
    } else {
      out << "no row produced a certified lower bound\n";
    }
  }
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::stringstream ss(text);
  std::string re_s;
  std::string im_s;
  std::getline(ss, re_s, ',');
  std::getline(ss, im_s);
  try {
    std::size_t used = 0;
    const double re = std::stod(re_s, &used);
    if (used != re_s.size()) throw std::invalid_argument(re_s);
    double im = 0.0;
    if (!im_s.empty()) {
      im = std::stod(im_s, &used);
      if (used != im_s.size()) throw std::invalid_argument(im_s);
    }
    return Complex(re, im);
  } catch (const std::logic_error&) {
    throw InvalidInput("cannot parse complex number '" + text + "' (expected re,im)");
  }
}

void RunConfig::validate() const {
  if (!(tol > 0.0) || !(lambda_tol > 0.0)) throw InvalidInput("tolerances must be positive");
  if (q.empty() || m_offsets.empty()) throw InvalidInput("schedules must be nonempty");
  if (rotation_grid < 64) throw InvalidInput("rotation grid must be at least 64");
  if (restarts < 1) throw InvalidInput("restarts must be positive");
  if (threads < 0) throw InvalidInput("thread count must be nonnegative");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.command) {
      case Command::lambda:
        run_lambda(config, out);
        break;
      case Command::apply:
        run_apply(config, out);
        break;
      case Command::pick:
        run_pick(config, out);
        break;
      case Command::bracket:
        run_bracket(config, out);
        break;
      case Command::omega_study:
        run_study(config, out);
        break;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.numeric() ? 1 : 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds for norms of Toeplitz operators on H-infinity with "
               "finite Blaschke product symbols"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";

  auto add_symbol = [&](CLI::App* sub) {
    sub->add_option("--zeros", cfg.zeros, "zeros as a JSON array of [re, im] pairs (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("--zeros-file", cfg.zeros_file, "JSON file with one zeros list or a list of them");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized steps");
    sub->add_option("--tol", cfg.tol, "absolute tolerance for integrals");
    sub->add_option("--lambda-tol", cfg.lambda_tol, "absolute tolerance for Lambda");
    sub->add_option("--panels", cfg.base_panels, "base panel count (power of two >= 64)");
    sub->add_option("--rotations", cfg.rotation_grid, "rotation grid size for Lambda");
    sub->add_option("--max-evaluations", cfg.max_evaluations, "evaluation budget per integral");
  };
  auto add_ray = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "degree of the symbol");
    sub->add_option("--xi", cfg.xi, "ray direction as re,im");
    sub->add_option("--q", cfg.q, "ratio schedule, comma separated")->delimiter(',');
    sub->add_option("--m-offsets", cfg.m_offsets, "probe offsets m - n, comma separated")
        ->delimiter(',');
    sub->add_option("--epsilon", cfg.epsilon, "inner radius floor (default (1-q)/2)");
  };

  auto* lambda = app.add_subcommand("lambda", "Lambda functional of Blaschke products");
  add_symbol(lambda);
  add_common(lambda);

  auto* apply = app.add_subcommand("apply", "apply T_B to a rational function at a point");
  add_symbol(apply);
  add_common(apply);
  apply->set_help_flag("--help", "print this help and exit");
  apply->add_option("--h", cfg.h, "test function: number, coefficient list, or {num, den}");
  apply->add_option("--z", cfg.z, "evaluation point as re,im");
  apply->add_option("--method", cfg.method, "residue, contour or both");

  auto* pick = app.add_subcommand("pick", "minimal-norm Nevanlinna-Pick interpolation");
  add_common(pick);
  pick->add_option("--problem", cfg.problem_file, "JSON file with nodes and targets");
  pick->add_option("--nodes", cfg.nodes, "nodes as a JSON array of [re, im] pairs");
  pick->add_option("--targets", cfg.targets, "targets as a JSON array of [re, im] pairs");
  pick->add_flag("--construct", cfg.construct, "also build and certify the interpolant");

  auto* bracket = app.add_subcommand("bracket", "certified [lower, upper] bracket for ||T_B||");
  add_symbol(bracket);
  add_common(bracket);
  add_ray(bracket);
  bracket->add_flag("--direct", cfg.direct, "add a multistart direct estimate");
  bracket->add_option("--restarts", cfg.restarts, "multistart count for --direct");
  bracket->add_option("--z", cfg.z, "probe for --direct when no ray is given");

  auto* study = app.add_subcommand("omega-study", "convergence study toward 1 + 2n");
  add_common(study);
  add_ray(study);
  study->add_option("--threads", cfg.threads, "worker threads (default TOEPLITZ_BOUNDS_THREADS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (lambda->parsed()) cfg.command = Command::lambda;
  if (apply->parsed()) cfg.command = Command::apply;
  if (pick->parsed()) cfg.command = Command::pick;
  if (bracket->parsed()) cfg.command = Command::bracket;
  if (study->parsed()) cfg.command = Command::omega_study;
  return run(cfg, out, err);
}

}  // namespace tb::cli
