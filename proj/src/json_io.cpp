#include "toeplitz_bounds/json_io.hpp"

#include <cmath>

#include "toeplitz_bounds/errors.hpp"

namespace tb {

namespace {

// JSON has no NaN; missing values are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidInput("expected a complex number as [re, im], got " + j.dump());
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json zeros_to_json(const std::vector<Complex>& zeros) {
  json out = json::array();
  for (Complex z : zeros) out.push_back(complex_to_json(z));
  return out;
}

std::vector<Complex> zeros_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected a JSON array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

std::vector<Complex> parse_zeros(const std::string& text) { return zeros_from_json(parse_json(text)); }

std::string write_zeros(const std::vector<Complex>& zeros) { return zeros_to_json(zeros).dump(); }

void to_json(json& j, const InterpolationProblem& p) {
  j = json{{"nodes", zeros_to_json(p.nodes)}, {"targets", zeros_to_json(p.targets)}};
}

void from_json(const json& j, InterpolationProblem& p) {
  try {
    p.nodes = zeros_from_json(j.at("nodes"));
    p.targets = zeros_from_json(j.at("targets"));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed interpolation problem: ") + e.what());
  }
}

void to_json(json& j, const SchurInterpolant& h) {
  const RationalFunction r = h.to_rational();
  j = json{{"level", h.level()},
           {"nodes", zeros_to_json(h.nodes())},
           {"parameters", zeros_to_json(h.parameters())},
           {"numerator", zeros_to_json(r.numerator())},
           {"denominator", zeros_to_json(r.denominator())}};
}

void from_json(const json& j, SchurInterpolant& h) {
  h = SchurInterpolant(j.at("level").get<double>(), zeros_from_json(j.at("nodes")),
                       zeros_from_json(j.at("parameters")));
}

void to_json(json& j, const InterpolantCertificate& c) {
  j = json{{"interpolant", c.interpolant}, {"level", c.level},
           {"residuals", c.residuals},     {"sup_norm", c.sup_norm},
           {"warnings", c.warnings}};
}

void from_json(const json& j, InterpolantCertificate& c) {
  c.interpolant = j.at("interpolant").get<SchurInterpolant>();
  c.level = j.at("level").get<double>();
  c.residuals = j.at("residuals").get<std::vector<double>>();
  c.sup_norm = j.at("sup_norm").get<double>();
  c.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(json& j, const RayConfiguration& c) {
  j = json{{"xi", complex_to_json(c.direction.value())},
           {"q", c.ratio},
           {"n", c.degree},
           {"m", c.probe_index},
           {"epsilon", c.inner_radius}};
}

void from_json(const json& j, RayConfiguration& c) {
  c.direction = CirclePoint(complex_from_json(j.at("xi")));
  c.ratio = j.at("q").get<double>();
  c.degree = j.at("n").get<int>();
  c.probe_index = j.at("m").get<int>();
  c.inner_radius = j.at("epsilon").get<double>();
  c.validate();
}

void to_json(json& j, const LowerBoundCertificate& c) {
  j = json{{"configuration", c.config},
           {"functional_value", complex_to_json(c.functional_value)},
           {"minimal_level", c.minimal_level},
           {"interpolant_norm", c.interpolant_norm},
           {"lower_bound", c.lower_bound},
           {"ideal_limit", c.ideal_limit},
           {"interpolant", c.interpolant},
           {"warnings", c.warnings}};
}

void from_json(const json& j, LowerBoundCertificate& c) {
  c.config = j.at("configuration").get<RayConfiguration>();
  c.functional_value = complex_from_json(j.at("functional_value"));
  c.minimal_level = j.at("minimal_level").get<double>();
  c.interpolant_norm = j.at("interpolant_norm").get<double>();
  c.lower_bound = j.at("lower_bound").get<double>();
  c.ideal_limit = j.at("ideal_limit").get<double>();
  c.interpolant = j.at("interpolant").get<InterpolantCertificate>();
  c.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(json& j, const LambdaResult& r) {
  j = json{{"value", r.value},
           {"eta", complex_to_json(r.eta.value())},
           {"error", r.error},
           {"evaluations", r.evaluations}};
}

void to_json(json& j, const NormBracket& b) {
  j = json{{"lower", b.lower},
           {"upper", b.upper},
           {"lower_source", b.lower_provenance ? "ray certificate" : "trivial: T_B B = 1"},
           {"upper_source", "1 + Lambda(B) + error"},
           {"lambda", b.upper_provenance.lambda}};
  if (b.lower_provenance) j["lower_certificate"] = *b.lower_provenance;
}

void to_json(json& j, const StudyTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row{{"configuration", r.config},
             {"status", to_string(r.status)},
             {"lower", number_or_null(r.lower)},
             {"upper", r.upper},
             {"ideal_limit", r.ideal_limit},
             {"interp_norm", number_or_null(r.interp_norm)},
             {"warnings", r.warnings}};
    if (r.certificate) row["certificate"] = *r.certificate;
    rows.push_back(std::move(row));
  }
  json uppers = json::array();
  for (const auto& u : t.uppers) uppers.push_back(json{{"value", u.value}, {"lambda", u.lambda}});
  j = json{{"rows", rows}, {"uppers", uppers}};
  if (t.best_row) {
    const auto& best = t.rows[*t.best_row];
    j["best"] = json{{"row", *t.best_row}, {"lower", best.lower}, {"upper", best.upper}};
  } else {
    j["best"] = nullptr;
  }
}

}  // namespace tb
