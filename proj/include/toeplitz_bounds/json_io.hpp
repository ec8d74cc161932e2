#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toeplitz_bounds/omega.hpp"
#include "toeplitz_bounds/pick.hpp"

namespace tb {

using json = nlohmann::json;

/// Complex numbers travel as [re, im] pairs; a bare number is accepted
/// on input as a real value.
json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json zeros_to_json(const std::vector<Complex>& zeros);
std::vector<Complex> zeros_from_json(const json& j);
/// Parses a JSON array of [re, im] pairs; throws InvalidInput.
std::vector<Complex> parse_zeros(const std::string& text);
std::string write_zeros(const std::vector<Complex>& zeros);

void to_json(json& j, const InterpolationProblem& p);
void from_json(const json& j, InterpolationProblem& p);

void to_json(json& j, const SchurInterpolant& h);
void from_json(const json& j, SchurInterpolant& h);

void to_json(json& j, const InterpolantCertificate& c);
void from_json(const json& j, InterpolantCertificate& c);

void to_json(json& j, const RayConfiguration& c);
void from_json(const json& j, RayConfiguration& c);

void to_json(json& j, const LowerBoundCertificate& c);
void from_json(const json& j, LowerBoundCertificate& c);

void to_json(json& j, const LambdaResult& r);
void to_json(json& j, const NormBracket& b);
void to_json(json& j, const StudyTable& t);

/// Parses JSON text, mapping syntax errors to InvalidInput.
json parse_json(const std::string& text);

}  // namespace tb
