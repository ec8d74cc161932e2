#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toeplitz_bounds/disk.hpp"

namespace tb::cli {

enum class Command { lambda, apply, pick, bracket, omega_study };
enum class OutputFormat { csv, json };

struct RunConfig {
  Command command = Command::lambda;

  // symbol: inline JSON zeros (one symbol per entry) or a JSON file
  std::vector<std::string> zeros;
  std::string zeros_file;

  // apply
  std::string h = "1";
  std::string z = "0,0";
  std::string method = "both";

  // pick
  std::string problem_file;
  std::string nodes;
  std::string targets;
  bool construct = false;

  // ray configurations
  int n = 1;
  std::string xi = "1,0";
  std::vector<double> q{0.3, 0.2, 0.1, 0.05};
  std::vector<int> m_offsets{2, 4, 8, 16};
  double epsilon = 0.0;  // 0: (1 - q)/2

  // numerics
  double tol = 1e-9;
  double lambda_tol = 1e-8;
  int base_panels = 64;
  long max_evaluations = 4'000'000;  // per integral
  int rotation_grid = 256;
  bool direct = false;
  int restarts = 32;

  std::string out;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 1;
  int threads = 0;

  void validate() const;
};

/// "re,im" or "re"; throws InvalidInput.
Complex parse_complex(const std::string& text);

/// Runs one command. Exit status: 0 success, 1 numerical failure,
/// 2 invalid input. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tb::cli
