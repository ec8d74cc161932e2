#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toeplitz_bounds/disk.hpp"
#include "toeplitz_bounds/pick.hpp"
#include "toeplitz_bounds/quadrature.hpp"
#include "toeplitz_bounds/toeplitz.hpp"

namespace tb {

/// Probes with 1 - |x_m| below this are not representable with useful
/// relative precision; such rows are guarded.
inline constexpr double kBoundaryGuard = 1e-14;

/// Zeros x_k = (1 - q^k) xi, k = 1..n, and probe x_m, all on the ray E_xi.
struct RayConfiguration {
  CirclePoint direction = CirclePoint::from_angle(0.0);
  double ratio = 0.1;      // q in (0, 1)
  int degree = 1;          // n >= 1
  int probe_index = 2;     // m > n
  double inner_radius = 0.45;  // epsilon in (0, 1 - q)

  void validate() const;
  Complex point(int k) const;
  std::vector<Complex> zeros() const;
  Complex probe() const { return point(probe_index); }
  /// 1 - |x_m|.
  double probe_gap() const;

  bool operator==(const RayConfiguration& other) const;
};

/// epsilon defaults to (1 - q)/2.
RayConfiguration make_ray_configuration(CirclePoint xi, double q, int n, int m,
                                        std::optional<double> inner_radius = std::nullopt);

struct RayInstance {
  RayConfiguration config;
  BlaschkeProduct symbol;
  /// Nodes x_1..x_n, x_m; targets y_k = B'(x_k)(|x_k|^2 - 1) xi, y_m = B(x_m).
  InterpolationProblem problem;
};

RayInstance build_configuration(const RayConfiguration& config);

/// 1 + 2n - sum_{k=1..n} q^k.
double ideal_limit(int n, double q);

/// 1 + sum_k (|x_k|^2 - 1) / (|x_k| - |x_m|): the functional value once the
/// interpolation conditions hold exactly.
double functional_closed_form(const RayConfiguration& config);

struct LowerBoundCertificate {
  RayConfiguration config;
  Complex functional_value;    // (T_B h_0)(x_m)
  double minimal_level = 0.0;  // infimal Pick level
  double interpolant_norm = 0.0;
  double lower_bound = 0.0;    // |V| / interpolant_norm
  double ideal_limit = 0.0;
  InterpolantCertificate interpolant;
  std::vector<std::string> warnings;

  bool operator==(const LowerBoundCertificate&) const = default;
};

/// |T_B h_0 (x_m)| / ||h_0||_inf <= ||T_B||, with h_0 the Schur interpolant
/// at level minimal_level * (1 + slack) and its sup-norm measured on T.
LowerBoundCertificate certify_lower_bound(const RayConfiguration& config, double slack = 1e-6);

struct NormBracket {
  double lower = 1.0;
  double upper = 1.0;
  /// Empty when the lower side is the trivial bound ||T_B|| >= |T_B B| = 1.
  std::optional<LowerBoundCertificate> lower_provenance;
  UpperBound upper_provenance;
};

struct BracketOptions {
  std::vector<int> m_offsets{2, 4, 8, 16};
  QuadratureSpec lambda_spec = lambda_quadrature_spec();
  int rotation_grid = 256;
};

/// Lower side: best certificate over probe indices n + offset (when a ray
/// configuration generating b is supplied). Upper side: 1 + Lambda(b).
NormBracket bracket_norm(const BlaschkeProduct& b, const std::optional<RayConfiguration>& config,
                         const BracketOptions& options = {});

enum class RowStatus { ok, guarded, failed };

std::string to_string(RowStatus s);

struct StudyRow {
  RayConfiguration config;
  double lower = 0.0;        // NaN unless status == ok
  double upper = 0.0;
  double ideal_limit = 0.0;
  double interp_norm = 0.0;  // NaN unless status == ok
  RowStatus status = RowStatus::ok;
  std::vector<std::string> warnings;
  std::optional<LowerBoundCertificate> certificate;
};

struct StudyOptions {
  int degree = 1;
  CirclePoint direction = CirclePoint::from_angle(0.0);
  std::vector<double> q_schedule{0.3, 0.2, 0.1, 0.05};
  std::vector<int> m_offsets{2, 4, 8, 16};
  QuadratureSpec lambda_spec = lambda_quadrature_spec();
  int rotation_grid = 256;
  int threads = 0;  // 0: TOEPLITZ_BOUNDS_THREADS, else hardware concurrency
};

struct StudyTable {
  std::vector<StudyRow> rows;      // q-major, schedule order
  std::vector<UpperBound> uppers;  // one per q
  std::optional<std::size_t> best_row;
};

/// One row per (q, m = n + offset). Rows run concurrently; order is fixed
/// by the schedule.
StudyTable omega_convergence_study(const StudyOptions& options);

/// Columns n, xi_re, xi_im, q, m, lower, upper, ideal_limit, interp_norm,
/// warnings; floats with 17 significant digits.
std::string study_csv(const StudyTable& table);

/// Multistart Nelder-Mead over Blaschke products of degree n + 1 (zeros
/// parametrized hyperbolically) maximizing |(T_B b)(z)|. Includes the
/// constant 1 and B itself as candidates. A lower estimate of ||T_B||.
double direct_norm_estimate(const BlaschkeProduct& b, UnitDiskPoint z, int restarts = 32,
                            std::uint64_t seed = 1);

/// Worker count from TOEPLITZ_BOUNDS_THREADS, else hardware concurrency.
int default_thread_count();

std::string format_double(double v);

}  // namespace tb
