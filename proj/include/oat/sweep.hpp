#pragma once

// Parameter sweeps over time, initial polar angle and dephasing rate, with
// CSV / JSON serialization of the per-point metrics.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oat/engine.hpp"

namespace oat {

enum class EngineChoice { Analytic, Brute, Both };
enum class ScanVariable { Time, Theta0, Gamma };
enum class OutputFormat { Csv, Json };

inline constexpr const char* kSchemaVersion = "oat-sweep/1";
/// engine=both discrepancies above this fail the self-check for N <= kSelfCheckMaxParticles.
inline constexpr double kSelfCheckTolerance = 1e-8;
inline constexpr int kSelfCheckMaxParticles = 24;

/// Evenly spaced points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int count);

struct SweepConfig {
  int n_particles = 100;
  double theta0 = 1.5707963267948966;
  double phi0 = 0.0;
  double gamma = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> theta_grid;
  std::vector<double> gamma_grid;
  EngineChoice engine = EngineChoice::Analytic;
  ScanVariable scan_variable = ScanVariable::Time;
  std::string output_path;  // empty writes to stdout
  OutputFormat output_format = OutputFormat::Csv;
  /// N * chi^2 level that counts as having reached the plateau.
  double plateau_level = 3.0;

  /// Throws InvalidConfig or ResourceGuard.
  void validate() const;
  std::vector<Engine> engines() const;
};

struct SweepRow {
  double tau{};
  double theta0{};
  double phi0{};
  double gamma{};
  Engine engine{Engine::Analytic};
  double xi_k2{};
  double xi_w2{};
  double chi2{};
  double f_max{};
  double v_plus{};
  double v_minus{};
  Vector3<double> n_opt{Vector3<double>::Zero()};
  bool degenerate{false};
};

SweepRow make_row(const EngineResult& r, Engine engine, double tau, const CssParams<double>& css,
                  double gamma);

/// Largest |a - b| / max(1, |a|, |b|) over the numeric metrics of two rows.
double row_discrepancy(const SweepRow& a, const SweepRow& b);

struct DynamicsResult {
  std::vector<SweepRow> rows;
  /// Largest compare_engines discrepancy over the grid; present when both engines ran.
  std::optional<double> max_discrepancy;
};

struct ThetaScanRow {
  double theta0{};
  double phi0{};
  double gamma{};
  Engine engine{Engine::Analytic};
  double tau_min{};         // numerical minimizer of xi_K^2
  double tau_min_closed{};  // short-time closed form
  double xi_k2_min{};
  double xi_k2_at_closed{};
  double xi_w2_min{};
  double tau_plateau{};  // 3 / sqrt(N)
  double chi2_plateau{};
};

struct GammaSummary {
  double gamma{};
  Engine engine{Engine::Analytic};
  double xi_k2_min{};
  double tau_at_min{};
  /// First contiguous run of grid points with xi_K^2 < 1 (NaN if none).
  double squeeze_start{};
  double squeeze_end{};
  /// First grid point with N chi^2 <= plateau level (NaN if never).
  double plateau_arrival{};
};

struct GammaScanResult {
  std::vector<SweepRow> rows;
  std::vector<GammaSummary> summaries;
};

DynamicsResult run_dynamics_sweep(const SweepConfig& config);
std::vector<ThetaScanRow> run_theta_scan(const SweepConfig& config);
GammaScanResult run_gamma_scan(const SweepConfig& config);

GammaSummary summarize_trajectory(const std::vector<SweepRow>& rows, int n_particles, double plateau_level);

// Serialization. Undefined values are written as "nan" (CSV) or null (JSON).
std::string format_double(double value);
void write_dynamics_csv(std::ostream& out, const DynamicsResult& result);
void write_theta_csv(std::ostream& out, const std::vector<ThetaScanRow>& rows);
void write_gamma_csv(std::ostream& out, const GammaScanResult& result);
std::string dynamics_json(const SweepConfig& config, const DynamicsResult& result);
std::string theta_json(const SweepConfig& config, const std::vector<ThetaScanRow>& rows);
std::string gamma_json(const SweepConfig& config, const GammaScanResult& result);

/// Writes text to path, or to stdout when path is empty. Throws IoFailure.
void write_output(const std::string& path, const std::string& text);

struct EquivalenceSample {
  int n_particles{};
  double theta0{}, phi0{}, tau{}, gamma{};
  double worst{};          // largest scaled discrepancy over all compared quantities
  std::string worst_field;
};

/// Random engine-equivalence trials (N in [2, max_n], gamma from
/// {0, 0.01, 0.1, 0.5}); reproducible for a given seed.
std::vector<EquivalenceSample> verify_engines(unsigned long long seed, int samples, int max_n);

/// Scaled discrepancy between analytic and brute results at one point; the
/// brute covariance is compared in the analytic frame.
EquivalenceSample compare_engines(const EngineResult& analytic, const EngineResult& brute, int n_particles);

}  // namespace oat
