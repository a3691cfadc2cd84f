// oat-sweep: time sweeps, theta0 scans, dephasing scans and engine
// self-checks for one-axis twisting of a coherent spin state.

#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oat/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kInvalidConfig = 2, kResourceGuard = 3, kSelfCheck = 4, kIo = 5 };

int exit_code_for(oat::ErrorCode code) {
  switch (code) {
    case oat::ErrorCode::ResourceGuard: return kResourceGuard;
    case oat::ErrorCode::SelfCheckFailure: return kSelfCheck;
    case oat::ErrorCode::IoFailure: return kIo;
    case oat::ErrorCode::InvalidConfig:
    case oat::ErrorCode::DegenerateInitialState:
    case oat::ErrorCode::NormViolation:
    case oat::ErrorCode::ShapeViolation:
      return kInvalidConfig;
    default: return kInternal;
  }
}

struct Options {
  int n = 100;
  double theta0 = std::numbers::pi / 2;
  double phi0 = 0.0;
  double gamma = 0.0;
  double tau_start = 0.0;
  double tau_stop = 0.0;
  int tau_count = 2000;
  std::vector<double> tau_list;
  double theta_start = 0.05;
  double theta_stop = std::numbers::pi - 0.05;
  int theta_count = 100;
  std::vector<double> gammas{0.0, 0.01, 0.1};
  std::string engine;
  std::string out;
  std::string format = "csv";
  double plateau_level = 3.0;
  unsigned long long seed = 1;
  int samples = 200;
  int max_n = oat::kSelfCheckMaxParticles;
};

oat::EngineChoice parse_engine(const std::string& name, oat::EngineChoice fallback) {
  if (name.empty()) return fallback;
  if (name == "analytic") return oat::EngineChoice::Analytic;
  if (name == "brute") return oat::EngineChoice::Brute;
  return oat::EngineChoice::Both;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-axis twisting: spin squeezing and quantum Fisher information sweeps"};
  app.set_config("--config", "", "Key-value config file mirroring the flags (flags take precedence)");
  app.require_subcommand(1);

  Options o;
  CLI::Option* tau_stop_opt = nullptr;
  CLI::Option* tau_count_opt = nullptr;
  app.add_option("--n", o.n, "Number of spin-1/2 particles")->check(CLI::PositiveNumber);
  app.add_option("--theta0", o.theta0, "Initial polar angle (rad)");
  app.add_option("--phi0", o.phi0, "Initial azimuth (rad)");
  app.add_option("--gamma", o.gamma, "Dephasing ratio Gamma/kappa");
  app.add_option("--tau-start", o.tau_start, "First kappa*t grid point");
  tau_stop_opt = app.add_option("--tau-stop", o.tau_stop, "Last kappa*t grid point");
  tau_count_opt = app.add_option("--tau-count", o.tau_count, "Number of kappa*t grid points");
  app.add_option("--tau-list", o.tau_list, "Explicit kappa*t grid (overrides start/stop/count)")->delimiter(',');
  app.add_option("--theta-start", o.theta_start, "theta-scan: first theta0");
  app.add_option("--theta-stop", o.theta_stop, "theta-scan: last theta0");
  app.add_option("--theta-count", o.theta_count, "theta-scan: number of theta0 points");
  app.add_option("--gammas", o.gammas, "gamma-scan: dephasing ratios")->delimiter(',');
  app.add_option("--engine", o.engine, "analytic | brute | both")
      ->check(CLI::IsMember({"analytic", "brute", "both"}));
  app.add_option("--out", o.out, "Output file (stdout when omitted)");
  app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--plateau-level", o.plateau_level, "N*chi^2 level counted as on the plateau");
  app.add_option("--seed", o.seed, "Seed for randomized verify trials");
  app.add_option("--samples", o.samples, "verify: number of random trials");
  app.add_option("--max-n", o.max_n, "verify: largest particle number sampled");

  auto* dynamics = app.add_subcommand("dynamics", "Metrics along a kappa*t grid");
  auto* theta_scan = app.add_subcommand("theta-scan", "Minimum squeezing and plateau chi^2 versus theta0");
  auto* gamma_scan = app.add_subcommand("gamma-scan", "Dynamics for several dephasing ratios");
  auto* verify = app.add_subcommand("verify", "Analytic versus brute-force engine self-check");
  for (auto* sub : {dynamics, theta_scan, gamma_scan, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    oat::SweepConfig config;
    config.n_particles = o.n;
    config.theta0 = o.theta0;
    config.phi0 = o.phi0;
    config.gamma = o.gamma;
    config.output_path = o.out;
    config.output_format = o.format == "json" ? oat::OutputFormat::Json : oat::OutputFormat::Csv;
    config.plateau_level = o.plateau_level;

    // Default grids: kappa*t*sqrt(N) in [0, 10] for dynamics, kappa*t in [0, pi] for gamma scans.
    auto tau_grid = [&](double default_stop) {
      if (!o.tau_list.empty()) return o.tau_list;
      const double stop = tau_stop_opt->count() > 0 ? o.tau_stop : default_stop;
      const int count = tau_count_opt->count() > 0 ? o.tau_count : 2000;
      return oat::linspace(o.tau_start, stop, count);
    };

    if (dynamics->parsed()) {
      config.scan_variable = oat::ScanVariable::Time;
      config.engine = parse_engine(o.engine, oat::EngineChoice::Analytic);
      config.tau_grid = tau_grid(10.0 / std::sqrt(static_cast<double>(std::max(o.n, 1))));
      const oat::DynamicsResult result = oat::run_dynamics_sweep(config);
      std::ostringstream text;
      if (config.output_format == oat::OutputFormat::Json) {
        text << oat::dynamics_json(config, result);
      } else {
        oat::write_dynamics_csv(text, result);
      }
      oat::write_output(config.output_path, text.str());
      if (result.max_discrepancy && o.n <= oat::kSelfCheckMaxParticles &&
          !(*result.max_discrepancy <= oat::kSelfCheckTolerance)) {
        std::cerr << "self-check failed: engine discrepancy " << oat::format_double(*result.max_discrepancy)
                  << " exceeds " << oat::kSelfCheckTolerance << "\n";
        return kSelfCheck;
      }
      return kOk;
    }

    if (theta_scan->parsed()) {
      config.scan_variable = oat::ScanVariable::Theta0;
      config.engine = parse_engine(o.engine, oat::EngineChoice::Analytic);
      config.theta_grid = oat::linspace(o.theta_start, o.theta_stop, o.theta_count);
      const auto rows = oat::run_theta_scan(config);
      std::ostringstream text;
      if (config.output_format == oat::OutputFormat::Json) {
        text << oat::theta_json(config, rows);
      } else {
        oat::write_theta_csv(text, rows);
      }
      oat::write_output(config.output_path, text.str());
      return kOk;
    }

    if (gamma_scan->parsed()) {
      config.scan_variable = oat::ScanVariable::Gamma;
      config.engine = parse_engine(o.engine, oat::EngineChoice::Brute);
      config.gamma_grid = o.gammas;
      config.tau_grid = tau_grid(std::numbers::pi);
      const oat::GammaScanResult result = oat::run_gamma_scan(config);
      std::ostringstream text;
      if (config.output_format == oat::OutputFormat::Json) {
        text << oat::gamma_json(config, result);
      } else {
        oat::write_gamma_csv(text, result);
      }
      oat::write_output(config.output_path, text.str());
      return kOk;
    }

    // verify
    const auto samples = oat::verify_engines(o.seed, o.samples, o.max_n);
    const oat::EquivalenceSample* worst = &samples.front();
    for (const auto& s : samples) {
      if (!(s.worst <= worst->worst)) worst = &s;
    }
    const bool ok = worst->worst <= oat::kSelfCheckTolerance;
    std::ostringstream text;
    if (config.output_format == oat::OutputFormat::Json) {
      nlohmann::json j;
      j["schema"] = oat::kSchemaVersion;
      j["command"] = "verify";
      j["seed"] = o.seed;
      j["samples"] = samples.size();
      j["tolerance"] = oat::kSelfCheckTolerance;
      j["worst"] = {{"discrepancy", worst->worst}, {"field", worst->worst_field}, {"n", worst->n_particles},
                    {"theta0", worst->theta0},     {"phi0", worst->phi0},        {"tau", worst->tau},
                    {"gamma", worst->gamma}};
      j["pass"] = ok;
      text << j.dump(2) << "\n";
    } else {
      text << "verify: " << samples.size() << " random trials, seed " << o.seed << ", N <= " << o.max_n << "\n"
           << "worst scaled discrepancy " << oat::format_double(worst->worst) << " (" << worst->worst_field
           << ") at N=" << worst->n_particles << " theta0=" << oat::format_double(worst->theta0)
           << " phi0=" << oat::format_double(worst->phi0) << " tau=" << oat::format_double(worst->tau)
           << " gamma=" << oat::format_double(worst->gamma) << "\n"
           << (ok ? "PASS" : "FAIL") << "\n";
    }
    oat::write_output(config.output_path, text.str());
    return ok ? kOk : kSelfCheck;
  } catch (const oat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
