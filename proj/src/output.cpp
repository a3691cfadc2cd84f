#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>

#include <json.hpp>

#include "oat/sweep.hpp"

namespace oat {

namespace {

using nlohmann::json;

// Signed zeros are written as 0 so that output does not depend on rounding noise.
json number(double v) {
  if (!std::isfinite(v)) return json(nullptr);
  return json(v == 0.0 ? 0.0 : v);
}

json vector_json(const Vector3<double>& v) { return json::array({number(v.x()), number(v.y()), number(v.z())}); }

const char* engine_name(Engine e) { return e == Engine::Analytic ? "analytic" : "brute"; }

json config_json(const SweepConfig& c) {
  json j;
  j["n"] = c.n_particles;
  j["theta0"] = number(c.theta0);
  j["phi0"] = number(c.phi0);
  j["gamma"] = number(c.gamma);
  j["engine"] = c.engine == EngineChoice::Both ? "both" : c.engine == EngineChoice::Brute ? "brute" : "analytic";
  j["plateau_level"] = number(c.plateau_level);
  if (!c.tau_grid.empty()) {
    j["tau_start"] = c.tau_grid.front();
    j["tau_stop"] = c.tau_grid.back();
    j["tau_count"] = c.tau_grid.size();
  }
  if (c.scan_variable == ScanVariable::Theta0) j["theta_grid"] = c.theta_grid;
  if (c.scan_variable == ScanVariable::Gamma) j["gamma_grid"] = c.gamma_grid;
  return j;
}

json row_json(const SweepRow& r) {
  return json{{"tau", number(r.tau)},         {"theta0", number(r.theta0)},   {"phi0", number(r.phi0)},
              {"gamma", number(r.gamma)},     {"engine", engine_name(r.engine)}, {"xi_k2", number(r.xi_k2)},
              {"xi_w2", number(r.xi_w2)},     {"chi2", number(r.chi2)},       {"f_max", number(r.f_max)},
              {"v_plus", number(r.v_plus)},   {"v_minus", number(r.v_minus)}, {"n_opt", vector_json(r.n_opt)},
              {"degenerate", r.degenerate}};
}

constexpr const char* kRowHeader =
    "tau,theta0,phi0,gamma,engine,xi_k2,xi_w2,chi2,f_max,v_plus,v_minus,n_opt_x,n_opt_y,n_opt_z,degenerate";

void write_row(std::ostream& out, const SweepRow& r) {
  out << format_double(r.tau) << ',' << format_double(r.theta0) << ',' << format_double(r.phi0) << ','
      << format_double(r.gamma) << ',' << engine_name(r.engine) << ',' << format_double(r.xi_k2) << ','
      << format_double(r.xi_w2) << ',' << format_double(r.chi2) << ',' << format_double(r.f_max) << ','
      << format_double(r.v_plus) << ',' << format_double(r.v_minus) << ',' << format_double(r.n_opt.x()) << ','
      << format_double(r.n_opt.y()) << ',' << format_double(r.n_opt.z()) << ',' << (r.degenerate ? 1 : 0)
      << '\n';
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_dynamics_csv(std::ostream& out, const DynamicsResult& result) {
  out << "# schema: " << kSchemaVersion << " dynamics\n" << kRowHeader << '\n';
  for (const SweepRow& r : result.rows) write_row(out, r);
  if (result.max_discrepancy) out << "# max_discrepancy: " << format_double(*result.max_discrepancy) << '\n';
}

void write_theta_csv(std::ostream& out, const std::vector<ThetaScanRow>& rows) {
  out << "# schema: " << kSchemaVersion << " theta-scan\n"
      << "theta0,phi0,gamma,engine,tau_min,tau_min_closed,xi_k2_min,xi_k2_at_closed,xi_w2_min,tau_plateau,"
         "chi2_plateau\n";
  for (const ThetaScanRow& r : rows) {
    out << format_double(r.theta0) << ',' << format_double(r.phi0) << ',' << format_double(r.gamma) << ','
        << engine_name(r.engine) << ',' << format_double(r.tau_min) << ',' << format_double(r.tau_min_closed)
        << ',' << format_double(r.xi_k2_min) << ',' << format_double(r.xi_k2_at_closed) << ','
        << format_double(r.xi_w2_min) << ',' << format_double(r.tau_plateau) << ','
        << format_double(r.chi2_plateau) << '\n';
  }
}

void write_gamma_csv(std::ostream& out, const GammaScanResult& result) {
  out << "# schema: " << kSchemaVersion << " gamma-scan\n" << kRowHeader << '\n';
  for (const SweepRow& r : result.rows) write_row(out, r);
  for (const GammaSummary& s : result.summaries) {
    out << "# summary: gamma=" << format_double(s.gamma) << " engine=" << engine_name(s.engine)
        << " xi_k2_min=" << format_double(s.xi_k2_min) << " tau_at_min=" << format_double(s.tau_at_min)
        << " squeeze_start=" << format_double(s.squeeze_start) << " squeeze_end=" << format_double(s.squeeze_end)
        << " plateau_arrival=" << format_double(s.plateau_arrival) << '\n';
  }
}

std::string dynamics_json(const SweepConfig& config, const DynamicsResult& result) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "dynamics";
  j["config"] = config_json(config);
  j["rows"] = json::array();
  for (const SweepRow& r : result.rows) j["rows"].push_back(row_json(r));
  j["summary"] = json::object();
  if (result.max_discrepancy) j["summary"]["max_discrepancy"] = number(*result.max_discrepancy);
  return j.dump(2) + "\n";
}

std::string theta_json(const SweepConfig& config, const std::vector<ThetaScanRow>& rows) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "theta-scan";
  j["config"] = config_json(config);
  j["rows"] = json::array();
  for (const ThetaScanRow& r : rows) {
    j["rows"].push_back(json{{"theta0", number(r.theta0)},
                             {"phi0", number(r.phi0)},
                             {"gamma", number(r.gamma)},
                             {"engine", engine_name(r.engine)},
                             {"tau_min", number(r.tau_min)},
                             {"tau_min_closed", number(r.tau_min_closed)},
                             {"xi_k2_min", number(r.xi_k2_min)},
                             {"xi_k2_at_closed", number(r.xi_k2_at_closed)},
                             {"xi_w2_min", number(r.xi_w2_min)},
                             {"tau_plateau", number(r.tau_plateau)},
                             {"chi2_plateau", number(r.chi2_plateau)}});
  }
  return j.dump(2) + "\n";
}

std::string gamma_json(const SweepConfig& config, const GammaScanResult& result) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "gamma-scan";
  j["config"] = config_json(config);
  j["rows"] = json::array();
  for (const SweepRow& r : result.rows) j["rows"].push_back(row_json(r));
  j["summary"] = json::array();
  for (const GammaSummary& s : result.summaries) {
    j["summary"].push_back(json{{"gamma", number(s.gamma)},
                                {"engine", engine_name(s.engine)},
                                {"xi_k2_min", number(s.xi_k2_min)},
                                {"tau_at_min", number(s.tau_at_min)},
                                {"squeeze_start", number(s.squeeze_start)},
                                {"squeeze_end", number(s.squeeze_end)},
                                {"plateau_arrival", number(s.plateau_arrival)}});
  }
  return j.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::IoFailure, "failed writing to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw Error(ErrorCode::IoFailure, "failed writing " + path);
}

}  // namespace oat
