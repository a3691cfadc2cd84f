#include "oat/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace oat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::InvalidConfig, message);
}

void require_increasing(const std::vector<double>& grid, const char* name) {
  require(grid.size() >= 2, std::string(name) + " needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(std::isfinite(grid[i]), std::string(name) + " has a non-finite point");
    if (i > 0) require(grid[i] > grid[i - 1], std::string(name) + " must be strictly increasing");
  }
}

CssParams<double> css_for(const SweepConfig& c, double theta0) {
  return CssParams<double>{theta0, c.phi0, SpinSize(c.n_particles)};
}

}  // namespace

std::vector<double> linspace(double start, double stop, int count) {
  require(count >= 2, "grid count must be >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

void SweepConfig::validate() const {
  require(n_particles >= 1, "n must be >= 1");
  require(std::isfinite(theta0) && theta0 >= 0.0 && theta0 <= std::numbers::pi,
          "theta0 must lie in [0, pi]");
  require(std::isfinite(phi0), "phi0 must be finite");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be finite and >= 0");
  require(std::isfinite(plateau_level) && plateau_level > 0.0, "plateau level must be positive");
  if (scan_variable != ScanVariable::Theta0) {
    require_increasing(tau_grid, "tau grid");
    require(tau_grid.front() >= 0.0, "tau grid must be non-negative");
  }
  if (scan_variable == ScanVariable::Theta0) {
    require_increasing(theta_grid, "theta0 grid");
    require(theta_grid.front() > 0.0 && theta_grid.back() < std::numbers::pi,
            "theta0 grid must lie inside (0, pi)");
  }
  if (scan_variable == ScanVariable::Gamma) {
    require(!gamma_grid.empty(), "gamma grid is empty");
    for (double g : gamma_grid) require(std::isfinite(g) && g >= 0.0, "gamma values must be >= 0");
  }
  const bool dense = engine != EngineChoice::Analytic ||
                     (scan_variable == ScanVariable::Gamma &&
                      std::any_of(gamma_grid.begin(), gamma_grid.end(), [](double g) { return g > 0.0; })) ||
                     (scan_variable != ScanVariable::Gamma && gamma > 0.0);
  if (dense && n_particles > kDenseParticleLimit) {
    throw Error(ErrorCode::ResourceGuard,
                "N = " + std::to_string(n_particles) + " exceeds the dense-state limit of " +
                    std::to_string(kDenseParticleLimit));
  }
}

std::vector<Engine> SweepConfig::engines() const {
  switch (engine) {
    case EngineChoice::Analytic: return {Engine::Analytic};
    case EngineChoice::Brute: return {Engine::Brute};
    case EngineChoice::Both: return {Engine::Analytic, Engine::Brute};
  }
  return {Engine::Analytic};
}

SweepRow make_row(const EngineResult& r, Engine engine, double tau, const CssParams<double>& css, double gamma) {
  SweepRow row;
  row.tau = tau;
  row.theta0 = css.theta0;
  row.phi0 = css.phi0;
  row.gamma = gamma;
  row.engine = engine;
  row.xi_k2 = r.report.xi_k2;
  row.xi_w2 = r.report.xi_w2;
  row.chi2 = r.report.chi2;
  row.f_max = r.report.f_max;
  row.v_plus = r.report.v_plus;
  row.v_minus = r.report.v_minus;
  row.n_opt = r.report.n_opt.components();
  row.degenerate = r.report.degenerate_frame;
  return row;
}

namespace {

double scaled_difference(double a, double b, double scale) {
  if (std::isnan(a) && std::isnan(b)) return 0.0;
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::infinity();
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({scale, std::abs(a), std::abs(b)});
}

}  // namespace

double row_discrepancy(const SweepRow& a, const SweepRow& b) {
  const double fields[][2] = {{a.xi_k2, b.xi_k2}, {a.xi_w2, b.xi_w2},   {a.chi2, b.chi2},
                              {a.f_max, b.f_max}, {a.v_plus, b.v_plus}, {a.v_minus, b.v_minus}};
  double worst = 0.0;
  for (const auto& f : fields) worst = std::max(worst, scaled_difference(f[0], f[1], 1.0));
  return worst;
}

DynamicsResult run_dynamics_sweep(const SweepConfig& config) {
  config.validate();
  const CssParams<double> css = css_for(config, config.theta0);
  const std::vector<Engine> engines = config.engines();
  DynamicsResult out;
  out.rows.reserve(config.tau_grid.size() * engines.size());
  double worst = 0.0;
  for (double tau : config.tau_grid) {
    const EvolutionParams<double> evo(tau, config.gamma);
    std::vector<EngineResult> results;
    for (Engine e : engines) {
      results.push_back(evaluate(e, css, evo));
      out.rows.push_back(make_row(results.back(), e, tau, css, config.gamma));
    }
    if (results.size() == 2) {
      worst = std::max(worst, compare_engines(results[0], results[1], config.n_particles).worst);
    }
  }
  if (engines.size() == 2) out.max_discrepancy = worst;
  return out;
}

std::vector<ThetaScanRow> run_theta_scan(const SweepConfig& config) {
  config.validate();
  std::vector<ThetaScanRow> out;
  const double tau_plateau = 3.0 / std::sqrt(static_cast<double>(config.n_particles));
  for (double theta0 : config.theta_grid) {
    const CssParams<double> css = css_for(config, theta0);
    for (Engine e : config.engines()) {
      ThetaScanRow row;
      row.theta0 = theta0;
      row.phi0 = config.phi0;
      row.gamma = config.gamma;
      row.engine = e;
      row.tau_min_closed = t_min_closed_form(css);
      const ScalarMinimum best = minimize_squeezing(e, css, config.gamma);
      row.tau_min = best.x;
      const EngineResult at_min = evaluate(e, css, EvolutionParams<double>(best.x, config.gamma));
      row.xi_k2_min = at_min.report.xi_k2;
      row.xi_w2_min = at_min.report.xi_w2;
      row.xi_k2_at_closed =
          evaluate(e, css, EvolutionParams<double>(row.tau_min_closed, config.gamma)).report.xi_k2;
      row.tau_plateau = tau_plateau;
      row.chi2_plateau = evaluate(e, css, EvolutionParams<double>(tau_plateau, config.gamma)).report.chi2;
      out.push_back(row);
    }
  }
  return out;
}

GammaSummary summarize_trajectory(const std::vector<SweepRow>& rows, int n_particles, double plateau_level) {
  GammaSummary s;
  s.xi_k2_min = kNaN;
  s.tau_at_min = kNaN;
  s.squeeze_start = kNaN;
  s.squeeze_end = kNaN;
  s.plateau_arrival = kNaN;
  if (rows.empty()) return s;
  s.gamma = rows.front().gamma;
  s.engine = rows.front().engine;
  bool in_run = false, run_done = false;
  for (const SweepRow& r : rows) {
    if (!std::isnan(r.xi_k2) && (std::isnan(s.xi_k2_min) || r.xi_k2 < s.xi_k2_min)) {
      s.xi_k2_min = r.xi_k2;
      s.tau_at_min = r.tau;
    }
    const bool squeezed = r.xi_k2 < 1.0 - 1e-12;
    if (!run_done) {
      if (squeezed && !in_run) {
        in_run = true;
        s.squeeze_start = r.tau;
      }
      if (squeezed) s.squeeze_end = r.tau;
      if (!squeezed && in_run) run_done = true;
    }
    if (std::isnan(s.plateau_arrival) && n_particles * r.chi2 <= plateau_level) s.plateau_arrival = r.tau;
  }
  return s;
}

GammaScanResult run_gamma_scan(const SweepConfig& config) {
  config.validate();
  const CssParams<double> css = css_for(config, config.theta0);
  GammaScanResult out;
  for (double gamma : config.gamma_grid) {
    for (Engine e : config.engines()) {
      std::vector<SweepRow> trajectory;
      trajectory.reserve(config.tau_grid.size());
      for (double tau : config.tau_grid) {
        trajectory.push_back(make_row(evaluate(e, css, EvolutionParams<double>(tau, gamma)), e, tau, css, gamma));
      }
      out.summaries.push_back(summarize_trajectory(trajectory, config.n_particles, config.plateau_level));
      out.rows.insert(out.rows.end(), trajectory.begin(), trajectory.end());
    }
  }
  return out;
}

EquivalenceSample compare_engines(const EngineResult& a, const EngineResult& b, int n_particles) {
  const double j = n_particles / 2.0;
  const double first = j, second = j * (j + 1.0);
  EquivalenceSample s;
  s.n_particles = n_particles;
  auto check = [&](double x, double y, double scale, const char* name) {
    const double d = scaled_difference(x, y, scale);
    if (d > s.worst || (std::isinf(d) && !std::isinf(s.worst))) {
      s.worst = d;
      s.worst_field = name;
    }
  };
  check(a.moments.j2, b.moments.j2, second, "j2");
  check(a.moments.jz, b.moments.jz, first, "jz");
  check(a.moments.jz2, b.moments.jz2, second, "jz2");
  check(a.moments.jp.real(), b.moments.jp.real(), first, "jp.re");
  check(a.moments.jp.imag(), b.moments.jp.imag(), first, "jp.im");
  check(a.moments.jp2.real(), b.moments.jp2.real(), second, "jp2.re");
  check(a.moments.jp2.imag(), b.moments.jp2.imag(), second, "jp2.im");
  check(a.moments.jp_jz.real(), b.moments.jp_jz.real(), second, "jp_jz.re");
  check(a.moments.jp_jz.imag(), b.moments.jp_jz.imag(), second, "jp_jz.im");
  // brute lab covariance, expressed in the analytic frame
  const Matrix3<double> lab = b.cov.basis * b.cov.entries * b.cov.basis.transpose();
  const Matrix3<double> brute_in_a = a.cov.basis.transpose() * lab * a.cov.basis;
  static const char* cov_names[3][3] = {{"c11", "c12", "c13"}, {"c21", "c22", "c23"}, {"c31", "c32", "c33"}};
  for (int r = 0; r < 3; ++r) {
    for (int c = r; c < 3; ++c) check(a.cov.entries(r, c), brute_in_a(r, c), second, cov_names[r][c]);
  }
  // Transverse quantities of both engines in the same plane: when R is tiny
  // the frame direction is ill-conditioned, and the frame itself is already
  // checked through <J+>.
  const TransverseExtrema<double> brute_ext =
      transverse_extrema_brute(CovarianceMatrix3<double>{brute_in_a, a.cov.basis, a.cov.degenerate});
  check(a.extrema.v_plus, brute_ext.v_plus, first, "v_plus");
  check(a.extrema.v_minus, brute_ext.v_minus, first, "v_minus");
  check(a.report.xi_k2, squeezing_params(brute_ext, a.frame, SpinSize(n_particles)).xi_k2, 0.0, "xi_k2");
  check(a.report.f_max, b.report.f_max, static_cast<double>(n_particles), "f_max");
  return s;
}

std::vector<EquivalenceSample> verify_engines(unsigned long long seed, int samples, int max_n) {
  require(samples >= 1, "sample count must be >= 1");
  require(max_n >= 2, "max N must be >= 2");
  if (max_n > kDenseParticleLimit) throw Error(ErrorCode::ResourceGuard, "max N exceeds dense-state limit");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_dist(2, max_n);
  std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> tau_dist(0.0, std::numbers::pi);
  const double gammas[] = {0.0, 0.01, 0.1, 0.5};
  std::uniform_int_distribution<int> gamma_pick(0, 3);
  std::vector<EquivalenceSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const int n = n_dist(rng);
    double theta0 = theta_dist(rng);
    while (theta0 == 0.0) theta0 = theta_dist(rng);
    const double phi0 = phi_dist(rng);
    const double tau = tau_dist(rng);
    const double gamma = gammas[gamma_pick(rng)];
    const CssParams<double> css{theta0, phi0, SpinSize(n)};
    const EvolutionParams<double> evo(tau, gamma);
    EquivalenceSample s = compare_engines(evaluate_analytic(css, evo), evaluate_brute(css, evo), n);
    s.theta0 = theta0;
    s.phi0 = phi0;
    s.tau = tau;
    s.gamma = gamma;
    out.push_back(s);
  }
  return out;
}

}  // namespace oat
