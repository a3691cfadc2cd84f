// Acceptance checks, one line per criterion:
//   acceptance            run all criteria
//   acceptance 3 5        run criteria 3 and 5
// Exit status is non-zero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "oat/sweep.hpp"
#include "support.hpp"

using namespace oat;
using oat::test::kPi;
using oat::test::rel_diff;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. CSS baseline
Outcome css_baseline() {
  double worst_chi = 0, worst_xi = 0;
  for (int n : {2, 10, 100, 2000}) {
    for (double theta0 : linspace(0.0, kPi, 33)) {
      const CssParams<double> css{theta0, 0.0, SpinSize(n)};
      const EvolutionParams<double> evo(0.0, 0.0);
      std::vector<EngineResult> results{evaluate_analytic(css, evo)};
      if (n <= 100) results.push_back(evaluate_brute(css, evo));
      for (const auto& r : results) {
        worst_chi = std::max(worst_chi, std::abs(r.report.chi2 - 1.0));
        worst_xi = std::isnan(r.report.xi_k2) ? INFINITY : std::max(worst_xi, std::abs(r.report.xi_k2 - 1.0));
      }
    }
  }
  return {worst_chi <= 1e-10 && worst_xi <= 1e-10,
          "max |chi2-1| = " + fmt(worst_chi) + ", max |xi_K^2-1| = " + fmt(worst_xi)};
}

// 2. Heisenberg point
Outcome heisenberg_point() {
  double worst = 0;
  for (int n : {4, 8, 100, 2000}) {
    const CssParams<double> css{kPi / 2, 0.0, SpinSize(n)};
    const EvolutionParams<double> evo(kPi / 2, 0.0);
    worst = std::max(worst, rel_diff(evaluate_analytic(css, evo).report.chi2, 1.0 / n));
    if (n <= 8) worst = std::max(worst, rel_diff(evaluate_brute(css, evo).report.chi2, 1.0 / n));
  }
  return {worst <= 1e-9, "max rel |chi2 - 1/N| = " + fmt(worst)};
}

// 3. Plateau scaling
Outcome plateau_scaling() {
  const int n = 2000;
  const CssParams<double> css{kPi / 2, 0.0, SpinSize(n)};
  double lo = INFINITY, hi = -INFINITY;
  for (double tau : linspace(3.0 / std::sqrt(double(n)), 1.2, 4000)) {
    const double v = n * evaluate_analytic(css, EvolutionParams<double>(tau)).report.chi2;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo >= 1.5 && hi <= 3.0, "N chi2 in [" + fmt(lo) + ", " + fmt(hi) + "] over 4000 points"};
}

// 4. theta0 robustness. Golden ratios frozen from the first verified run.
constexpr double kGoldenChi2Ratio = 11.127421219258062;
constexpr double kGoldenXiRatio = 13.022514304331056;

Outcome theta_robustness() {
  const int n = 2000;
  const double tau = 3.0 / std::sqrt(double(n));
  double lo = INFINITY, hi = -INFINITY;
  const double half_width = 2 * kPi / 5;
  for (double theta0 : linspace(kPi / 2 - half_width, kPi / 2 + half_width, 161)) {
    if (std::abs(theta0 - kPi / 2) >= half_width) continue;  // open interval
    const double chi = evaluate_analytic(CssParams<double>{theta0, 0.0, SpinSize(n)}, EvolutionParams<double>(tau))
                           .report.chi2;
    lo = std::min(lo, chi);
    hi = std::max(hi, chi);
  }
  const double chi_ratio = hi / lo;
  const double xi_third = minimize_squeezing(Engine::Analytic, CssParams<double>{kPi / 3, 0.0, SpinSize(n)}, 0.0).value;
  const double xi_half = minimize_squeezing(Engine::Analytic, CssParams<double>{kPi / 2, 0.0, SpinSize(n)}, 0.0).value;
  const double xi_ratio = xi_third / xi_half;
  const bool golden = rel_diff(chi_ratio, kGoldenChi2Ratio) < 1e-6 && rel_diff(xi_ratio, kGoldenXiRatio) < 1e-6;
  const bool pass = chi_ratio < 2.0 && xi_ratio > 2.0 && golden;
  return {pass, "chi2(3/sqrt N) max/min = " + fmt(chi_ratio) + " (need < 2), xi_min(pi/3)/xi_min(pi/2) = " +
                    fmt(xi_ratio) + " (need > 2), golden " + (golden ? "match" : "MISMATCH")};
}

// 5. Engine equivalence
Outcome engine_equivalence() {
  const auto samples = verify_engines(20240501, 200, 24);
  const EquivalenceSample* worst = &samples.front();
  for (const auto& s : samples)
    if (!(s.worst <= worst->worst)) worst = &s;
  return {worst->worst <= 1e-8, "200 tuples, worst scaled difference " + fmt(worst->worst) + " (" +
                                    worst->worst_field + ", N=" + std::to_string(worst->n_particles) + ")"};
}

// 6. Mixed QFI vs SLD
Outcome sld_agreement() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> t(0.0, kPi), g(0.001, 0.5);
  double worst_f = 0, worst_tr = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto rho = oat::test::dephased_css(oat::test::random_css(rng, n), t(rng), g(rng));
    const SpinDirection<double> dir(oat::test::random_unit(rng));
    const auto sld = sld_oracle(rho, dir);
    worst_f = std::max(worst_f, rel_diff(qfi_mixed(rho, dir), sld.information));
    worst_tr = std::max(worst_tr, std::abs((rho.entries() * sld.L).trace()));
  }
  return {worst_f <= 1e-8 && worst_tr <= 1e-10,
          "50 states, max rel |F - F_SLD| = " + fmt(worst_f) + ", max |Tr(rho L)| = " + fmt(worst_tr)};
}

// 7. Direction optimality
Outcome direction_optimality() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> t(0.0, kPi);
  double worst_excess = -INFINITY, worst_gap = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto css = oat::test::random_css(rng, n);
    const double tau = t(rng);
    const bool pure = k % 2 == 0;
    const double gamma = pure ? 0.0 : 0.02 + 0.2 * (k % 5);
    std::function<double(const Vector3<double>&)> f;
    double f_max;
    Matrix3<double> lab;
    std::optional<SpectralState<double>> spec;
    if (pure) {
      const auto m = moments_analytic(css, EvolutionParams<double>(tau));
      f_max = qfi_pure_max(covariance_matrix(m, build_frame(m, css.size.j()))).f_max;
      lab = lab_covariance(evolve_pure(build_css(css), tau));
      f = [&](const Vector3<double>& v) { return 4 * v.dot(lab * v); };
    } else {
      spec.emplace(oat::test::dephased_css(css, tau, gamma));
      f_max = qfi_mixed_max(*spec).f_max;
      f = [&](const Vector3<double>& v) { return qfi_mixed(*spec, SpinDirection<double>(v)); };
    }
    double best = -INFINITY;
    Vector3<double> best_n = Vector3<double>::UnitZ();
    for (int s = 0; s < 10000; ++s) {
      const Vector3<double> v = oat::test::random_unit(rng);
      const double val = f(v);
      worst_excess = std::max(worst_excess, (val - f_max) / std::max(1.0, f_max));
      if (val > best) { best = val; best_n = v; }
    }
    // refine the best sample by a shrinking coordinate search on the sphere
    double th = std::acos(std::clamp(best_n.z(), -1.0, 1.0)), ph = std::atan2(best_n.y(), best_n.x());
    auto at = [&](double a, double b) {
      return f(Vector3<double>(std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)));
    };
    for (double step = 0.05; step > 1e-9; step *= 0.5) {
      for (bool moved = true; moved;) {
        moved = false;
        for (auto [da, db] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
          const double v = at(th + da, ph + db);
          if (v > best) { best = v; th += da; ph += db; moved = true; }
        }
      }
    }
    worst_gap = std::max(worst_gap, rel_diff(best, f_max));
  }
  return {worst_excess <= 1e-12 && worst_gap <= 1e-4,
          "50 states x 1e4 directions, max excess over 4 lambda_max " + fmt(worst_excess) +
              ", max rel gap of refined search " + fmt(worst_gap)};
}

// 8. phi0 invariance
Outcome phi0_invariance() {
  double worst = 0;
  for (int n : {7, 8, 100})
    for (double theta0 : {kPi / 2, kPi / 3})
      for (double tau : {0.1, 0.5})
        for (double gamma : {0.0, 0.1}) {
          const EvolutionParams<double> evo(tau, gamma);
          const auto ref = evaluate_analytic(CssParams<double>{theta0, 0.0, SpinSize(n)}, evo).report;
          for (double phi0 : {kPi / 7, 1.3}) {
            const auto r = evaluate_analytic(CssParams<double>{theta0, phi0, SpinSize(n)}, evo).report;
            for (auto [a, b] : {std::pair{r.f_max, ref.f_max}, {r.chi2, ref.chi2}, {r.xi_k2, ref.xi_k2},
                                {r.xi_w2, ref.xi_w2}, {r.v_plus, ref.v_plus}, {r.v_minus, ref.v_minus}}) {
              worst = std::max(worst, rel_diff(a, b));
            }
          }
        }
  return {worst <= 1e-10, "max rel difference across phi0 " + fmt(worst)};
}

// 9. Closed-form minimum time
Outcome t_min_agreement() {
  double worst = 0;
  std::string parts;
  for (double theta0 : {kPi / 2, kPi / 3, 2 * kPi / 5}) {
    const CssParams<double> css{theta0, 0.0, SpinSize(2000)};
    const double numeric = minimize_squeezing(Engine::Analytic, css, 0.0).x;
    const double closed = t_min_closed_form(css);
    const double d = std::abs(numeric - closed) / closed;
    worst = std::max(worst, d);
    parts += (parts.empty() ? "" : ", ") + fmt(d);
  }
  return {worst <= 0.05, "rel |tau_num - tau_closed| = " + parts};
}

// 10. Dephasing phenomenology
Outcome dephasing_phenomenology() {
  SweepConfig c;
  c.n_particles = 100;
  c.theta0 = kPi / 2;
  c.scan_variable = ScanVariable::Gamma;
  c.engine = EngineChoice::Brute;
  c.gamma_grid = {0.0, 0.01, 0.1};
  c.tau_grid = linspace(0.0, kPi, 2000);
  const auto r = run_gamma_scan(c);
  const double step = c.tau_grid[1] - c.tau_grid[0];
  const auto& s = r.summaries;
  const bool xi_up = s[0].xi_k2_min < s[1].xi_k2_min && s[1].xi_k2_min < s[2].xi_k2_min;
  bool same_window = true;
  for (int k = 1; k < 3; ++k) {
    same_window = same_window && std::abs(s[k].squeeze_start - s[0].squeeze_start) <= step * (1 + 1e-9) &&
                  std::abs(s[k].squeeze_end - s[0].squeeze_end) <= step * (1 + 1e-9);
  }
  const bool delayed = s[0].plateau_arrival < s[1].plateau_arrival && s[1].plateau_arrival < s[2].plateau_arrival;
  std::ostringstream d;
  d << "xi_min " << fmt(s[0].xi_k2_min) << " < " << fmt(s[1].xi_k2_min) << " < " << fmt(s[2].xi_k2_min)
    << "; squeeze end " << fmt(s[0].squeeze_end) << ", " << fmt(s[1].squeeze_end) << ", "
    << fmt(s[2].squeeze_end) << " (step " << fmt(step) << "); plateau arrival " << fmt(s[0].plateau_arrival)
    << " < " << fmt(s[1].plateau_arrival) << " < " << fmt(s[2].plateau_arrival);
  return {xi_up && same_window && delayed, d.str()};
}

// 11. Odd-N rule
Outcome odd_n_rule() {
  double worst = 0;
  for (int n = 1; n <= 21; n += 2) {
    const CssParams<double> css{kPi / 2, 0.0, SpinSize(n)};
    for (double tau : linspace(0.0, kPi, 50)) {
      const auto m = moments_analytic(css, EvolutionParams<double>(tau));
      const auto cov = covariance_matrix(m, build_frame(m, css.size.j()));
      const auto ext = transverse_extrema(cov, m);
      const double simple = qfi_pure_simplified(ext, cov);
      worst = std::max({worst, rel_diff(simple, 4 * ext.v_plus), rel_diff(simple, qfi_pure_max(cov).f_max)});
    }
  }
  return {worst <= 1e-9, "odd N <= 21 x 50 tau, max rel difference " + fmt(worst)};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const std::map<int, Criterion> kCriteria = {
    {1, {"css-baseline", css_baseline}},
    {2, {"heisenberg-point", heisenberg_point}},
    {3, {"plateau-scaling", plateau_scaling}},
    {4, {"theta0-robustness", theta_robustness}},
    {5, {"engine-equivalence", engine_equivalence}},
    {6, {"mixed-qfi-sld", sld_agreement}},
    {7, {"direction-optimality", direction_optimality}},
    {8, {"phi0-invariance", phi0_invariance}},
    {9, {"t-min-closed-form", t_min_agreement}},
    {10, {"dephasing-phenomenology", dephasing_phenomenology}},
    {11, {"odd-n-rule", odd_n_rule}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& [id, c] : kCriteria) selected.push_back(id);

  int failures = 0;
  for (int id : selected) {
    const auto it = kCriteria.find(id);
    if (it == kCriteria.end()) {
      std::printf("criterion %d: unknown\n", id);
      ++failures;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-24s %s  %s [%.2f s]\n", id, it->second.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
