#include "oat/engine.hpp"

#include <cmath>
#include <string>

namespace oat {

std::string_view to_string(Engine engine) noexcept {
  switch (engine) {
    case Engine::Analytic: return "analytic";
    case Engine::Brute: return "brute";
  }
  return "unknown";
}

namespace {

void guard_dense(const SpinSize& size, std::string_view what) {
  if (size.particles() > kDenseParticleLimit) {
    throw Error(ErrorCode::ResourceGuard,
                std::string(what) + " needs a dense state; N exceeds " + std::to_string(kDenseParticleLimit));
  }
}

void fill_report(EngineResult& r, const QfiMax<double>& q, const SpinSize& size) {
  MetricReport<double>& rep = r.report;
  rep.f_max = q.f_max;
  rep.n_opt = q.n_opt;
  rep.chi2 = chi2(q.f_max, size);
  rep.entangled = rep.chi2 < 1.0;
  rep.v_plus = r.extrema.v_plus;
  rep.v_minus = r.extrema.v_minus;
  rep.degenerate_frame = r.frame.degenerate;
  const SqueezingParams<double> sq = squeezing_params(r.extrema, r.frame, size);
  rep.xi_k2 = sq.xi_k2;
  rep.xi_w2 = sq.xi_w2;
}

struct AnalyticGeometry {
  MomentSet<double> moments;
  MeanSpinFrame<double> frame;
  CovarianceMatrix3<double> cov;
  TransverseExtrema<double> extrema;
};

AnalyticGeometry analytic_geometry(const CssParams<double>& css, const EvolutionParams<double>& evo) {
  MomentSet<double> moments = moments_analytic(css, evo);
  MeanSpinFrame<double> frame = build_frame(moments, css.size.j());
  CovarianceMatrix3<double> cov = covariance_matrix(moments, frame);
  TransverseExtrema<double> extrema = transverse_extrema(cov, moments);
  return {moments, frame, cov, extrema};
}

double xi_k2_at(Engine engine, const CssParams<double>& css, const EvolutionParams<double>& evo) {
  if (engine == Engine::Analytic) {
    const AnalyticGeometry g = analytic_geometry(css, evo);
    return squeezing_params(g.extrema, g.frame, css.size).xi_k2;
  }
  return evaluate_brute(css, evo).report.xi_k2;
}

}  // namespace

EngineResult evaluate_analytic(const CssParams<double>& css, const EvolutionParams<double>& evo) {
  AnalyticGeometry g = analytic_geometry(css, evo);
  EngineResult out{g.moments, g.frame, g.cov, g.extrema, {}};
  if (evo.gamma == 0.0) {
    fill_report(out, qfi_pure_max(out.cov), css.size);
  } else {
    guard_dense(css.size, "mixed-state QFI");
    const DensityMatrix<double> rho =
        evolve_dephased(DensityMatrix<double>::from_pure(build_css(css)), evo);
    fill_report(out, qfi_mixed_max(rho), css.size);
  }
  return out;
}

EngineResult evaluate_brute(const CssParams<double>& css, const EvolutionParams<double>& evo) {
  guard_dense(css.size, "brute engine");
  const DickeVector<double> psi0 = build_css(css);
  const double j = css.size.j();
  EngineResult out{{}, frame_from_angles(0.0, 0.0, 0.0, false), {}, {}, {}};
  Matrix3<double> lab;
  QfiMax<double> q;
  if (evo.gamma == 0.0) {
    const DickeVector<double> psi = evolve_pure(psi0, evo.tau);
    out.moments = moments_brute(psi);
    lab = lab_covariance(psi);
    q = detail::top_eigenpair(lab, Matrix3<double>(Matrix3<double>::Identity()), 4.0);
  } else {
    const DensityMatrix<double> rho = evolve_dephased(DensityMatrix<double>::from_pure(psi0), evo);
    out.moments = moments_brute(rho);
    lab = lab_covariance(rho);
    q = detail::top_eigenpair(sld_information_matrix(rho), Matrix3<double>(Matrix3<double>::Identity()), 1.0);
  }
  out.frame = build_frame(out.moments, j);
  out.cov = frame_covariance(lab, out.frame);
  out.extrema = transverse_extrema_brute(out.cov);
  fill_report(out, q, css.size);
  return out;
}

EngineResult evaluate(Engine engine, const CssParams<double>& css, const EvolutionParams<double>& evo) {
  return engine == Engine::Analytic ? evaluate_analytic(css, evo) : evaluate_brute(css, evo);
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

ScalarMinimum minimize_squeezing(Engine engine, const CssParams<double>& css, double gamma, double tol) {
  const double t_min = t_min_closed_form(css);
  return golden_section_minimize(
      [&](double tau) { return xi_k2_at(engine, css, EvolutionParams<double>(tau, gamma)); }, 0.0,
      3.0 * t_min, tol);
}

}  // namespace oat
