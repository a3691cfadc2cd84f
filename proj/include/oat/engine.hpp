#pragma once

// Two independent evaluation paths for the same metrics: closed-form
// moments (analytic) and direct Dicke-basis expectations (brute).

#include <functional>
#include <string_view>

#include "oat/brute.hpp"
#include "oat/qfi.hpp"

namespace oat {

enum class Engine { Analytic, Brute };

std::string_view to_string(Engine engine) noexcept;

/// Largest N the dense (N+1)x(N+1) density-matrix paths accept.
inline constexpr int kDenseParticleLimit = 4096;

struct EngineResult {
  MomentSet<double> moments;
  MeanSpinFrame<double> frame;
  CovarianceMatrix3<double> cov;
  TransverseExtrema<double> extrema;
  MetricReport<double> report;
};

/// Closed-form moments and covariance. For gamma > 0 the maximal QFI needs the
/// full mixed state, which is built from the closed-form propagator.
EngineResult evaluate_analytic(const CssParams<double>& css, const EvolutionParams<double>& evo);

/// Explicit state evolution and direct expectation values. For gamma > 0 the
/// maximal QFI comes from the SLD information matrix.
EngineResult evaluate_brute(const CssParams<double>& css, const EvolutionParams<double>& evo);

EngineResult evaluate(Engine engine, const CssParams<double>& css, const EvolutionParams<double>& evo);

struct ScalarMinimum {
  double x{};
  double value{};
};

/// Golden-section search for a minimum of f on [lo, hi], stopping when the
/// bracket is narrower than tol.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol);

/// Numerical minimum of xi_K^2(tau) on (0, 3 t_min], seeded by the
/// closed-form minimum time.
ScalarMinimum minimize_squeezing(Engine engine, const CssParams<double>& css, double gamma,
                                 double tol = 1e-10);

}  // namespace oat
