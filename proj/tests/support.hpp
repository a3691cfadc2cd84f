#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oat/brute.hpp"
#include "oat/engine.hpp"
#include "oat/qfi.hpp"

namespace oat::test {

inline constexpr double kPi = std::numbers::pi;

inline double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

/// |a - b| / max(1, |a|, |b|)
inline double mixed_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_abs(const ComplexMatrix<double>& m) { return m.cwiseAbs().maxCoeff(); }

inline Vector3<double> random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector3<double> v;
  do {
    v = Vector3<double>(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline CssParams<double> random_css(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ph(0.0, 2.0 * kPi);
  return {th(rng), ph(rng), SpinSize(n)};
}

/// Random full-rank density matrix W W^dagger / Tr.
inline DensityMatrix<double> random_density(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  const Index d = n + 1;
  ComplexMatrix<double> w(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k) w(i, k) = Complex<double>(g(rng), g(rng));
  ComplexMatrix<double> rho = w * w.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix<double>(SpinSize(n), rho);
}

inline DensityMatrix<double> dephased_css(const CssParams<double>& css, double tau, double gamma) {
  return evolve_dephased(DensityMatrix<double>::from_pure(build_css(css)), EvolutionParams<double>(tau, gamma));
}

/// Var(J_n) on a pure state via the dense direction operator.
inline double variance_along(const DickeVector<double>& psi, const Vector3<double>& n) {
  const ComplexMatrix<double> jn = direction_operator(psi.size(), n);
  const double mean = expectation(psi, jn).real();
  const ComplexMatrix<double> jn2 = jn * jn;
  return expectation(psi, jn2).real() - mean * mean;
}

inline double variance_along(const DensityMatrix<double>& rho, const Vector3<double>& n) {
  const ComplexMatrix<double> jn = direction_operator(rho.size(), n);
  const double mean = expectation(rho, jn).real();
  const ComplexMatrix<double> jn2 = jn * jn;
  return expectation(rho, jn2).real() - mean * mean;
}

}  // namespace oat::test
