#pragma once

// One-axis twisting H = kappa Jz^2 with optional Jz dephasing. Time is the
// dimensionless tau = kappa t and the dephasing ratio is gamma = Gamma / kappa.

#include <cmath>

#include "oat/dicke.hpp"

namespace oat {

template <typename Scalar>
struct EvolutionParams {
  Scalar tau{0};
  Scalar gamma{0};

  EvolutionParams() = default;
  explicit EvolutionParams(Scalar tau_, Scalar gamma_ = Scalar(0)) : tau(tau_), gamma(gamma_) {
    if (!std::isfinite(tau) || !std::isfinite(gamma) || tau < Scalar(0) || gamma < Scalar(0)) {
      throw Error(ErrorCode::InvalidConfig, "tau and gamma must be finite and non-negative");
    }
  }
};

/// c_m(tau) = c_m(0) exp(-i m^2 tau)
template <typename Scalar>
DickeVector<Scalar> evolve_pure(const DickeVector<Scalar>& psi0, Scalar tau) {
  const SpinSize& size = psi0.size();
  ComplexVector<Scalar> amp = psi0.amplitudes();
  for (Index k = 0; k < size.dim(); ++k) {
    const Scalar m = size.template m<Scalar>(k);
    amp[k] *= std::polar(Scalar(1), -m * m * tau);
  }
  return DickeVector<Scalar>(size, std::move(amp));
}

/// rho_{m,n}(tau) = rho_{m,n}(0) exp(i(n^2 - m^2) tau - (m - n)^2 gamma tau)
template <typename Scalar>
DensityMatrix<Scalar> evolve_dephased(const DensityMatrix<Scalar>& rho0,
                                      const EvolutionParams<Scalar>& evo) {
  const SpinSize& size = rho0.size();
  const Index d = size.dim();
  ComplexMatrix<Scalar> out = rho0.entries();
  for (Index col = 0; col < d; ++col) {
    const Scalar n = size.template m<Scalar>(col);
    for (Index row = 0; row < d; ++row) {
      const Scalar m = size.template m<Scalar>(row);
      const Scalar dm = m - n;
      out(row, col) *= std::polar(std::exp(-dm * dm * evo.gamma * evo.tau), (n * n - m * m) * evo.tau);
    }
  }
  return DensityMatrix<Scalar>(size, std::move(out));
}

/// Right-hand side of d rho / d tau = i[rho, Jz^2] + gamma (2 Jz rho Jz - rho Jz^2 - Jz^2 rho).
/// Diagnostic only; the production path is the closed-form propagator.
template <typename Scalar>
ComplexMatrix<Scalar> lindblad_rhs(const DensityMatrix<Scalar>& rho,
                                   const EvolutionParams<Scalar>& evo) {
  const SpinSize& size = rho.size();
  const ComplexMatrix<Scalar> jz = collective_operator<Scalar>(size, SpinComponent::Z);
  const ComplexMatrix<Scalar> jz2 = jz * jz;
  const ComplexMatrix<Scalar>& r = rho.entries();
  const Complex<Scalar> i(0, 1);
  return i * (r * jz2 - jz2 * r) +
         evo.gamma * (Scalar(2) * jz * r * jz - r * jz2 - jz2 * r);
}

}  // namespace oat
