#pragma once

// Closed-form collective-spin expectations for a twisted (and optionally
// dephased) coherent spin state. Everything downstream of the covariance
// matrix is a function of these six numbers.

#include <cmath>
#include <numbers>

#include "oat/dicke.hpp"
#include "oat/dynamics.hpp"

namespace oat {

template <typename Scalar>
struct MomentSet {
  Scalar j2{};            // <J^2>
  Scalar jz{};            // <Jz>
  Scalar jz2{};           // <Jz^2>
  Complex<Scalar> jp{};   // <J+>
  Complex<Scalar> jp2{};  // <J+^2>
  Complex<Scalar> jp_jz{};  // <J+(2Jz + 1)>
};

template <typename Scalar>
struct PolarDecomposition {
  Scalar r{};
  Scalar phi{};
  bool degenerate{false};
};

/// Coherences with |m - n| = delta_m decay as exp(-delta_m^2 gamma tau).
template <typename Scalar>
Scalar dephasing_attenuation(int delta_m, const EvolutionParams<Scalar>& evo) {
  const Scalar d = Scalar(delta_m);
  return std::exp(-d * d * evo.gamma * evo.tau);
}

/// Continuous argument of cos(x) + i c sin(x), unwrapped across the branch
/// cut of atan2 so that it has no 2 pi jumps as x grows.
template <typename Scalar>
Scalar twist_phase(Scalar c, Scalar x) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const Scalar turns = std::round(x / two_pi);
  const Scalar xr = x - two_pi * turns;
  const Scalar base = std::atan2(c * std::sin(xr), std::cos(xr));
  return base + (c < Scalar(0) ? -two_pi : two_pi) * turns;
}

namespace detail {

// (cos x + i c sin x)^k for integer k >= 0 in modulus-argument form.
template <typename Scalar>
Complex<Scalar> twist_power(Scalar c, Scalar x, Scalar k) {
  const Scalar modulus = std::hypot(std::cos(x), c * std::sin(x));
  return std::polar(std::pow(modulus, k), k * twist_phase(c, x));
}

}  // namespace detail

template <typename Scalar>
MomentSet<Scalar> moments_analytic(const CssParams<Scalar>& css, const EvolutionParams<Scalar>& evo) {
  const Scalar j = css.size.template j<Scalar>();
  const Scalar c = std::cos(css.theta0);
  const Scalar s = std::sin(css.theta0);
  const Scalar half_mu = evo.tau;  // mu = 2 tau
  const Scalar mu = Scalar(2) * evo.tau;
  const Complex<Scalar> phase1 = std::polar(Scalar(1), css.phi0);
  const Complex<Scalar> phase2 = std::polar(Scalar(1), Scalar(2) * css.phi0);
  const Scalar pair = j * (j - Scalar(0.5));  // vanishes for a single spin

  MomentSet<Scalar> out;
  out.j2 = j * (j + Scalar(1));
  out.jz = j * c;
  out.jz2 = j / Scalar(2) + pair * c * c;

  out.jp = j * s * phase1 * detail::twist_power(c, half_mu, Scalar(2) * j - Scalar(1)) *
           dephasing_attenuation(1, evo);

  if (pair != Scalar(0)) {
    out.jp2 = pair * phase2 * s * s * detail::twist_power(c, mu, Scalar(2) * j - Scalar(2)) *
              dephasing_attenuation(2, evo);
    const Complex<Scalar> tail(c * std::cos(half_mu), std::sin(half_mu));
    // stored as <J+(2Jz+1)> = 2 <J+(Jz+1/2)>
    out.jp_jz = Scalar(2) * pair * s * phase1 *
                detail::twist_power(c, half_mu, Scalar(2) * j - Scalar(2)) * tail *
                dephasing_attenuation(1, evo);
  }
  return out;
}

inline constexpr double kPolarDegenerateFloor = 1e-14;

template <typename Scalar>
PolarDecomposition<Scalar> polar_decompose(const MomentSet<Scalar>& moments) {
  PolarDecomposition<Scalar> out;
  out.r = std::abs(moments.jp);
  if (out.r < Scalar(kPolarDegenerateFloor)) {
    out.phi = Scalar(0);
    out.degenerate = true;
  } else {
    out.phi = std::arg(moments.jp);
  }
  return out;
}

/// r and phi of <J+> from their closed forms; phi is the unwrapped azimuth
/// phi0 + (2j - 1) * arg(cos(mu/2) + i cos(theta0) sin(mu/2)).
template <typename Scalar>
PolarDecomposition<Scalar> polar_closed_form(const CssParams<Scalar>& css,
                                             const EvolutionParams<Scalar>& evo) {
  const Scalar j = css.size.template j<Scalar>();
  const Scalar s = std::sin(css.theta0);
  const Scalar sh = std::sin(evo.tau);
  PolarDecomposition<Scalar> out;
  out.r = j * s * std::pow(Scalar(1) - s * s * sh * sh, j - Scalar(0.5)) *
          dephasing_attenuation(1, evo);
  out.phi = css.phi0 + (Scalar(2) * j - Scalar(1)) * twist_phase(std::cos(css.theta0), evo.tau);
  out.degenerate = out.r < Scalar(kPolarDegenerateFloor);
  return out;
}

}  // namespace oat
