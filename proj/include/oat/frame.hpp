#pragma once

// Mean-spin frame (n1, n2, n3), the 3x3 covariance matrix expressed in it,
// and the extrema of the variance in the plane normal to the mean spin.

#include <cmath>
#include <numbers>

#include "oat/moments.hpp"

namespace oat {

template <typename Scalar>
struct MeanSpinFrame {
  SpinDirection<Scalar> n1;
  SpinDirection<Scalar> n2;
  SpinDirection<Scalar> n3;
  Scalar theta{};
  Scalar phi{};
  Scalar R{};
  bool degenerate{false};

  /// Columns are n1, n2, n3 in lab coordinates.
  Matrix3<Scalar> basis() const {
    Matrix3<Scalar> b;
    b.col(0) = n1.components();
    b.col(1) = n2.components();
    b.col(2) = n3.components();
    return b;
  }
};

template <typename Scalar>
struct CovarianceMatrix3 {
  Matrix3<Scalar> entries;  // in the (n1, n2, n3) basis
  Matrix3<Scalar> basis;    // columns n1, n2, n3
  bool degenerate{false};
};

template <typename Scalar>
struct TransverseExtrema {
  Scalar v_plus{};
  Scalar v_minus{};
  Scalar theta_sq{};  // angle of V- measured from n1 towards n2
  Scalar delta{};
  Scalar a_coef{};
  Scalar b_coef{};
  Scalar c_coef{};
};

inline constexpr double kDegenerateFrameRatio = 1e-12;

template <typename Scalar>
MeanSpinFrame<Scalar> frame_from_angles(Scalar theta, Scalar phi, Scalar R, bool degenerate) {
  const Scalar st = std::sin(theta), ct = std::cos(theta);
  const Scalar sp = std::sin(phi), cp = std::cos(phi);
  return MeanSpinFrame<Scalar>{
      SpinDirection<Scalar>(-sp, cp, Scalar(0)),
      SpinDirection<Scalar>(-ct * cp, -ct * sp, st),
      SpinDirection<Scalar>(st * cp, st * sp, ct),
      theta, phi, R, degenerate};
}

template <typename Scalar>
MeanSpinFrame<Scalar> build_frame(const MomentSet<Scalar>& moments, Scalar j) {
  const Scalar jx = moments.jp.real();
  const Scalar jy = moments.jp.imag();
  const Scalar r = std::hypot(jx, jy);
  const Scalar R = std::hypot(r, moments.jz);
  if (R < Scalar(kDegenerateFrameRatio) * j) {
    return frame_from_angles(std::numbers::pi_v<Scalar> / Scalar(2), Scalar(0), R, true);
  }
  const Scalar theta = std::atan2(r, moments.jz);
  const Scalar phi = r > Scalar(0) ? std::atan2(jy, jx) : Scalar(0);
  return frame_from_angles(theta, phi, R, false);
}

/// j is recovered from <J^2> = j(j+1).
template <typename Scalar>
MeanSpinFrame<Scalar> build_frame(const MomentSet<Scalar>& moments) {
  const Scalar j = (std::sqrt(Scalar(1) + Scalar(4) * moments.j2) - Scalar(1)) / Scalar(2);
  return build_frame(moments, j);
}

/// Frame-basis covariance assembled from the six moments. Off-diagonal
/// entries are half the anticommutator expectations, minus the product of
/// means (which vanish for a non-degenerate frame).
template <typename Scalar>
CovarianceMatrix3<Scalar> covariance_matrix(const MomentSet<Scalar>& moments,
                                            const MeanSpinFrame<Scalar>& frame) {
  const Scalar st = std::sin(frame.theta), ct = std::cos(frame.theta);
  const Scalar s2t = std::sin(Scalar(2) * frame.theta), c2t = std::cos(Scalar(2) * frame.theta);
  const Complex<Scalar> rot1 = std::polar(Scalar(1), -frame.phi);
  const Complex<Scalar> rot2 = std::polar(Scalar(1), Scalar(-2) * frame.phi);
  const Complex<Scalar> a = moments.jp * rot1;
  const Complex<Scalar> b = moments.jp2 * rot2;
  const Complex<Scalar> c = moments.jp_jz * rot1;
  const Scalar j2 = moments.j2, jz = moments.jz, jz2 = moments.jz2;
  const Scalar perp = j2 - jz2;

  const Scalar mean1 = a.imag();
  const Scalar mean2 = -ct * a.real() + st * jz;
  const Scalar mean3 = st * a.real() + ct * jz;

  const Scalar n1sq = Scalar(0.5) * perp - Scalar(0.5) * b.real();
  const Scalar n2sq = Scalar(0.5) * ct * ct * perp + st * st * jz2 +
                      Scalar(0.5) * ct * ct * b.real() - Scalar(0.5) * s2t * c.real();
  const Scalar n3sq = Scalar(0.5) * st * st * perp + ct * ct * jz2 +
                      Scalar(0.5) * st * st * b.real() + Scalar(0.5) * s2t * c.real();
  const Scalar ac12 = -ct * b.imag() + st * c.imag();
  // {J_n1, J_n3} = sin(theta) {Jy', Jx'} + cos(theta) {Jy', Jz}, so the
  // (2Jz+1) term carries cos(theta), not sin(theta).
  const Scalar ac13 = st * b.imag() + ct * c.imag();
  const Scalar ac23 = -Scalar(0.5) * s2t * (j2 - Scalar(3) * jz2 + b.real()) - c2t * c.real();

  CovarianceMatrix3<Scalar> out;
  Matrix3<Scalar>& m = out.entries;
  m(0, 0) = n1sq - mean1 * mean1;
  m(1, 1) = n2sq - mean2 * mean2;
  m(2, 2) = n3sq - mean3 * mean3;
  m(0, 1) = m(1, 0) = Scalar(0.5) * ac12 - mean1 * mean2;
  m(0, 2) = m(2, 0) = Scalar(0.5) * ac13 - mean1 * mean3;
  m(1, 2) = m(2, 1) = Scalar(0.5) * ac23 - mean2 * mean3;
  out.basis = frame.basis();
  out.degenerate = frame.degenerate;
  return out;
}

template <typename Scalar>
TransverseExtrema<Scalar> transverse_extrema(const CovarianceMatrix3<Scalar>& cov,
                                             const MomentSet<Scalar>& moments) {
  const Matrix3<Scalar>& m = cov.entries;
  const Scalar mean_sq = std::norm(moments.jp) + moments.jz * moments.jz;
  TransverseExtrema<Scalar> out;
  out.a_coef = m(0, 0) - m(1, 1);
  out.b_coef = Scalar(2) * m(0, 1);
  // j(j+1) - <J_n3^2>
  out.c_coef = moments.j2 - (m(2, 2) + mean_sq);
  const Scalar spread = std::hypot(out.a_coef, out.b_coef);
  out.v_plus = (out.c_coef + spread) / Scalar(2);
  out.v_minus = (out.c_coef - spread) / Scalar(2);
  if (out.a_coef == Scalar(0) && out.b_coef == Scalar(0)) {
    out.theta_sq = Scalar(0);
    out.delta = Scalar(0);
  } else {
    const Scalar twice = std::atan2(out.b_coef, out.a_coef);
    out.delta = twice / Scalar(2);
    out.theta_sq = (twice + std::numbers::pi_v<Scalar>) / Scalar(2);
  }
  return out;
}

/// Variance of J_n1 cos(angle) + J_n2 sin(angle) from the frame covariance.
template <typename Scalar>
Scalar transverse_variance(const CovarianceMatrix3<Scalar>& cov, Scalar angle) {
  const Scalar c = std::cos(angle), s = std::sin(angle);
  const Matrix3<Scalar>& m = cov.entries;
  return c * c * m(0, 0) + s * s * m(1, 1) + Scalar(2) * c * s * m(0, 1);
}

}  // namespace oat
