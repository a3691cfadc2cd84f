#pragma once

// Direct Dicke-basis expectation values. These never touch the closed-form
// moment expressions and serve as the reference engine.

#include <array>

#include <Eigen/Eigenvalues>

#include "oat/frame.hpp"

namespace oat {

namespace detail {

// Tr(rho A) = sum_c (A rho[:, c])[c], with A applied column-wise in O(N).
template <typename Scalar, typename Op>
Complex<Scalar> trace_applied(const DensityMatrix<Scalar>& rho, Op&& apply) {
  Complex<Scalar> acc(0);
  const ComplexMatrix<Scalar>& r = rho.entries();
  for (Index c = 0; c < r.cols(); ++c) {
    const ComplexVector<Scalar> col = r.col(c);
    acc += apply(col)[c];
  }
  return acc;
}

}  // namespace detail

template <typename Scalar>
MomentSet<Scalar> moments_brute(const DickeVector<Scalar>& psi) {
  const SpinSize& size = psi.size();
  const ComplexVector<Scalar>& c = psi.amplitudes();
  const ComplexVector<Scalar> jx = apply_collective<Scalar>(size, SpinComponent::X, c);
  const ComplexVector<Scalar> jy = apply_collective<Scalar>(size, SpinComponent::Y, c);
  const ComplexVector<Scalar> jz = apply_collective<Scalar>(size, SpinComponent::Z, c);
  const ComplexVector<Scalar> jp = apply_collective<Scalar>(size, SpinComponent::Plus, c);
  MomentSet<Scalar> out;
  out.j2 = jx.squaredNorm() + jy.squaredNorm() + jz.squaredNorm();
  out.jz = c.dot(jz).real();
  out.jz2 = jz.squaredNorm();
  out.jp = c.dot(jp);
  out.jp2 = c.dot(apply_collective<Scalar>(size, SpinComponent::Plus, jp));
  out.jp_jz = c.dot(apply_collective<Scalar>(size, SpinComponent::Plus, ComplexVector<Scalar>(Scalar(2) * jz + c)));
  return out;
}

template <typename Scalar>
MomentSet<Scalar> moments_brute(const DensityMatrix<Scalar>& rho) {
  const SpinSize size = rho.size();
  auto op = [&](SpinComponent w) {
    return [size, w](const ComplexVector<Scalar>& v) { return apply_collective<Scalar>(size, w, v); };
  };
  const auto jx = op(SpinComponent::X), jy = op(SpinComponent::Y), jz = op(SpinComponent::Z);
  const auto jp = op(SpinComponent::Plus);
  MomentSet<Scalar> out;
  out.j2 = (detail::trace_applied(rho, [&](const auto& v) { return jx(jx(v)); }) +
            detail::trace_applied(rho, [&](const auto& v) { return jy(jy(v)); }) +
            detail::trace_applied(rho, [&](const auto& v) { return jz(jz(v)); }))
               .real();
  out.jz = detail::trace_applied(rho, jz).real();
  out.jz2 = detail::trace_applied(rho, [&](const auto& v) { return jz(jz(v)); }).real();
  out.jp = detail::trace_applied(rho, jp);
  out.jp2 = detail::trace_applied(rho, [&](const auto& v) { return jp(jp(v)); });
  out.jp_jz = detail::trace_applied(rho, [&](const auto& v) {
    return jp(ComplexVector<Scalar>(Scalar(2) * jz(v) + v));
  });
  return out;
}

/// Lab-frame covariance Cov(J_a, J_b) = <{J_a, J_b}>/2 - <J_a><J_b>.
template <typename Scalar>
Matrix3<Scalar> lab_covariance(const DickeVector<Scalar>& psi) {
  const SpinSize& size = psi.size();
  const ComplexVector<Scalar>& c = psi.amplitudes();
  const std::array<ComplexVector<Scalar>, 3> v = {
      apply_collective<Scalar>(size, SpinComponent::X, c),
      apply_collective<Scalar>(size, SpinComponent::Y, c),
      apply_collective<Scalar>(size, SpinComponent::Z, c)};
  Vector3<Scalar> mean;
  for (int a = 0; a < 3; ++a) mean[a] = c.dot(v[a]).real();
  Matrix3<Scalar> cov;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      // <J_a J_b> = (J_a psi)^dagger (J_b psi)
      cov(a, b) = cov(b, a) = v[a].dot(v[b]).real() - mean[a] * mean[b];
    }
  }
  return cov;
}

template <typename Scalar>
Matrix3<Scalar> lab_covariance(const DensityMatrix<Scalar>& rho) {
  const SpinSize size = rho.size();
  const SpinComponent comps[3] = {SpinComponent::X, SpinComponent::Y, SpinComponent::Z};
  auto apply = [size](SpinComponent w, const ComplexVector<Scalar>& v) {
    return apply_collective<Scalar>(size, w, v);
  };
  Vector3<Scalar> mean;
  for (int a = 0; a < 3; ++a) {
    mean[a] = detail::trace_applied(rho, [&](const auto& v) { return apply(comps[a], v); }).real();
  }
  Matrix3<Scalar> cov;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const Complex<Scalar> ab = detail::trace_applied(
          rho, [&](const auto& v) { return apply(comps[a], apply(comps[b], v)); });
      cov(a, b) = cov(b, a) = ab.real() - mean[a] * mean[b];
    }
  }
  return cov;
}

/// Lab covariance rotated into a frame: O^T C O with O = [n1 n2 n3].
template <typename Scalar>
CovarianceMatrix3<Scalar> frame_covariance(const Matrix3<Scalar>& lab, const MeanSpinFrame<Scalar>& frame) {
  CovarianceMatrix3<Scalar> out;
  out.basis = frame.basis();
  out.entries = out.basis.transpose() * lab * out.basis;
  out.degenerate = frame.degenerate;
  return out;
}

/// V+- from the eigenvalues of the transverse 2x2 block; the coefficients
/// use C = Var(J_n1) + Var(J_n2).
template <typename Scalar>
TransverseExtrema<Scalar> transverse_extrema_brute(const CovarianceMatrix3<Scalar>& cov) {
  const Eigen::Matrix<Scalar, 2, 2> block = cov.entries.template topLeftCorner<2, 2>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 2, 2>> solver(block);
  TransverseExtrema<Scalar> out;
  out.v_minus = solver.eigenvalues()[0];
  out.v_plus = solver.eigenvalues()[1];
  out.a_coef = block(0, 0) - block(1, 1);
  out.b_coef = Scalar(2) * block(0, 1);
  out.c_coef = block(0, 0) + block(1, 1);
  const Eigen::Matrix<Scalar, 2, 1> low = solver.eigenvectors().col(0);
  out.theta_sq = std::atan2(low[1], low[0]);
  out.delta = std::atan2(out.b_coef, out.a_coef) / Scalar(2);
  return out;
}

}  // namespace oat
