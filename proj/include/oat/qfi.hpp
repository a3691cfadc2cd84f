#pragma once

// Quantum Fisher information for rotations generated by J_n, the optimal
// generator direction, and the precision / squeezing figures derived from it.

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "oat/frame.hpp"

namespace oat {

template <typename Scalar>
struct QfiMax {
  Scalar f_max{};
  SpinDirection<Scalar> n_opt{Scalar(0), Scalar(0), Scalar(1)};
};

template <typename Scalar>
struct MetricReport {
  Scalar f_max{};
  SpinDirection<Scalar> n_opt{Scalar(0), Scalar(0), Scalar(1)};
  Scalar chi2{};
  Scalar xi_k2{};
  Scalar xi_w2{};
  Scalar v_plus{};
  Scalar v_minus{};
  bool degenerate_frame{false};
  /// chi2 < 1 witnesses particle entanglement.
  bool entangled{false};
};

template <typename Scalar>
struct QcrbResult {
  Scalar delta_phi{};
  long long repetitions{1};
};

template <typename Scalar>
struct SqueezingParams {
  Scalar xi_k2{};
  Scalar xi_w2{};
};

inline constexpr double kPositivityFloor = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;

namespace detail {

/// Flip so the first component with magnitude above the floor is positive.
template <typename Scalar>
Vector3<Scalar> canonical_sign(Vector3<Scalar> v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > Scalar(1e-12)) {
      if (v[i] < Scalar(0)) v = -v;
      break;
    }
  }
  return v;
}

template <typename Scalar>
QfiMax<Scalar> top_eigenpair(const Matrix3<Scalar>& m, const Matrix3<Scalar>& basis, Scalar scale) {
  Eigen::SelfAdjointEigenSolver<Matrix3<Scalar>> solver(m);
  // eigenvalues ascend; ties resolve to the last column
  const Vector3<Scalar> local = solver.eigenvectors().col(2);
  return QfiMax<Scalar>{scale * solver.eigenvalues()[2],
                        SpinDirection<Scalar>::normalized(canonical_sign<Scalar>(basis * local))};
}

/// Collective operator applied to every column of v, O(N^2).
template <typename Scalar>
ComplexMatrix<Scalar> apply_collective_columns(SpinSize size, SpinComponent which,
                                               const ComplexMatrix<Scalar>& v) {
  ComplexMatrix<Scalar> out(v.rows(), v.cols());
  for (Index c = 0; c < v.cols(); ++c) {
    out.col(c) = apply_collective<Scalar>(size, which, v.col(c));
  }
  return out;
}

}  // namespace detail

/// Eigenpairs of a density matrix after positivity validation, plus the
/// collective operators rotated into its eigenbasis.
template <typename Scalar>
struct SpectralState {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p;
  ComplexMatrix<Scalar> vectors;
  ComplexMatrix<Scalar> jx, jy, jz;  // V^dagger J_alpha V
  Scalar cutoff{};

  explicit SpectralState(const DensityMatrix<Scalar>& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(rho.entries());
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::InvalidState, "density matrix diagonalization failed");
    }
    p = solver.eigenvalues();
    if (p.minCoeff() < -Scalar(kPositivityFloor)) {
      throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
    p = p.cwiseMax(Scalar(0));
    vectors = solver.eigenvectors();
    cutoff = Scalar(kSupportCutoff) * p.maxCoeff();
    const SpinSize& size = rho.size();
    const ComplexMatrix<Scalar> plus =
        vectors.adjoint() * detail::apply_collective_columns(size, SpinComponent::Plus, vectors);
    jx = (plus + plus.adjoint()) / Scalar(2);
    jy = (plus - plus.adjoint()) / Complex<Scalar>(0, 2);
    jz = vectors.adjoint() * detail::apply_collective_columns(size, SpinComponent::Z, vectors);
  }

  /// (p_i - p_j)^2 / (p_i + p_j) on the support, zero elsewhere.
  Scalar weight(Index i, Index k) const {
    const Scalar sum = p[i] + p[k];
    if (!(sum > cutoff)) return Scalar(0);
    const Scalar diff = p[i] - p[k];
    return diff * diff / sum;
  }
};

/// 4 * largest eigenvalue of the frame covariance; n_opt is returned in lab
/// coordinates.
template <typename Scalar>
QfiMax<Scalar> qfi_pure_max(const CovarianceMatrix3<Scalar>& cov) {
  return detail::top_eigenpair(cov.entries, cov.basis, Scalar(4));
}

/// 4 max(V+, Var(J_n3)).
template <typename Scalar>
Scalar qfi_pure_simplified(const TransverseExtrema<Scalar>& extrema, const CovarianceMatrix3<Scalar>& cov) {
  return Scalar(4) * std::max(extrema.v_plus, cov.entries(2, 2));
}

/// F = 2 sum_{ij} (p_i - p_j)^2 / (p_i + p_j) |<i|J_n|j>|^2
template <typename Scalar>
Scalar qfi_mixed(const SpectralState<Scalar>& spec, const SpinDirection<Scalar>& n) {
  const ComplexMatrix<Scalar> jn = n.x() * spec.jx + n.y() * spec.jy + n.z() * spec.jz;
  Scalar f = 0;
  for (Index k = 0; k < jn.cols(); ++k) {
    for (Index i = 0; i < jn.rows(); ++i) {
      f += spec.weight(i, k) * std::norm(jn(i, k));
    }
  }
  return Scalar(2) * f;
}

template <typename Scalar>
Scalar qfi_mixed(const DensityMatrix<Scalar>& rho, const SpinDirection<Scalar>& n) {
  return qfi_mixed(SpectralState<Scalar>(rho), n);
}

/// Lab-frame matrix C with F(n) = 4 n C n^T; reduces to the covariance
/// matrix of (Jx, Jy, Jz) for pure states.
template <typename Scalar>
Matrix3<Scalar> mixed_information_matrix(const SpectralState<Scalar>& spec) {
  const ComplexMatrix<Scalar>* ops[3] = {&spec.jx, &spec.jy, &spec.jz};
  Matrix3<Scalar> c = Matrix3<Scalar>::Zero();
  const Index d = spec.p.size();
  for (Index k = 0; k < d; ++k) {
    for (Index i = 0; i < d; ++i) {
      const Scalar w = spec.weight(i, k);
      if (w == Scalar(0)) continue;
      for (int a = 0; a < 3; ++a) {
        const Complex<Scalar> ea = (*ops[a])(i, k);
        for (int b = a; b < 3; ++b) {
          c(a, b) += w * (ea * std::conj((*ops[b])(i, k))).real();
        }
      }
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) c(b, a) = c(a, b) *= Scalar(0.5);
  }
  return c;
}

template <typename Scalar>
QfiMax<Scalar> qfi_mixed_max(const SpectralState<Scalar>& spec) {
  return detail::top_eigenpair(mixed_information_matrix(spec), Matrix3<Scalar>(Matrix3<Scalar>::Identity()), Scalar(4));
}

template <typename Scalar>
QfiMax<Scalar> qfi_mixed_max(const DensityMatrix<Scalar>& rho) {
  return qfi_mixed_max(SpectralState<Scalar>(rho));
}

template <typename Scalar>
struct SldResult {
  ComplexMatrix<Scalar> L;  // Dicke basis
  Scalar information{};     // Tr(rho L^2)
};

namespace detail {

template <typename Scalar>
ComplexMatrix<Scalar> sld_from_spectrum(const SpectralState<Scalar>& spec, const Vector3<Scalar>& n) {
  const Index d = spec.p.size();
  const ComplexMatrix<Scalar> jn = n.x() * spec.jx + n.y() * spec.jy + n.z() * spec.jz;
  const Complex<Scalar> minus_i(0, -1);
  ComplexMatrix<Scalar> l_eig = ComplexMatrix<Scalar>::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    for (Index i = 0; i < d; ++i) {
      const Scalar sum = spec.p[i] + spec.p[k];
      if (!(sum > spec.cutoff)) continue;
      // (d rho)_{ik} = -i (J_n)_{ik} (p_k - p_i)
      l_eig(i, k) = Scalar(2) * minus_i * jn(i, k) * (spec.p[k] - spec.p[i]) / sum;
    }
  }
  return spec.vectors * l_eig * spec.vectors.adjoint();
}

// Tr(A B) without forming the product.
template <typename Scalar>
Complex<Scalar> trace_of_product(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b) {
  return a.transpose().cwiseProduct(b).sum();
}

}  // namespace detail

/// Solves d rho / d phi = (L rho + rho L) / 2 with d rho / d phi = -i[J_n, rho]
/// in the eigenbasis of rho, then evaluates Tr(rho L^2) back in the Dicke basis.
template <typename Scalar>
SldResult<Scalar> sld_oracle(const DensityMatrix<Scalar>& rho, const SpinDirection<Scalar>& n) {
  const SpectralState<Scalar> spec(rho);
  SldResult<Scalar> out;
  out.L = detail::sld_from_spectrum(spec, n.components());
  const ComplexMatrix<Scalar> rho_l = rho.entries() * out.L;
  out.information = detail::trace_of_product(rho_l, out.L).real();
  return out;
}

/// QFI matrix M with F(n) = n M n^T from the SLDs of Jx, Jy, Jz:
/// M_ab = Re Tr(rho L_a L_b).
template <typename Scalar>
Matrix3<Scalar> sld_information_matrix(const DensityMatrix<Scalar>& rho) {
  const SpectralState<Scalar> spec(rho);
  ComplexMatrix<Scalar> ls[3];
  ComplexMatrix<Scalar> rho_ls[3];
  for (int a = 0; a < 3; ++a) {
    ls[a] = detail::sld_from_spectrum(spec, Vector3<Scalar>(Vector3<Scalar>::Unit(a)));
    rho_ls[a] = rho.entries() * ls[a];
  }
  Matrix3<Scalar> m;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      m(a, b) = m(b, a) = detail::trace_of_product(rho_ls[a], ls[b]).real();
    }
  }
  return m;
}

template <typename Scalar>
Scalar chi2(Scalar f, SpinSize size) {
  if (!(f > Scalar(0))) {
    throw Error(ErrorCode::NonPositiveInformation, "Fisher information must be positive");
  }
  return Scalar(size.particles()) / f;
}

template <typename Scalar>
QcrbResult<Scalar> qcrb(Scalar f, long long repetitions) {
  if (!(f > Scalar(0))) {
    throw Error(ErrorCode::NonPositiveInformation, "Fisher information must be positive");
  }
  if (repetitions < 1) {
    throw Error(ErrorCode::InvalidConfig, "repetitions must be >= 1");
  }
  return QcrbResult<Scalar>{Scalar(1) / std::sqrt(Scalar(repetitions) * f), repetitions};
}

/// xi_K^2 = V- / (N/4) and xi_W^2 = N V- / R^2. Both are NaN when the mean
/// spin vanishes and the transverse plane is undefined.
template <typename Scalar>
SqueezingParams<Scalar> squeezing_params(const TransverseExtrema<Scalar>& extrema,
                                         const MeanSpinFrame<Scalar>& frame, SpinSize size) {
  if (frame.degenerate) {
    const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    return {nan, nan};
  }
  const Scalar n = Scalar(size.particles());
  return {Scalar(4) * extrema.v_minus / n, n * extrema.v_minus / (frame.R * frame.R)};
}

/// Short-time, large-N location of the xi_K^2 minimum (in tau = kappa t).
template <typename Scalar>
Scalar t_min_closed_form(const CssParams<Scalar>& css) {
  const Scalar s = std::sin(css.theta0);
  const Scalar c = std::cos(css.theta0);
  if (!(std::abs(s) > Scalar(1e-12))) {
    throw Error(ErrorCode::DegenerateInitialState, "t_min undefined for a polar coherent state");
  }
  const Scalar j = css.size.template j<Scalar>();
  return std::pow(Scalar(3), Scalar(1) / Scalar(6)) *
         std::pow(Scalar(2) * j * s * s, Scalar(-2) / Scalar(3)) /
         std::pow(Scalar(1) + Scalar(9) * j * s * s * c * c, Scalar(1) / Scalar(6));
}

}  // namespace oat
