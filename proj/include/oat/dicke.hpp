#pragma once

// Symmetric (j = N/2) Dicke-basis states and collective spin operators.
// Amplitudes are indexed k = 0..N with m = j - k, so index 0 is m = +j.

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "oat/error.hpp"

namespace oat {

using Eigen::Index;

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

inline constexpr double kStateTolerance = 1e-12;

class SpinSize {
 public:
  explicit SpinSize(int n_particles) : n_(n_particles) {
    if (n_particles < 1) {
      throw Error(ErrorCode::InvalidConfig, "particle number must be >= 1");
    }
  }

  int particles() const noexcept { return n_; }
  Index dim() const noexcept { return static_cast<Index>(n_) + 1; }

  template <typename Scalar = double>
  Scalar j() const noexcept {
    return Scalar(n_) / Scalar(2);
  }

  /// Magnetic quantum number of basis index k (descending: m = j - k).
  template <typename Scalar = double>
  Scalar m(Index k) const noexcept {
    return j<Scalar>() - Scalar(k);
  }

  friend bool operator==(const SpinSize&, const SpinSize&) = default;

 private:
  int n_;
};

template <typename Scalar>
class DickeVector {
 public:
  DickeVector(SpinSize size, ComplexVector<Scalar> amplitudes)
      : size_(size), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != size_.dim()) {
      throw Error(ErrorCode::ShapeViolation, "amplitude count must be N+1");
    }
    const Scalar norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - Scalar(1)) <= Scalar(kStateTolerance))) {
      throw Error(ErrorCode::InvalidState, "Dicke vector is not normalized");
    }
  }

  const SpinSize& size() const noexcept { return size_; }
  const ComplexVector<Scalar>& amplitudes() const noexcept { return amplitudes_; }
  Complex<Scalar> operator[](Index k) const { return amplitudes_[k]; }

 private:
  SpinSize size_;
  ComplexVector<Scalar> amplitudes_;
};

/// Hermitian, unit-trace density matrix. Positivity is checked by consumers
/// that need it (the QFI routines), since it costs an eigendecomposition.
template <typename Scalar>
class DensityMatrix {
 public:
  DensityMatrix(SpinSize size, ComplexMatrix<Scalar> entries)
      : size_(size), entries_(std::move(entries)) {
    if (entries_.rows() != size_.dim() || entries_.cols() != size_.dim()) {
      throw Error(ErrorCode::ShapeViolation, "density matrix must be (N+1)x(N+1)");
    }
    const Scalar herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= Scalar(kStateTolerance))) {
      throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    const Complex<Scalar> tr = entries_.trace();
    if (!(std::abs(tr - Complex<Scalar>(1)) <= Scalar(kStateTolerance))) {
      throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
    }
  }

  static DensityMatrix from_pure(const DickeVector<Scalar>& psi) {
    const auto& c = psi.amplitudes();
    ComplexMatrix<Scalar> rho = c * c.adjoint();
    return DensityMatrix(psi.size(), std::move(rho));
  }

  static DensityMatrix maximally_mixed(SpinSize size) {
    ComplexMatrix<Scalar> rho = ComplexMatrix<Scalar>::Identity(size.dim(), size.dim());
    rho /= Scalar(size.dim());
    return DensityMatrix(size, std::move(rho));
  }

  const SpinSize& size() const noexcept { return size_; }
  const ComplexMatrix<Scalar>& entries() const noexcept { return entries_; }
  Complex<Scalar> operator()(Index m, Index n) const { return entries_(m, n); }

 private:
  SpinSize size_;
  ComplexMatrix<Scalar> entries_;
};

template <typename Scalar>
struct CssParams {
  Scalar theta0;
  Scalar phi0;
  SpinSize size;
};

template <typename Scalar>
class SpinDirection {
 public:
  explicit SpinDirection(const Vector3<Scalar>& n) : n_(n) {
    if (!(std::abs(n_.norm() - Scalar(1)) <= Scalar(kStateTolerance))) {
      throw Error(ErrorCode::NormViolation, "direction must have unit norm");
    }
  }

  SpinDirection(Scalar x, Scalar y, Scalar z) : SpinDirection(Vector3<Scalar>(x, y, z)) {}

  static SpinDirection normalized(const Vector3<Scalar>& v) {
    const Scalar len = v.norm();
    if (!(len > Scalar(0)) || !std::isfinite(len)) {
      throw Error(ErrorCode::NormViolation, "cannot normalize a zero vector");
    }
    return SpinDirection(Vector3<Scalar>(v / len));
  }

  const Vector3<Scalar>& components() const noexcept { return n_; }
  Scalar x() const noexcept { return n_.x(); }
  Scalar y() const noexcept { return n_.y(); }
  Scalar z() const noexcept { return n_.z(); }

 private:
  Vector3<Scalar> n_;
};

enum class SpinComponent { X, Y, Z, Plus, Minus };

namespace detail {

// Exact for n < 60 (max C(59,29) * 59 < 2^64).
inline std::uint64_t binomial_exact(int n, int k) {
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

inline constexpr int kLogBinomialThreshold = 60;

template <typename Scalar>
Scalar ladder_coefficient(Scalar j, Scalar m) {
  // <j,m+1|J+|j,m>
  return std::sqrt(j * (j + Scalar(1)) - m * (m + Scalar(1)));
}

}  // namespace detail

/// Coherent spin state |theta0, phi0> expanded in the Dicke basis.
template <typename Scalar>
DickeVector<Scalar> build_css(const CssParams<Scalar>& params) {
  using std::cos;
  using std::log;
  using std::sin;
  const int n = params.size.particles();
  const Scalar s = sin(params.theta0 / Scalar(2));
  const Scalar c = cos(params.theta0 / Scalar(2));
  ComplexVector<Scalar> amp(params.size.dim());
  for (int k = 0; k <= n; ++k) {
    // k = j - m spins flipped down
    Scalar modulus;
    if (n < detail::kLogBinomialThreshold) {
      modulus = std::sqrt(static_cast<Scalar>(detail::binomial_exact(n, k))) *
                std::pow(s, Scalar(k)) * std::pow(c, Scalar(n - k));
    } else {
      Scalar log_mod = Scalar(0.5) * (std::lgamma(Scalar(n + 1)) - std::lgamma(Scalar(k + 1)) -
                                      std::lgamma(Scalar(n - k + 1)));
      if (k > 0) log_mod += Scalar(k) * log(s);
      if (n - k > 0) log_mod += Scalar(n - k) * log(c);
      modulus = std::exp(log_mod);
    }
    amp[k] = std::polar(modulus, Scalar(k) * params.phi0);
  }
  // lgamma(N+1) carries an absolute error that grows with N and shifts every
  // log-modulus by the same amount; the exact norm is 1, so divide it out.
  if (n >= detail::kLogBinomialThreshold) amp /= amp.norm();
  return DickeVector<Scalar>(params.size, std::move(amp));
}

template <typename Scalar>
ComplexMatrix<Scalar> collective_operator(SpinSize size, SpinComponent which) {
  const Index d = size.dim();
  const Scalar j = size.template j<Scalar>();
  ComplexMatrix<Scalar> plus = ComplexMatrix<Scalar>::Zero(d, d);
  for (Index k = 1; k < d; ++k) {
    // J+ maps index k (m) to index k-1 (m+1)
    plus(k - 1, k) = detail::ladder_coefficient(j, size.template m<Scalar>(k));
  }
  switch (which) {
    case SpinComponent::Plus:
      return plus;
    case SpinComponent::Minus:
      return plus.adjoint();
    case SpinComponent::X:
      return (plus + plus.adjoint()) / Scalar(2);
    case SpinComponent::Y:
      return (plus - plus.adjoint()) / Complex<Scalar>(0, 2);
    case SpinComponent::Z: {
      ComplexMatrix<Scalar> z = ComplexMatrix<Scalar>::Zero(d, d);
      for (Index k = 0; k < d; ++k) z(k, k) = size.template m<Scalar>(k);
      return z;
    }
  }
  return plus;
}

/// Applies a collective operator to a raw amplitude vector in O(N).
template <typename Scalar>
ComplexVector<Scalar> apply_collective(SpinSize size, SpinComponent which,
                                       const ComplexVector<Scalar>& v) {
  const Index d = size.dim();
  if (v.size() != d) throw Error(ErrorCode::ShapeViolation, "vector dimension mismatch");
  const Scalar j = size.template j<Scalar>();
  ComplexVector<Scalar> up = ComplexVector<Scalar>::Zero(d);
  ComplexVector<Scalar> down = ComplexVector<Scalar>::Zero(d);
  for (Index k = 1; k < d; ++k) {
    const Scalar a = detail::ladder_coefficient(j, size.template m<Scalar>(k));
    up[k - 1] = a * v[k];
    down[k] = a * v[k - 1];
  }
  switch (which) {
    case SpinComponent::Plus: return up;
    case SpinComponent::Minus: return down;
    case SpinComponent::X: return (up + down) / Scalar(2);
    case SpinComponent::Y: return (up - down) / Complex<Scalar>(0, 2);
    case SpinComponent::Z: {
      ComplexVector<Scalar> out(d);
      for (Index k = 0; k < d; ++k) out[k] = size.template m<Scalar>(k) * v[k];
      return out;
    }
  }
  return up;
}

/// J_n = n_x Jx + n_y Jy + n_z Jz.
template <typename Scalar>
ComplexMatrix<Scalar> direction_operator(SpinSize size, const SpinDirection<Scalar>& n) {
  return n.x() * collective_operator<Scalar>(size, SpinComponent::X) +
         n.y() * collective_operator<Scalar>(size, SpinComponent::Y) +
         n.z() * collective_operator<Scalar>(size, SpinComponent::Z);
}

/// Overload taking a raw vector; checks the norm like SpinDirection does.
template <typename Scalar>
ComplexMatrix<Scalar> direction_operator(SpinSize size, const Vector3<Scalar>& n) {
  return direction_operator(size, SpinDirection<Scalar>(n));
}

template <typename Scalar>
ComplexMatrix<Scalar> casimir_operator(SpinSize size) {
  const Scalar j = size.template j<Scalar>();
  return ComplexMatrix<Scalar>::Identity(size.dim(), size.dim()) * (j * (j + Scalar(1)));
}

template <typename Scalar>
Complex<Scalar> expectation(const DickeVector<Scalar>& psi, const ComplexMatrix<Scalar>& op) {
  if (op.rows() != psi.size().dim() || op.cols() != psi.size().dim()) {
    throw Error(ErrorCode::ShapeViolation, "operator dimension does not match state");
  }
  return psi.amplitudes().dot(op * psi.amplitudes());
}

template <typename Scalar>
Complex<Scalar> expectation(const DensityMatrix<Scalar>& rho, const ComplexMatrix<Scalar>& op) {
  if (op.rows() != rho.size().dim() || op.cols() != rho.size().dim()) {
    throw Error(ErrorCode::ShapeViolation, "operator dimension does not match state");
  }
  // Tr(rho op) without forming the product
  return (rho.entries().transpose().cwiseProduct(op)).sum();
}

}  // namespace oat
