#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"

using namespace oat;
using oat::test::kPi;
using oat::test::max_abs;

TEST_CASE("EvolutionParams validation") {
  CHECK_NOTHROW(EvolutionParams<double>(0.0, 0.0));
  CHECK_THROWS_AS(EvolutionParams<double>(-0.1, 0.0), Error);
  CHECK_THROWS_AS(EvolutionParams<double>(0.1, -1.0), Error);
  CHECK_THROWS_AS(EvolutionParams<double>(std::nan(""), 0.0), Error);
  CHECK_THROWS_AS(EvolutionParams<double>(0.1, INFINITY), Error);
}

TEST_CASE("evolve_pure") {
  const CssParams<double> css{kPi / 2, 0.0, SpinSize(4)};
  const auto psi0 = build_css(css);
  CHECK((evolve_pure(psi0, 0.0).amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() == 0.0);

  const auto psi = evolve_pure(psi0, 0.3);
  CHECK((psi.amplitudes().cwiseAbs() - psi0.amplitudes().cwiseAbs()).cwiseAbs().maxCoeff() < 1e-15);

  // dense exp(-i tau Jz^2) oracle
  const auto jz = collective_operator<double>(css.size, SpinComponent::Z);
  const ComplexMatrix<double> h = jz * jz;
  const ComplexMatrix<double> u = (Complex<double>(0, -0.3) * h).exp();
  const ComplexVector<double> expected = u * psi0.amplitudes();
  CHECK((expected - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evolve_dephased") {
  std::mt19937_64 rng(21);
  const auto css = oat::test::random_css(rng, 7);
  const auto psi0 = build_css(css);
  const auto rho0 = DensityMatrix<double>::from_pure(psi0);

  SUBCASE("gamma = 0 matches the pure evolution") {
    const auto psi = evolve_pure(psi0, 0.77);
    const auto rho = evolve_dephased(rho0, EvolutionParams<double>(0.77, 0.0));
    const ComplexMatrix<double> expected = psi.amplitudes() * psi.amplitudes().adjoint();
    CHECK(max_abs(rho.entries() - expected) < 1e-12);
  }
  SUBCASE("populations unchanged, coherences damped") {
    const auto rho = evolve_dephased(rho0, EvolutionParams<double>(0.4, 0.2));
    for (Index k = 0; k < rho.entries().rows(); ++k) CHECK(rho(k, k) == rho0(k, k));
    CHECK(max_abs(rho.entries() - rho.entries().adjoint()) == 0.0);
    const auto late = evolve_dephased(rho0, EvolutionParams<double>(200.0, 1.0));
    ComplexMatrix<double> diag = rho0.entries().diagonal().asDiagonal();
    CHECK(max_abs(late.entries() - diag) < 1e-15);
  }
  SUBCASE("semigroup") {
    for (double gamma : {0.0, 0.05, 0.5}) {
      const auto a = evolve_dephased(evolve_dephased(rho0, EvolutionParams<double>(0.3, gamma)),
                                     EvolutionParams<double>(0.45, gamma));
      const auto b = evolve_dephased(rho0, EvolutionParams<double>(0.75, gamma));
      CHECK(max_abs(a.entries() - b.entries()) < 1e-12);
    }
  }
  SUBCASE("positivity, energy conservation and purity decay") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 19;
      const auto rho = oat::test::random_density(rng, n);
      const auto jz = collective_operator<double>(rho.size(), SpinComponent::Z);
      const ComplexMatrix<double> jz2 = jz * jz;
      const double energy0 = expectation(rho, jz2).real();
      double purity_prev = (rho.entries() * rho.entries()).trace().real();
      const double gamma = 0.1 + 0.2 * (trial % 5);
      for (double tau : {0.5, 2.0, 10.0, 50.0}) {
        if (gamma * tau > 10.0) break;
        const auto out = evolve_dephased(rho, EvolutionParams<double>(tau, gamma));
        Eigen::SelfAdjointEigenSolver<ComplexMatrix<double>> es(out.entries());
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        CHECK(std::abs(expectation(out, jz2).real() - energy0) < 1e-12 * std::max(1.0, energy0));
        const double purity = (out.entries() * out.entries()).trace().real();
        CHECK(purity <= purity_prev + 1e-14);
        purity_prev = purity;
      }
    }
  }
}

TEST_CASE("lindblad_rhs") {
  std::mt19937_64 rng(8);
  SUBCASE("diagonal states are fixed points") {
    ComplexMatrix<double> d = ComplexMatrix<double>::Zero(5, 5);
    d.diagonal() << 0.1, 0.2, 0.3, 0.15, 0.25;
    const DensityMatrix<double> rho(SpinSize(4), d);
    CHECK(max_abs(lindblad_rhs(rho, EvolutionParams<double>(0.0, 0.3))) == 0.0);
  }
  SUBCASE("traceless") {
    const auto rho = oat::test::random_density(rng, 8);
    CHECK(std::abs(lindblad_rhs(rho, EvolutionParams<double>(0.0, 0.7)).trace()) < 1e-13);
  }
  SUBCASE("closed form satisfies the master equation") {
    const auto css = oat::test::random_css(rng, 6);
    const auto rho0 = DensityMatrix<double>::from_pure(build_css(css));
    const double gamma = 0.15, tau = 0.6, h = 1e-5;
    const auto plus = evolve_dephased(rho0, EvolutionParams<double>(tau + h, gamma));
    const auto minus = evolve_dephased(rho0, EvolutionParams<double>(tau - h, gamma));
    const ComplexMatrix<double> fd = (plus.entries() - minus.entries()) / (2 * h);
    const auto mid = evolve_dephased(rho0, EvolutionParams<double>(tau, gamma));
    CHECK(max_abs(fd - lindblad_rhs(mid, EvolutionParams<double>(tau, gamma))) < 1e-6);
  }
}
