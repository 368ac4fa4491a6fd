#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "funcgauge/hamiltonian.hpp"

using namespace funcgauge;

namespace {

ComplexField random_psi(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  ComplexField psi(g.size());
  for (cplx& v : psi) v = cplx(nd(rng), nd(rng));
  normalize(psi, g);
  return psi;
}

GaugeState random_gauge(const Grid& g, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  GaugeState gs = GaugeState::zero(g);
  for (auto& l : gs.a_phi)
    for (double& v : l) v = scale * nd(rng);
  return gs;
}

ComplexField harmonic_state(const Grid& g, int n) {
  ComplexField psi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.field_value(j, 0);
    const double herm = n == 0 ? 1.0 : 2.0 * x;
    psi[j] = herm * std::exp(-x * x / 2.0);
  }
  normalize(psi, g);
  return psi;
}

}  // namespace

TEST(Hamiltonian, DiagonalMatchesFormula) {
  const Grid g(2, 0.5, 5, 1.0);
  ModelParams p;
  p.mass_m = 1.2;
  p.quartic_lambda = 0.3;
  const DiscreteHamiltonian H(g, p);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double a = g.field_value(j, 0), b = g.field_value(j, 1);
    auto V = [&](double x) { return 0.5 * 1.44 * x * x + 0.075 * x * x * x * x; };
    const double grad = 2.0 * 0.5 * std::pow((b - a) / 0.5, 2);
    EXPECT_NEAR(H.diagonal()[j], 0.5 * (grad + V(a) + V(b)), 1e-13);
  }
  // single site: no gradient energy
  const Grid g1(1, 1.0, 5, 1.0);
  const DiscreteHamiltonian H1(g1, p);
  EXPECT_NEAR(H1.diagonal()[0], 0.5 * 1.44 + 0.075, 1e-14);
}

TEST(Hamiltonian, ZeroInZeroOut) {
  const Grid g(2, 1.0, 8, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  for (const cplx& v : apply_hamiltonian(ComplexField(g.size()), random_gauge(g, 1), H)) EXPECT_EQ(v, cplx{});
}

TEST(Hamiltonian, HarmonicGroundState) {
  const Grid g(1, 1.0, 256, 8.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  const ComplexField psi = harmonic_state(g, 0);
  const ComplexField h = apply_hamiltonian(psi, GaugeState::zero(g), H);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (std::abs(g.field_value(j, 0)) < 4.0) worst = std::max(worst, std::abs(h[j] / psi[j] - 0.5) / 0.5);
  EXPECT_LT(worst, 1e-3);
}

TEST(Hamiltonian, Hermitian) {
  const Grid g(2, 0.8, 10, 2.5);
  const DiscreteHamiltonian H(g, ModelParams{});
  const GaugeState gs = random_gauge(g, 2);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const ComplexField a = random_psi(g, 10 + s), b = random_psi(g, 20 + s);
    const cplx lhs = inner(a, apply_hamiltonian(b, gs, H), g);
    const cplx rhs = std::conj(inner(b, apply_hamiltonian(a, gs, H), g));
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(DenseHamiltonian, RealWithoutConnectionAndConsistent) {
  const Grid g(2, 1.0, 9, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  const Eigen::MatrixXcd M0 = build_dense_hamiltonian(GaugeState::zero(g), H);
  EXPECT_EQ(M0.rows(), static_cast<Eigen::Index>(g.size()));
  EXPECT_EQ(M0.cols(), static_cast<Eigen::Index>(g.size()));
  EXPECT_EQ(M0.imag().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT((M0 - M0.adjoint()).cwiseAbs().maxCoeff(), 1e-12);

  const GaugeState gs = random_gauge(g, 3);
  const Eigen::MatrixXcd M = build_dense_hamiltonian(gs, H);
  EXPECT_LT((M - M.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  const ComplexField psi = random_psi(g, 4);
  const Eigen::VectorXcd y = M * Eigen::Map<const Eigen::VectorXcd>(psi.data(), psi.size());
  const ComplexField h = apply_hamiltonian(psi, gs, H);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_LT(std::abs(h[j] - y(j)), 1e-13 * y.norm());
}

TEST(DenseHamiltonian, RefusesOverCap) {
  const Grid g(2, 1.0, 20, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  EXPECT_THROW(build_dense_hamiltonian(GaugeState::zero(g), H, 100), ContractViolation);
}

TEST(Spectrum, LinearLimitLowestFour) {
  const Grid g(1, 1.0, 256, 8.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_dense_real_hamiltonian(H), Eigen::EigenvaluesOnly);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(es.eigenvalues()(n), n + 0.5, 1e-3);
}

TEST(Energy, HarmonicLevels) {
  const Grid g(1, 1.0, 256, 8.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  EXPECT_NEAR(energy_expectation(harmonic_state(g, 0), GaugeState::zero(g), H), 0.5, 1e-4);
  EXPECT_NEAR(energy_expectation(harmonic_state(g, 1), GaugeState::zero(g), H), 1.5, 1e-4);
}

TEST(Energy, RayleighQuotientOracle) {
  const Grid g(2, 1.0, 8, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  const GaugeState gs = random_gauge(g, 5, 0.5);
  const ComplexField psi = random_psi(g, 6);
  const Eigen::MatrixXcd M = build_dense_hamiltonian(gs, H);
  const Eigen::Map<const Eigen::VectorXcd> v(psi.data(), psi.size());
  const double ref = (v.dot(M * v)).real() / v.squaredNorm();
  EXPECT_NEAR(energy_expectation(psi, gs, H), ref, 1e-11 * std::abs(ref));
  const cplx e = inner(psi, apply_hamiltonian(psi, gs, H), g);
  EXPECT_LT(std::abs(e.imag()), 1e-12);
}

TEST(Energy, RequiresNormalized) {
  const Grid g(1, 1.0, 16, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  ComplexField psi = random_psi(g, 7);
  for (cplx& v : psi) v *= 2.0;
  EXPECT_THROW(energy_expectation(psi, GaugeState::zero(g), H), ContractViolation);
}

TEST(Energy, BoundedBelowByPotentialMinimum) {
  const Grid g(1, 1.0, 64, 4.0);
  ModelParams p;
  p.quartic_lambda = 0.5;
  const DiscreteHamiltonian H(g, p);
  const double vmin = *std::min_element(H.diagonal().begin(), H.diagonal().end());
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_GE(energy_expectation(random_psi(g, s), GaugeState::zero(g), H), vmin);
}

TEST(Energy, LatticeGaugeInvariance) {
  const Grid g(2, 0.9, 14, 3.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  const ComplexField psi = random_psi(g, 8);
  const GaugeState gs = random_gauge(g, 9, 0.3);
  RealField lam(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) lam[j] = std::sin(g.field_value(j, 0)) + 0.4 * g.field_value(j, 1);
  const GaugeTransformed t = gauge_transform(psi, gs, lam, RealField(g.size(), 0.0), g);
  EXPECT_NEAR(energy_expectation(t.psi, t.gauge, H), energy_expectation(psi, gs, H), 1e-12);
  const GaugeTransformed c = gauge_transform(psi, gs, RealField(g.size(), 0.9), RealField(g.size(), 0.0), g);
  EXPECT_NEAR(energy_expectation(c.psi, c.gauge, H), energy_expectation(psi, gs, H), 1e-14);
}

TEST(Energy, ContinuumGaugeLawSecondOrder) {
  auto lambda = [](double x) { return 0.5 * std::sin(x) + 0.2 * x * x; };
  auto dlambda = [](double x) { return 0.5 * std::cos(x) + 0.4 * x; };
  std::vector<double> err;
  for (int n : {64, 128, 256}) {
    const Grid g(1, 1.0, n, 6.0);
    const DiscreteHamiltonian H(g, ModelParams{});
    ComplexField psi(g.size());
    RealField lam(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.field_value(j, 0);
      psi[j] = std::exp(-x * x / 2.0) * std::polar(1.0, 0.5 * x);
      lam[j] = lambda(x);
    }
    normalize(psi, g);
    LinkFields grad = zero_links(g);
    const double h = g.delta_phi();
    grad[0] = sample_links(g, 0, [&](std::size_t, int s) { return dlambda(g.phi(0) + (s - 0.5) * h); });
    const GaugeState gs = GaugeState::zero(g);
    const GaugeTransformed t = gauge_transform(psi, gs, lam, RealField(g.size(), 0.0), grad, g);
    err.push_back(std::abs(energy_expectation(t.psi, t.gauge, H) - energy_expectation(psi, gs, H)));
  }
  for (int i = 0; i < 2; ++i) {
    const double order = std::log2(err[i] / err[i + 1]);
    EXPECT_GE(order, 1.8);
    EXPECT_LE(order, 2.2);
  }
}

TEST(LinkCurrent, ContinuityIdentity) {
  const Grid g(2, 0.7, 9, 3.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  const ComplexField psi = random_psi(g, 10);
  const GaugeState gs = random_gauge(g, 11);
  const ComplexField k = H.apply_kinetic(psi, &gs.a_phi);
  LinkFields J;
  for (int i = 0; i < 2; ++i) J.push_back(H.link_current(psi, &gs.a_phi, i));
  const RealField div = link_divergence(J, g);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(2.0 * std::imag(std::conj(psi[j]) * k[j]), -div[j], 1e-12);
}

TEST(LinkCurrent, MatchesEnergyDerivative) {
  // J_s = (1/a) ∂⟨K⟩/∂A_s per unit measure, checked by central differences.
  const Grid g(1, 0.8, 12, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{});
  const ComplexField psi = random_psi(g, 12);
  GaugeState gs = random_gauge(g, 13, 0.5);
  const RealField J = H.link_current(psi, &gs.a_phi, 0);
  const double d = 1e-6;
  for (std::size_t s = 1; s + 1 < g.link_size(); ++s) {
    GaugeState up = gs, dn = gs;
    up.a_phi[0][s] += d;
    dn.a_phi[0][s] -= d;
    const double eu = inner(psi, H.apply_kinetic(psi, &up.a_phi), g).real();
    const double ed = inner(psi, H.apply_kinetic(psi, &dn.a_phi), g).real();
    EXPECT_NEAR((eu - ed) / (2.0 * d) / (g.spacing() * g.measure()), J[s], 1e-6);
  }
  EXPECT_EQ(J.front(), 0.0);
  EXPECT_EQ(J.back(), 0.0);
}

TEST(CustomPotential, UsedOnDiagonal) {
  const Grid g(1, 1.0, 9, 2.0);
  const DiscreteHamiltonian H(g, ModelParams{}, [](double x) { return std::abs(x); });
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_DOUBLE_EQ(H.diagonal()[j], std::abs(g.field_value(j, 0)));
}
