#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "funcgauge/state.hpp"

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

ComplexField gaussian(const Grid& g, double sigma2) {
  ComplexField psi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    double r2 = 0.0;
    for (int i = 0; i < g.n_sites(); ++i) r2 += std::pow(g.field_value(j, i), 2);
    psi[j] = std::exp(-r2 / (4.0 * sigma2));
  }
  normalize(psi, g);
  return psi;
}

}  // namespace

TEST(ModelParams, Validation) {
  ModelParams p;
  EXPECT_NO_THROW(p.validate());
  p.length_l = 0.0;
  EXPECT_THROW(p.validate(), ContractViolation);
  p = ModelParams{};
  p.coupling_f = 2.0;
  EXPECT_THROW(p.validate(), ContractViolation);
  p = ModelParams{};
  p.mass_m = -1.0;
  EXPECT_THROW(p.validate(), ContractViolation);
  p = ModelParams{};
  p.length_l = 4.0;
  EXPECT_DOUBLE_EQ(p.coupling(), 1.0 / 16.0);
}

TEST(Density, UniformAndZero) {
  const Grid g(2, 1.0, 6, 1.0);
  const ComplexField psi(g.size(), cplx(1.0 / std::sqrt(g.measure() * g.size()), 0.0));
  const RealField rho = density(psi);
  for (double r : rho) EXPECT_NEAR(r, 1.0 / (g.measure() * g.size()), 1e-14);
  EXPECT_NEAR(functional_integral(rho, g), 1.0, 1e-14);
  for (double r : density(ComplexField(g.size()))) EXPECT_EQ(r, 0.0);
}

TEST(Density, PointwiseOracle) {
  const Grid g(1, 1.0, 50, 3.0);
  const ComplexField psi = random_psi(g, 1);
  const RealField rho = density(psi);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double re = psi[j].real(), im = psi[j].imag();
    EXPECT_NEAR(rho[j], re * re + im * im, 1e-15 * rho[j]);
  }
}

TEST(CellProbability, UniformGaussianZero) {
  const Grid g(1, 1.0, 40, 4.0);
  const RealField uni(g.size(), 1.0 / (g.measure() * g.size()));
  for (double p : cell_probability(uni, g)) EXPECT_NEAR(p, 1.0 / g.size(), 1e-16);
  const RealField rho = density(gaussian(g, 0.5));
  const RealField p = cell_probability(rho, g);
  double sum = 0.0;
  for (double v : p) sum += v;
  EXPECT_NEAR(sum, functional_integral(rho, g), 1e-14);
  for (double v : cell_probability(RealField(g.size(), 0.0), g)) EXPECT_EQ(v, 0.0);
}

TEST(Charge, UniformMatchedIsNeutral) {
  const Grid g(2, 1.0, 8, 2.0);
  const RealField rho(g.size(), 1.0 / (g.measure() * g.size()));
  ModelParams p;
  const Charge c = charge_density_and_total(rho, std::log(static_cast<double>(g.size())), p, g);
  for (double q : c.density) EXPECT_NEAR(q, 0.0, 1e-14);
  EXPECT_NEAR(c.total, 0.0, 1e-13);
}

TEST(Charge, UniformWithZeroS) {
  const Grid g(1, 1.0, 64, 2.0);
  const RealField rho(g.size(), 1.0 / (g.measure() * g.size()));
  ModelParams p;
  const Charge c = charge_density_and_total(rho, 0.0, p, g);
  EXPECT_NEAR(c.total, -std::log(64.0), 1e-12);
}

TEST(Charge, NotHomogeneous) {
  const Grid g(1, 1.0, 64, 5.0);
  ModelParams p;
  const RealField rho = density(gaussian(g, 0.7));
  const double S = entropy_matching_S(rho, g) + 0.3;
  RealField rho4 = rho;  // z = 2
  for (double& v : rho4) v *= 4.0;
  const double q1 = charge_density_and_total(rho, S, p, g).total;
  const double q4 = charge_density_and_total(rho4, S, p, g).total;
  EXPECT_GT(std::abs(q4 - 4.0 * q1) / std::abs(4.0 * q1), 0.1);
  RealField rho2 = rho;
  for (double& v : rho2) v *= 2.0;
  const double q2 = charge_density_and_total(rho2, S, p, g).total;
  EXPECT_NE(q2, q1);
  EXPECT_GT(std::abs(q2 / q1 - 2.0), 0.1);
}

TEST(Charge, FloorHandlesEmptyCells) {
  const Grid g(1, 1.0, 8, 1.0);
  RealField rho(g.size(), 0.0);
  rho[3] = 1.0 / g.measure();
  ModelParams p;
  const Charge c = charge_density_and_total(rho, 0.0, p, g);
  for (double q : c.density) EXPECT_TRUE(std::isfinite(q));
  EXPECT_NEAR(c.total, 0.0, 1e-15);
}

TEST(EntropyMatching, UniformAndPoint) {
  const Grid g(2, 1.0, 16, 3.0);
  const RealField rho(g.size(), 1.0 / (g.measure() * g.size()));
  EXPECT_NEAR(entropy_matching_S(rho, g), std::log(256.0), 1e-12);
  RealField point(g.size(), 0.0);
  point[40] = 1.0 / g.measure();
  EXPECT_NEAR(entropy_matching_S(point, g), 0.0, 1e-15);
  RealField bad = rho;
  for (double& v : bad) v *= 1.1;
  EXPECT_THROW(entropy_matching_S(bad, g), ContractViolation);
}

TEST(EntropyMatching, GaussianQuadratureOracle) {
  // Independent evaluation of -Σ p log p from the analytic sampled Gaussian
  // in long double.
  const Grid g(1, 1.0, 200, 6.0);
  const double s2 = 0.6;
  const RealField rho = density(gaussian(g, s2));
  long double z = 0.0L;
  for (int k = 0; k < g.n_phi(); ++k) z += std::exp(-static_cast<long double>(g.phi(k)) * g.phi(k) / (2.0L * s2));
  long double ent = 0.0L;
  for (int k = 0; k < g.n_phi(); ++k) {
    const long double p = std::exp(-static_cast<long double>(g.phi(k)) * g.phi(k) / (2.0L * s2)) / z;
    ent -= p * std::log(p);
  }
  EXPECT_NEAR(entropy_matching_S(rho, g), static_cast<double>(ent), 1e-10);
}

TEST(EntropyMatching, NeutralisesCharge) {
  const Grid g(2, 1.0, 20, 4.0);
  const RealField rho = density(random_psi(g, 5));
  ModelParams p;
  p.length_l = 0.7;
  const double S = entropy_matching_S(rho, g);
  EXPECT_LT(std::abs(charge_density_and_total(rho, S, p, g).total), 1e-12);
}

TEST(GaugeTransform, ConstantLambdaIsGlobalPhase) {
  const Grid g(2, 1.0, 10, 2.0);
  const ComplexField psi = random_psi(g, 7);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  GaugeState gs = GaugeState::zero(g);
  for (double& v : gs.a_t) v = nd(rng);
  for (auto& l : gs.a_phi)
    for (double& v : l) v = nd(rng);
  const GaugeTransformed t = gauge_transform(psi, gs, RealField(g.size(), 1.1), RealField(g.size(), 0.0), g);
  EXPECT_EQ(t.gauge.a_t, gs.a_t);
  EXPECT_EQ(t.gauge.a_phi, gs.a_phi);
  EXPECT_EQ(t.gauge.e_field, gs.e_field);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_LE(std::abs(t.psi[j] - std::polar(1.0, -1.1) * psi[j]), 1e-15);
}

TEST(GaugeTransform, ZeroIsIdentity) {
  const Grid g(1, 1.0, 12, 2.0);
  const ComplexField psi = random_psi(g, 8);
  const GaugeState gs = GaugeState::zero(g);
  const GaugeTransformed t = gauge_transform(psi, gs, RealField(g.size(), 0.0), RealField(g.size(), 0.0), g);
  EXPECT_EQ(t.psi, psi);
  EXPECT_EQ(t.gauge.a_t, gs.a_t);
  EXPECT_EQ(t.gauge.a_phi, gs.a_phi);
}

TEST(GaugeTransform, DensityInvariant) {
  const Grid g(2, 1.0, 12, 2.0);
  const ComplexField psi = random_psi(g, 9);
  RealField lam(g.size()), lam_dot(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    lam[j] = std::sin(g.field_value(j, 0)) * g.field_value(j, 1);
    lam_dot[j] = 0.5 * lam[j];
  }
  const GaugeTransformed t = gauge_transform(psi, GaugeState::zero(g), lam, lam_dot, g);
  const RealField r0 = density(psi), r1 = density(t.psi);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(r1[j], r0[j], 1e-15);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_DOUBLE_EQ(t.gauge.a_t[j], lam_dot[j]);
}

TEST(CurrentDensity, RealPsiCases) {
  const Grid g(1, 1.0, 30, 3.0);
  ComplexField psi = gaussian(g, 0.5);
  GaugeState gs = GaugeState::zero(g);
  for (double v : current_density(psi, gs, 0, g)) EXPECT_EQ(v, 0.0);
  for (double& v : gs.a_phi[0]) v = 0.4;
  const RealField j = current_density(psi, gs, 0, g);
  const RealField rho = density(psi);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(j[k], 0.4 * rho[k], 1e-15);
}

TEST(CurrentDensity, PlaneWaveRefinement) {
  const double k = 1.5;
  std::vector<double> err;
  for (int n : {65, 129, 257}) {
    const Grid g(1, 1.0, n, 6.0);
    ComplexField psi(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.field_value(j, 0);
      psi[j] = std::exp(-x * x / 2.0) * std::polar(1.0, k * x);
    }
    const RealField cur = current_density(psi, GaugeState::zero(g), 0, g);
    const RealField rho = density(psi);
    double e = 0.0;
    for (int i = 1; i + 1 < n; ++i) e = std::max(e, std::abs(cur[i] - k * rho[i]));
    err.push_back(e);
  }
  for (int i = 0; i < 2; ++i) {
    const double order = std::log2(err[i] / err[i + 1]);
    EXPECT_GE(order, 1.9);
    EXPECT_LE(order, 2.1);
  }
}

TEST(CovariantDerivative, ReducesWithoutConnection) {
  const Grid g(2, 1.0, 9, 2.0);
  const ComplexField psi = random_psi(g, 12);
  for (int axis = 0; axis < 2; ++axis)
    EXPECT_EQ(covariant_derivative(psi, GaugeState::zero(g), axis, g), functional_derivative(psi, axis, g));
  EXPECT_THROW(covariant_derivative(psi, GaugeState::zero(g), 2, g), ContractViolation);
}

TEST(CovariantDerivative, ConstantConnectionImaginaryPart) {
  const Grid g(1, 1.0, 20, 2.0);
  const ComplexField psi = gaussian(g, 0.4);
  GaugeState gs = GaugeState::zero(g);
  for (double& v : gs.a_phi[0]) v = -0.3;
  const ComplexField c = covariant_derivative(psi, gs, 0, g);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(c[j].imag(), -0.3 * psi[j].real(), 1e-15);
}
