#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "funcgauge/poisson.hpp"

using namespace funcgauge;

namespace {

RealField random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealField f(g.size());
  for (double& v : f) v = u(rng);
  return f;
}

ComplexField gaussian(const Grid& g, double sigma2, double shift = 0.0) {
  ComplexField psi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    double r2 = 0.0;
    for (int i = 0; i < g.n_sites(); ++i) r2 += std::pow(g.field_value(j, i) - shift, 2);
    psi[j] = std::exp(-r2 / (4.0 * sigma2));
  }
  normalize(psi, g);
  return psi;
}

}  // namespace

TEST(Poisson, ZeroSource) {
  const Grid g(2, 1.0, 10, 2.0);
  const PoissonSolution s = solve_poisson({RealField(g.size(), 0.0), g});
  for (double v : s.u) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(s.iterations, 0);
}

TEST(Poisson, ManufacturedDiscreteSine) {
  // sin(πk(j+1)/(N+1)) is an eigenvector of the Dirichlet stencil.
  const Grid g(1, 1.0, 63, 3.0);
  const int n = g.n_phi();
  RealField u(g.size());
  for (int j = 0; j < n; ++j) u[j] = std::sin(M_PI * 3.0 * (j + 1) / (n + 1));
  const RealField s = config_laplacian(u, g);
  const PoissonSolution sol = solve_poisson({s, g, 1e-12});
  for (int j = 0; j < n; ++j) EXPECT_NEAR(sol.u[j], u[j], 1e-10);
  EXPECT_LE(sol.residual, 1e-12);
}

TEST(Poisson, DenseOracle1D) {
  const Grid g(1, 0.6, 16, 2.0);
  const int n = g.n_phi();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  const double c = 1.0 / (g.spacing() * g.delta_phi() * g.delta_phi());
  for (int j = 0; j < n; ++j) {
    L(j, j) = -2.0 * c;
    if (j > 0) L(j, j - 1) = c;
    if (j + 1 < n) L(j, j + 1) = c;
  }
  const RealField s = random_field(g, 1);
  const Eigen::VectorXd ref = L.lu().solve(Eigen::Map<const Eigen::VectorXd>(s.data(), n));
  const PoissonSolution sol = solve_poisson({s, g, 1e-13});
  for (int j = 0; j < n; ++j) EXPECT_NEAR(sol.u[j], ref(j), 1e-11 * ref.cwiseAbs().maxCoeff());
}

TEST(Poisson, Linear) {
  const Grid g(2, 1.0, 12, 2.0);
  const RealField a = random_field(g, 2), b = random_field(g, 3);
  RealField ab(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) ab[j] = 2.0 * a[j] - 0.5 * b[j];
  const RealField ua = solve_poisson({a, g, 1e-13}).u;
  const RealField ub = solve_poisson({b, g, 1e-13}).u;
  const RealField uab = solve_poisson({ab, g, 1e-13}).u;
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(uab[j], 2.0 * ua[j] - 0.5 * ub[j], 1e-9);
}

TEST(Poisson, NegativeOperatorIsPositiveDefinite) {
  const Grid g(2, 1.0, 9, 2.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RealField f = random_field(g, 30 + seed);
    const RealField lf = config_laplacian(f, g);
    double q = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) q -= f[j] * lf[j];
    EXPECT_GT(q, 0.0);
  }
}

TEST(Poisson, NonConvergenceThrows) {
  const Grid g(2, 1.0, 40, 2.0);
  try {
    solve_poisson({random_field(g, 4), g, 1e-10, 3});
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.residual(), 1e-10);
  }
  EXPECT_THROW(solve_poisson({RealField(5, 1.0), g}), ContractViolation);
  EXPECT_THROW(solve_poisson({random_field(g, 5), g, 0.0}), ContractViolation);
}

TEST(LongitudinalField, UniformMatchedIsZero) {
  const Grid g(2, 1.0, 8, 2.0);
  const RealField rho(g.size(), 1.0 / (g.measure() * g.size()));
  const LinkFields e = initial_longitudinal_field(rho, std::log(64.0), ModelParams{}, g);
  for (const auto& l : e)
    for (double v : l) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(LongitudinalField, SatisfiesGaussLaw) {
  const Grid g(2, 1.0, 24, 3.0);
  const RealField rho = density(gaussian(g, 0.5, 0.3));
  ModelParams p;
  p.length_l = 1.5;
  const double S = entropy_matching_S(rho, g) - 0.4;
  const LinkFields e = initial_longitudinal_field(rho, S, p, g, 1e-12);
  const RealField src = gauss_source(rho, S, p, g);
  const double rel = gauss_residual(e, rho, S, p, g) / norm2(std::span<const double>(src));
  EXPECT_LT(rel, 1e-11);
}

TEST(LongitudinalField, ScalesWithInverseSquareLength) {
  const Grid g(1, 1.0, 64, 4.0);
  const RealField rho = density(gaussian(g, 0.6));
  const double S = entropy_matching_S(rho, g) + 0.2;
  ModelParams p1, p2;
  p1.length_l = 1.0;
  p2.length_l = 2.0;
  const LinkFields e1 = initial_longitudinal_field(rho, S, p1, g, 1e-13);
  const LinkFields e2 = initial_longitudinal_field(rho, S, p2, g, 1e-13);
  double emax = 0.0;
  for (double v : e1[0]) emax = std::max(emax, std::abs(v));
  ASSERT_GT(emax, 0.0);
  for (std::size_t s = 0; s < e1[0].size(); ++s) EXPECT_NEAR(e2[0][s], 0.25 * e1[0][s], 1e-10 * emax);
}

TEST(LongitudinalField, ReturnsPotential) {
  const Grid g(1, 1.0, 32, 3.0);
  const RealField rho = density(gaussian(g, 0.5));
  RealField chi;
  const LinkFields e = initial_longitudinal_field(rho, 0.5, ModelParams{}, g, 1e-12, &chi);
  ASSERT_EQ(chi.size(), g.size());
  const RealField grad = link_gradient(chi, 0, g);
  for (std::size_t s = 0; s < grad.size(); ++s) EXPECT_DOUBLE_EQ(e[0][s], -grad[s]);
}

TEST(GaussResidual, ClosedForm) {
  // E = 0: the residual is the 2-norm of the source itself.
  const Grid g(1, 1.0, 20, 2.0);
  const RealField rho = density(gaussian(g, 0.4));
  ModelParams p;
  p.length_l = 0.5;
  const double S = 1.0;
  const Charge c = charge_density_and_total(rho, S, p, g);
  double acc = 0.0;
  for (double q : c.density) acc += std::pow(4.0 * q, 2);
  EXPECT_NEAR(gauss_residual(zero_links(g), rho, S, p, g), std::sqrt(acc), 1e-12 * std::sqrt(acc));
  // constant E on every link has zero divergence
  LinkFields e = zero_links(g);
  for (double& v : e[0]) v = 3.0;
  const RealField div = link_divergence(e, g);
  for (double d : div) EXPECT_NEAR(d, 0.0, 1e-12);
}
