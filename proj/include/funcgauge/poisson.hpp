#pragma once

// Configuration-space Gauss law. With Dirichlet boundaries on every field
// axis, L = config_laplacian is symmetric negative definite, so Lu = s is
// solved by conjugate gradients on -L.

#include <cmath>
#include <string>

#include "funcgauge/state.hpp"

namespace funcgauge {

struct PoissonProblem {
  RealField source;
  Grid grid;
  double tolerance = 1e-10;  ///< relative, in the plain 2-norm
  int max_iterations = 20000;
};

struct PoissonSolution {
  RealField u;
  double residual = 0.0;  ///< ‖Lu − s‖₂ / ‖s‖₂
  int iterations = 0;
};

inline PoissonSolution solve_poisson(const PoissonProblem& prob) {
  const Grid& g = prob.grid;
  g.check_size(prob.source.size(), "solve_poisson");
  if (!(prob.tolerance > 0.0)) throw ContractViolation("solve_poisson: tolerance must be > 0");
  if (prob.max_iterations < 1) throw ContractViolation("solve_poisson: max_iterations must be >= 1");
  for (double v : prob.source)
    if (!std::isfinite(v)) throw ContractViolation("solve_poisson: source is not finite");

  const std::size_t m = g.size();
  PoissonSolution sol;
  sol.u.assign(m, 0.0);
  const double bnorm = norm2(std::span<const double>(prob.source));
  if (bnorm == 0.0) return sol;

  // CG on A = -L, b = -s, starting from u = 0.
  RealField r(m), p(m);
  for (std::size_t j = 0; j < m; ++j) r[j] = -prob.source[j];
  p = r;
  double rr = 0.0;
  for (double v : r) rr += v * v;
  const double target = prob.tolerance * bnorm;
  int restarts = 0;
  for (int it = 1; it <= prob.max_iterations; ++it) {
    RealField ap = config_laplacian(p, g);
    double pap = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      ap[j] = -ap[j];
      pap += p[j] * ap[j];
    }
    const double alpha = rr / pap;
    double rr_new = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      sol.u[j] += alpha * p[j];
      r[j] -= alpha * ap[j];
      rr_new += r[j] * r[j];
    }
    sol.iterations = it;
    if (std::sqrt(rr_new) <= target) {
      // Confirm against the true residual; the recurrence drifts.
      const RealField lu = config_laplacian(sol.u, g);
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += (lu[j] - prob.source[j]) * (lu[j] - prob.source[j]);
      sol.residual = std::sqrt(acc) / bnorm;
      if (sol.residual <= prob.tolerance) return sol;
      if (++restarts > 20) break;  // below the roundoff floor
      for (std::size_t j = 0; j < m; ++j) r[j] = lu[j] - prob.source[j];
      rr_new = acc;
      p = r;
      rr = rr_new;
      continue;
    }
    const double beta = rr_new / rr;
    for (std::size_t j = 0; j < m; ++j) p[j] = r[j] + beta * p[j];
    rr = rr_new;
  }
  const RealField lu = config_laplacian(sol.u, g);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) acc += (lu[j] - prob.source[j]) * (lu[j] - prob.source[j]);
  sol.residual = std::sqrt(acc) / bnorm;
  throw SolverError("solve_poisson: no convergence after " + std::to_string(sol.iterations) +
                        " iterations (relative residual " + num(sol.residual) + ")",
                    sol.residual);
}

/// (f/l²) ρN(ρ), the right-hand side of the stationary Poisson equation.
inline RealField gauss_source(const RealField& rho, double S, const ModelParams& params, const Grid& g) {
  RealField s = charge_density_and_total(rho, S, params, g).density;
  for (double& v : s) v *= params.coupling();
  return s;
}

/// Longitudinal electric field satisfying the Gauss law for (ρ, S):
/// Lχ = (f/l²)ρN, E_i = −δχ/δφ_i on links (χ vanishes outside the box).
/// χ is the 𝒜_t of the stationary gauge.
inline LinkFields initial_longitudinal_field(const RealField& rho, double S, const ModelParams& params,
                                             const Grid& g, double tolerance = 1e-10,
                                             RealField* chi_out = nullptr) {
  PoissonProblem prob{gauss_source(rho, S, params, g), g, tolerance};
  const PoissonSolution sol = solve_poisson(prob);
  LinkFields e;
  e.reserve(g.n_sites());
  for (int i = 0; i < g.n_sites(); ++i) {
    RealField grad = link_gradient(sol.u, i, g);
    for (double& v : grad) v = -v;
    e.push_back(std::move(grad));
  }
  if (chi_out) *chi_out = sol.u;
  return e;
}

/// Pointwise Gauss-law violation −Σ_i ∂_iE_i − (f/l²)ρN(ρ).
inline RealField gauss_field(const LinkFields& e, const RealField& rho, double S, const ModelParams& params,
                             const Grid& g) {
  RealField div = link_divergence(e, g);
  const RealField src = gauss_source(rho, S, params, g);
  for (std::size_t j = 0; j < div.size(); ++j) div[j] = -div[j] - src[j];
  return div;
}

inline double gauss_residual(const LinkFields& e, const RealField& rho, double S, const ModelParams& params,
                             const Grid& g) {
  const RealField r = gauss_field(e, rho, S, params, g);
  return norm2(std::span<const double>(r));
}

}  // namespace funcgauge
