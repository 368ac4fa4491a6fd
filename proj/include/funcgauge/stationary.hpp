#pragma once

// Stationary states Ψ = e^{−iωt}Ψ_ω in the real gauge (𝒜_φ = 0):
//   HΨ_ω = P (ω − 𝒜_t) Ψ_ω,   L𝒜_t = (f/l²) ρN(ρ),   P = 1 + S + log p.
//
// The SCF loop freezes (ρ, S, 𝒜_t) and solves the symmetric problem
//   (H + diag(P𝒜_t − ω(P − 1))) ψ = λψ,   ω ← ω + (λ − ω)/⟨ψ|P|ψ⟩
// whose fixed point λ = ω is the frozen pencil. Unlike the P^{−1/2}
// transform this does not need P > 0, and charge-neutral states always
// have P < 0 in their tails.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "funcgauge/hamiltonian.hpp"
#include "funcgauge/poisson.hpp"

namespace funcgauge {

enum class SMode {
  charge_neutral,  ///< S = −Σ p log p each iteration, so Q = 0
  fixed,           ///< S = params.entropy_S, Q reported
};

struct SCFConfig {
  SMode mode = SMode::charge_neutral;
  double mixing_alpha = 0.3;
  double tol_omega = 1e-9;
  double tol_rho = 1e-8;
  int max_iter = 500;
  int target_index = 0;
  int newton_steps = 2;          ///< ω updates per frozen density
  double poisson_tol = 1e-10;
  bool symmetrize = true;        ///< only acts when H is reflection symmetric

  void validate() const {
    if (!(mixing_alpha > 0.0 && mixing_alpha <= 1.0)) throw ContractViolation("scf: mixing_alpha must be in (0, 1]");
    if (!(tol_omega > 0.0) || !(tol_rho > 0.0)) throw ContractViolation("scf: tolerances must be > 0");
    if (max_iter < 1) throw ContractViolation("scf: max_iter must be >= 1");
    if (target_index < 0) throw ContractViolation("scf: target_index must be >= 0");
    if (newton_steps < 1) throw ContractViolation("scf: newton_steps must be >= 1");
    if (!(poisson_tol > 0.0)) throw ContractViolation("scf: poisson_tol must be > 0");
  }
};

struct StationaryState {
  RealField psi;  ///< real, ∫ψ² = 1
  double omega = 0.0;
  RealField a_t;
  double s_value = 0.0;
  double q_total = 0.0;
  double residual_eom = 0.0;    ///< ‖P(ω − 𝒜_t)ψ − Hψ‖₂
  double residual_gauss = 0.0;  ///< relative Poisson residual
  double h_psi_norm = 0.0;      ///< ‖Hψ‖₂, the scale for residual_eom
  int iterations = 0;
};

class SCFError : public SolverError {
 public:
  SCFError(const std::string& what, std::vector<double> history)
      : SolverError(what, history.empty() ? std::nan("") : history.back()), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

inline ComplexField to_complex(const RealField& f) { return ComplexField(f.begin(), f.end()); }

inline RealField apply_real(const DiscreteHamiltonian& H, const RealField& psi) {
  const ComplexField h = H.apply(to_complex(psi), nullptr);
  RealField out(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) out[j] = h[j].real();
  return out;
}

/// Residual of HΨ = P(ω − 𝒜_t)Ψ, plain 2-norm.
inline double eom_residual(const RealField& psi, double omega, const RealField& a_t, double S,
                           const DiscreteHamiltonian& H) {
  const Grid& g = H.grid();
  g.check_size(psi.size(), "eom_residual");
  g.check_size(a_t.size(), "eom_residual");
  const RealField hpsi = apply_real(H, psi);
  RealField rho(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = psi[j] * psi[j];
  const RealField P = prefactor(rho, S, g);
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double r = P[j] * (omega - a_t[j]) * psi[j] - hpsi[j];
    acc += r * r;
  }
  return std::sqrt(acc);
}

inline bool reflection_symmetric(const DiscreteHamiltonian& H) {
  const Grid& g = H.grid();
  const RealField& d = H.diagonal();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double a = d[j], b = d[g.reflect(j)];
    if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) return false;
  }
  return true;
}

struct EigenPair {
  double omega = 0.0;
  RealField psi;
};

/// Target eigenpair of (H + P𝒜_t)ψ = ωPψ for P > 0, via P^{−1/2} scaling.
/// ψ is normalized to ∫Pψ² = 1 with its largest-magnitude entry positive.
inline EigenPair solve_frozen_eigenproblem(const RealField& rho_frozen, const RealField& a_t_frozen, double S,
                                           const DiscreteHamiltonian& H, int target_index = 0,
                                           double eps_P = 1e-3) {
  const Grid& g = H.grid();
  g.check_size(rho_frozen.size(), "solve_frozen_eigenproblem");
  g.check_size(a_t_frozen.size(), "solve_frozen_eigenproblem");
  const std::size_t m = g.size();
  if (target_index < 0 || static_cast<std::size_t>(target_index) >= m)
    throw ContractViolation("solve_frozen_eigenproblem: target_index out of range");
  RealField P = prefactor(rho_frozen, S, g);
  std::size_t bad = 0;
  for (double& v : P) {
    if (std::abs(v) < eps_P) v = v < 0.0 ? -eps_P : eps_P;
    if (v < 0.0) ++bad;
  }
  if (bad > 0)
    throw ContractViolation("solve_frozen_eigenproblem: P is indefinite on " +
                            num(static_cast<double>(bad) / m) + " of the grid");
  Eigen::MatrixXd A = build_dense_real_hamiltonian(H);
  Eigen::VectorXd dinv(m);
  for (std::size_t j = 0; j < m; ++j) {
    A(j, j) += P[j] * a_t_frozen[j];
    dinv(j) = 1.0 / std::sqrt(P[j]);
  }
  A = dinv.asDiagonal() * A * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw SolverError("solve_frozen_eigenproblem: eigensolver failed", std::nan(""));
  EigenPair out;
  out.omega = es.eigenvalues()(target_index);
  Eigen::VectorXd v = dinv.asDiagonal() * es.eigenvectors().col(target_index);
  double np = 0.0;
  for (std::size_t j = 0; j < m; ++j) np += P[j] * v(j) * v(j);
  v /= std::sqrt(np * g.measure());
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
  out.psi.assign(v.data(), v.data() + m);
  return out;
}

namespace detail {

inline void normalize_real(RealField& psi, const Grid& g) {
  double acc = 0.0;
  for (double v : psi) acc += v * v;
  const double s = 1.0 / std::sqrt(acc * g.measure());
  for (double& v : psi) v *= s;
}

inline RealField squared(const RealField& psi) {
  RealField r(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) r[j] = psi[j] * psi[j];
  return r;
}

inline double entropy_for(const RealField& rho, SMode mode, const ModelParams& p, const Grid& g) {
  return mode == SMode::charge_neutral ? entropy_matching_S(rho, g) : p.entropy_S;
}

inline double rayleigh(const Eigen::MatrixXd& Hd, const RealField& psi, const RealField& P, const RealField& a_t) {
  const Eigen::Map<const Eigen::VectorXd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
  double numer = v.dot(Hd * v), den = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    numer += P[j] * a_t[j] * psi[j] * psi[j];
    den += P[j] * psi[j] * psi[j];
  }
  return numer / den;
}

}  // namespace detail

/// Fills the consistent (S, 𝒜_t, Q, ω, residuals) for a given real ψ.
inline StationaryState complete_state(RealField psi, const DiscreteHamiltonian& H, SMode mode,
                                      double poisson_tol = 1e-10, std::optional<double> omega = std::nullopt) {
  const Grid& g = H.grid();
  StationaryState s;
  s.psi = std::move(psi);
  const RealField rho = detail::squared(s.psi);
  s.s_value = detail::entropy_for(rho, mode, H.params(), g);
  s.q_total = charge_density_and_total(rho, s.s_value, H.params(), g).total;
  const PoissonSolution sol = solve_poisson({gauss_source(rho, s.s_value, H.params(), g), g, poisson_tol});
  s.a_t = sol.u;
  s.residual_gauss = sol.residual;
  if (omega) {
    s.omega = *omega;
  } else {
    const RealField hpsi = apply_real(H, s.psi);
    const RealField P = prefactor(rho, s.s_value, g);
    double numer = 0.0, den = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
      numer += s.psi[j] * hpsi[j] + P[j] * s.a_t[j] * rho[j];
      den += P[j] * rho[j];
    }
    s.omega = numer / den;
  }
  s.residual_eom = eom_residual(s.psi, s.omega, s.a_t, s.s_value, H);
  s.h_psi_norm = norm2(std::span<const double>(apply_real(H, s.psi)));
  return s;
}

/// Lowest `count` eigenpairs of H without connection, ∫ψ² = 1.
inline std::vector<EigenPair> linear_eigenstates(const DiscreteHamiltonian& H, int count) {
  const Grid& g = H.grid();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_dense_real_hamiltonian(H));
  if (es.info() != Eigen::Success) throw SolverError("linear_eigenstates: eigensolver failed", std::nan(""));
  std::vector<EigenPair> out;
  for (int k = 0; k < count && k < es.eigenvalues().size(); ++k) {
    EigenPair e;
    e.omega = es.eigenvalues()(k);
    e.psi.assign(es.eigenvectors().col(k).data(), es.eigenvectors().col(k).data() + g.size());
    detail::normalize_real(e.psi, g);
    Eigen::Index imax = 0;
    es.eigenvectors().col(k).cwiseAbs().maxCoeff(&imax);
    if (e.psi[imax] < 0.0)
      for (double& v : e.psi) v = -v;
    out.push_back(std::move(e));
  }
  return out;
}

inline StationaryState scf_solve(const DiscreteHamiltonian& H, const SCFConfig& cfg,
                                 std::optional<RealField> initial_psi = std::nullopt) {
  cfg.validate();
  const Grid& g = H.grid();
  const std::size_t m = g.size();
  const Eigen::MatrixXd Hd = build_dense_real_hamiltonian(H);
  const bool symmetrize = cfg.symmetrize && reflection_symmetric(H);

  RealField psi;
  double omega = 0.0;
  if (initial_psi) {
    g.check_size(initial_psi->size(), "scf_solve");
    psi = *initial_psi;
    detail::normalize_real(psi, g);
  } else {
    auto lin = linear_eigenstates(H, cfg.target_index + 1);
    if (static_cast<int>(lin.size()) <= cfg.target_index) throw ContractViolation("scf_solve: target_index out of range");
    psi = lin[cfg.target_index].psi;
    omega = lin[cfg.target_index].omega;
  }
  RealField rho = detail::squared(psi);
  if (initial_psi) {
    const double S = detail::entropy_for(rho, cfg.mode, H.params(), g);
    const RealField a_t = solve_poisson({gauss_source(rho, S, H.params(), g), g, cfg.poisson_tol}).u;
    omega = detail::rayleigh(Hd, psi, prefactor(rho, S, g), a_t);
  }

  std::vector<double> history;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double S = detail::entropy_for(rho, cfg.mode, H.params(), g);
    const RealField a_t = solve_poisson({gauss_source(rho, S, H.params(), g), g, cfg.poisson_tol}).u;
    const RealField P = prefactor(rho, S, g);
    const double omega_prev = omega;
    RealField psi_new(m);
    for (int k = 0; k < cfg.newton_steps; ++k) {
      Eigen::MatrixXd A = Hd;
      for (std::size_t j = 0; j < m; ++j) A(j, j) += P[j] * a_t[j] - omega * (P[j] - 1.0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
      if (es.info() != Eigen::Success) throw SCFError("scf_solve: eigensolver failed", history);
      const Eigen::Map<const Eigen::VectorXd> prev(psi.data(), static_cast<Eigen::Index>(m));
      const Eigen::VectorXd ov = es.eigenvectors().transpose() * prev;
      Eigen::Index best = 0;
      ov.cwiseAbs().maxCoeff(&best);
      const double sign = ov(best) < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < m; ++j) psi_new[j] = sign * es.eigenvectors()(j, best);
      detail::normalize_real(psi_new, g);
      double pp = 0.0;
      for (std::size_t j = 0; j < m; ++j) pp += P[j] * psi_new[j] * psi_new[j];
      pp *= g.measure();
      omega += (es.eigenvalues()(best) - omega) / pp;
    }
    RealField rho_new = detail::squared(psi_new);
    if (symmetrize) {
      RealField sym(m);
      for (std::size_t j = 0; j < m; ++j) sym[j] = 0.5 * (rho_new[j] + rho_new[g.reflect(j)]);
      rho_new = std::move(sym);
    }
    double drho = 0.0;
    for (std::size_t j = 0; j < m; ++j) drho += std::abs(rho_new[j] - rho[j]);
    drho *= g.measure();
    const double domega = std::abs(omega - omega_prev);
    history.push_back(std::max(drho, domega));
    psi = psi_new;
    if (domega < cfg.tol_omega && drho < cfg.tol_rho) {
      StationaryState s = complete_state(psi, H, cfg.mode, cfg.poisson_tol);
      s.iterations = it;
      return s;
    }
    for (std::size_t j = 0; j < m; ++j) rho[j] = (1.0 - cfg.mixing_alpha) * rho[j] + cfg.mixing_alpha * rho_new[j];
  }
  throw SCFError("scf_solve: no convergence in " + std::to_string(cfg.max_iter) + " iterations (last change " +
                     num(history.empty() ? 0.0 : history.back()) + ")",
                 history);
}

struct OrthogonalityResult {
  double value = 0.0;         ///< each state with its own S
  double value_shared_S = 0.0;  ///< both brackets with the mean S
  double scale = 0.0;         ///< ‖Ψ₁‖‖Ψ₂‖ max|ω|
};

/// ∫Dφ Ψ₁Ψ₂ [P₁(ω₁ − 𝒜_t1) − P₂(ω₂ − 𝒜_t2)].
inline OrthogonalityResult orthogonality_check(const StationaryState& s1, const StationaryState& s2,
                                               const Grid& g) {
  g.check_size(s1.psi.size(), "orthogonality_check");
  g.check_size(s2.psi.size(), "orthogonality_check");
  g.check_size(s1.a_t.size(), "orthogonality_check");
  g.check_size(s2.a_t.size(), "orthogonality_check");
  const RealField r1 = detail::squared(s1.psi), r2 = detail::squared(s2.psi);
  const double s_mean = 0.5 * (s1.s_value + s2.s_value);
  double own = 0.0, shared = 0.0, n1 = 0.0, n2 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double l1 = clamped_log(r1[j] * g.measure()), l2 = clamped_log(r2[j] * g.measure());
    const double pp = s1.psi[j] * s2.psi[j];
    own += pp * ((1.0 + s1.s_value + l1) * (s1.omega - s1.a_t[j]) - (1.0 + s2.s_value + l2) * (s2.omega - s2.a_t[j]));
    shared += pp * ((1.0 + s_mean + l1) * (s1.omega - s1.a_t[j]) - (1.0 + s_mean + l2) * (s2.omega - s2.a_t[j]));
    n1 += r1[j];
    n2 += r2[j];
  }
  OrthogonalityResult out;
  out.value = own * g.measure();
  out.value_shared_S = shared * g.measure();
  out.scale = std::sqrt(n1 * g.measure()) * std::sqrt(n2 * g.measure()) *
              std::max(std::abs(s1.omega), std::abs(s2.omega));
  return out;
}

struct IRScanRow {
  double l = 0.0;
  double omega_scf = 0.0;
  double omega_linear = 0.0;
  double delta_omega = 0.0;
  double s_value = 0.0;
  double q_total = 0.0;
  int iterations = 0;
  double residual_eom = 0.0;
  bool converged = false;
  std::string error;
};

struct IRScan {
  std::vector<IRScanRow> rows;
  double slope = std::nan("");  ///< least-squares slope of log|Δω| vs log l
  int fitted_rows = 0;
};

inline IRScan ir_limit_scan(const DiscreteHamiltonian& H_base, const std::vector<double>& l_values,
                            const SCFConfig& cfg) {
  if (l_values.size() < 4) throw ContractViolation("ir_limit_scan: need at least 4 l values");
  if (!std::is_sorted(l_values.begin(), l_values.end()) ||
      std::adjacent_find(l_values.begin(), l_values.end()) != l_values.end())
    throw ContractViolation("ir_limit_scan: l values must be strictly ascending");
  const double omega_lin = linear_eigenstates(H_base, cfg.target_index + 1).at(cfg.target_index).omega;
  IRScan scan;
  std::vector<double> xs, ys;
  for (double l : l_values) {
    IRScanRow row;
    row.l = l;
    row.omega_linear = omega_lin;
    try {
      ModelParams p = H_base.params();
      p.length_l = l;
      const DiscreteHamiltonian H(H_base.grid(), p, [&H_base](double x) { return H_base.potential(x); });
      const StationaryState s = scf_solve(H, cfg);
      row.omega_scf = s.omega;
      row.delta_omega = s.omega - omega_lin;
      row.s_value = s.s_value;
      row.q_total = s.q_total;
      row.iterations = s.iterations;
      row.residual_eom = s.residual_eom;
      row.converged = true;
      if (row.delta_omega != 0.0) {
        xs.push_back(std::log(l));
        ys.push_back(std::log(std::abs(row.delta_omega)));
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    scan.rows.push_back(row);
  }
  scan.fitted_rows = static_cast<int>(xs.size());
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sx += xs[k];
      sy += ys[k];
      sxx += xs[k] * xs[k];
      sxy += xs[k] * ys[k];
    }
    scan.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return scan;
}

struct VariationalResult {
  double sigma_opt = 0.0;
  double omega_opt = 0.0;
  double omega_lo = 0.0;  ///< ω at the bracket ends
  double omega_hi = 0.0;
  int evaluations = 0;
};

/// ω(σ) for Ψ ∝ exp(−φ²/4σ²) with charge-neutral S and its own 𝒜_t.
inline double variational_omega(const DiscreteHamiltonian& H, double sigma, double poisson_tol = 1e-10) {
  const Grid& g = H.grid();
  if (g.n_sites() != 1) throw ContractViolation("variational_omega: needs a single lattice site");
  if (!(sigma > 0.0)) throw ContractViolation("variational_omega: sigma must be > 0");
  RealField psi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.field_value(j, 0);
    psi[j] = std::exp(-x * x / (4.0 * sigma * sigma));
  }
  detail::normalize_real(psi, g);
  return complete_state(std::move(psi), H, SMode::charge_neutral, poisson_tol).omega;
}

/// Golden-section minimization of ω(σ) over [sigma_lo, sigma_hi].
inline VariationalResult variational_gaussian(const DiscreteHamiltonian& H, double sigma_lo, double sigma_hi,
                                              double rel_tol = 1e-6) {
  if (!(sigma_lo > 0.0 && sigma_hi > sigma_lo)) throw ContractViolation("variational_gaussian: bad sigma bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  VariationalResult r;
  auto f = [&](double s) {
    ++r.evaluations;
    return variational_omega(H, s);
  };
  r.omega_lo = f(sigma_lo);
  r.omega_hi = f(sigma_hi);
  double a = sigma_lo, b = sigma_hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  if (!(fc < r.omega_lo || fd < r.omega_lo) || !(fc < r.omega_hi || fd < r.omega_hi))
    throw SolverError("variational_gaussian: bracket does not enclose a minimum", std::min(fc, fd));
  while ((b - a) > rel_tol * 0.5 * (a + b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  r.sigma_opt = 0.5 * (a + b);
  r.omega_opt = f(r.sigma_opt);
  if (!(r.omega_opt < r.omega_lo && r.omega_opt < r.omega_hi))
    throw SolverError("variational_gaussian: minimum sits on the bracket edge", r.omega_opt);
  return r;
}

struct SuperpositionReport {
  double max_product = 0.0;   ///< max |Ψ₁Ψ₂|
  double residual_1 = 0.0;
  double residual_2 = 0.0;
  double residual_combined = 0.0;
  double bound = 0.0;         ///< 3(r₁ + r₂) + 1e−8
  bool within_bound = false;
};

/// Checks that Ψ₁ + Ψ₂ with 𝒜_t = 𝒜_t1 + 𝒜_t2 solves the stationary
/// equation of H_combined. Each part is checked against its own H. The sum
/// is not renormalized, because the nonlinearity is not homogeneous.
inline SuperpositionReport superposition_check(const StationaryState& s1, const DiscreteHamiltonian& H1,
                                               const StationaryState& s2, const DiscreteHamiltonian& H2,
                                               const DiscreteHamiltonian& H_combined, bool require_disjoint = true) {
  const Grid& g = H_combined.grid();
  if (!(H1.grid() == g) || !(H2.grid() == g)) throw ContractViolation("superposition_check: grid mismatch");
  g.check_size(s1.psi.size(), "superposition_check");
  g.check_size(s2.psi.size(), "superposition_check");
  SuperpositionReport rep;
  for (std::size_t j = 0; j < g.size(); ++j) rep.max_product = std::max(rep.max_product, std::abs(s1.psi[j] * s2.psi[j]));
  if (require_disjoint && rep.max_product >= 1e-12)
    throw ContractViolation("superposition_check: states overlap (max |psi1 psi2| = " +
                            num(rep.max_product) + ")");
  rep.residual_1 = eom_residual(s1.psi, s1.omega, s1.a_t, s1.s_value, H1);
  bool second_is_zero = std::all_of(s2.psi.begin(), s2.psi.end(), [](double v) { return v == 0.0; });
  rep.residual_2 = second_is_zero ? 0.0 : eom_residual(s2.psi, s2.omega, s2.a_t, s2.s_value, H2);
  RealField psi(g.size()), a_t(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    psi[j] = s1.psi[j] + s2.psi[j];
    a_t[j] = s1.a_t[j] + (second_is_zero ? 0.0 : s2.a_t[j]);
  }
  const double omega = second_is_zero ? s1.omega : 0.5 * (s1.omega + s2.omega);
  rep.residual_combined = eom_residual(psi, omega, a_t, s1.s_value, H_combined);
  rep.bound = 3.0 * (rep.residual_1 + rep.residual_2) + 1e-8;
  rep.within_bound = rep.residual_combined <= rep.bound;
  return rep;
}

}  // namespace funcgauge
