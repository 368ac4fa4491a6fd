#pragma once

// H = K[𝒜_φ] + diag, where diag = a Σ_i [½((φ_{i+1}−φ_i)/a)² + V(φ_i)]
// (periodic in i) and K is the covariant kinetic term (1/2a) Σ_i (−∂²/∂φ_i²).
//
// K is assembled from Peierls link phases U_s = exp(i h 𝒜_s), h = aΔφ:
//   (C_h ψ)_s   = (U_s ψ_s − ψ_{s−1}) / h                 one link
//   (C_2h ψ)_k  = (U_{k+1}U_{k+2} ψ_{k+2} − ψ_k) / (2h)    two links
//   K = (a/2) Σ_i [ (4/3) C_h†C_h − (1/3) C_2h†C_2h ]
// It is Hermitian and fourth-order accurate, and the lattice gauge law
// leaves it exactly covariant. Ghost values of ψ are zero two points deep, so the
// phases on the boundary links never enter.

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "funcgauge/state.hpp"

namespace funcgauge {

class DiscreteHamiltonian {
 public:
  using SitePotential = std::function<double(double)>;

  DiscreteHamiltonian(const Grid& g, const ModelParams& p)
      : DiscreteHamiltonian(g, p, [m2 = p.mass_m * p.mass_m, lam = p.quartic_lambda](double x) {
          return 0.5 * m2 * x * x + 0.25 * lam * x * x * x * x;
        }) {}

  /// Replaces the quartic family with an arbitrary on-site potential.
  DiscreteHamiltonian(const Grid& g, const ModelParams& p, SitePotential v)
      : grid_(g), params_(p), potential_(std::move(v)) {
    params_.validate();
    const int nx = g.n_sites();
    const double a = g.spacing();
    diagonal_.resize(g.size());
    std::vector<double> phi(nx);
    for (std::size_t j = 0; j < g.size(); ++j) {
      for (int i = 0; i < nx; ++i) phi[i] = g.field_value(j, i);
      double acc = 0.0;
      for (int i = 0; i < nx; ++i) {
        const double grad = (phi[(i + 1) % nx] - phi[i]) / a;
        acc += 0.5 * grad * grad + potential_(phi[i]);
      }
      diagonal_[j] = a * acc;
    }
  }

  const Grid& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }
  const RealField& diagonal() const { return diagonal_; }
  double potential(double phi) const { return potential_(phi); }

  /// Kinetic part only. `a_phi` may be null (no connection).
  ComplexField apply_kinetic(const ComplexField& psi, const LinkFields* a_phi) const {
    grid_.check_size(psi.size(), "apply_kinetic");
    if (a_phi) grid_.check_links(*a_phi, "apply_kinetic");
    ComplexField out(psi.size(), cplx{});
    const int n = grid_.n_phi();
    const double h = grid_.spacing() * grid_.delta_phi();
    const double half_a = 0.5 * grid_.spacing();
    // Line buffers: x has two ghosts per side, u covers slots -1..n+1.
    std::vector<cplx> x(n + 4), u(n + 3), gh(n + 1), g2(n + 2);
    for (int axis = 0; axis < grid_.n_sites(); ++axis) {
      for_each_line(grid_, axis, [&](std::size_t base, std::size_t lbase, std::size_t st) {
        load_line(psi, a_phi, axis, base, lbase, st, h, x, u);
        auto X = [&](int k) { return x[k + 2]; };
        auto U = [&](int s) { return u[s + 1]; };
        for (int s = 0; s <= n; ++s) gh[s] = (U(s) * X(s) - X(s - 1)) / h;
        for (int k = -2; k <= n - 1; ++k) g2[k + 2] = (U(k + 1) * U(k + 2) * X(k + 2) - X(k)) / (2.0 * h);
        for (int k = 0; k < n; ++k) {
          const cplx ch = (std::conj(U(k)) * gh[k] - gh[k + 1]) / h;
          const cplx c2 = (std::conj(U(k - 1) * U(k)) * g2[k] - g2[k + 2]) / (2.0 * h);
          out[base + k * st] += half_a * ((4.0 / 3.0) * ch - (1.0 / 3.0) * c2);
        }
      });
    }
    return out;
  }

  ComplexField apply(const ComplexField& psi, const LinkFields* a_phi) const {
    ComplexField out = apply_kinetic(psi, a_phi);
    for (std::size_t j = 0; j < psi.size(); ++j) out[j] += diagonal_[j] * psi[j];
    return out;
  }

  /// Conserved current on the links of `axis`: J = (1/a) ∂⟨K⟩/∂𝒜 per unit
  /// measure. Satisfies 2 Im(ψ̄ Kψ) = Σ_i (J_lower − J_upper)/Δφ exactly;
  /// boundary-link currents vanish.
  RealField link_current(const ComplexField& psi, const LinkFields* a_phi, int axis) const {
    grid_.check_size(psi.size(), "link_current");
    grid_.check_site(axis, "link_current");
    if (a_phi) grid_.check_links(*a_phi, "link_current");
    RealField out(grid_.link_size(), 0.0);
    const int n = grid_.n_phi();
    const double h = grid_.spacing() * grid_.delta_phi();
    std::vector<cplx> x(n + 4), u(n + 3);
    std::vector<double> j2(n + 2);
    for_each_line(grid_, axis, [&](std::size_t base, std::size_t lbase, std::size_t st) {
      load_line(psi, a_phi, axis, base, lbase, st, h, x, u);
      auto X = [&](int k) { return x[k + 2]; };
      auto U = [&](int s) { return u[s + 1]; };
      for (int k = -2; k <= n - 1; ++k)
        j2[k + 2] = std::imag(std::conj(X(k)) * U(k + 1) * U(k + 2) * X(k + 2)) / (2.0 * h);
      for (int s = 0; s <= n; ++s) {
        const double jh = std::imag(std::conj(X(s - 1)) * U(s) * X(s)) / h;
        const double jd = j2[s + 1] + j2[s];
        out[lbase + s * st] = (4.0 / 3.0) * jh - (1.0 / 6.0) * jd;
      }
    });
    return out;
  }

 private:
  void load_line(const ComplexField& psi, const LinkFields* a_phi, int axis, std::size_t base,
                 std::size_t lbase, std::size_t st, double h, std::vector<cplx>& x,
                 std::vector<cplx>& u) const {
    const int n = grid_.n_phi();
    x[0] = x[1] = x[n + 2] = x[n + 3] = cplx{};
    for (int k = 0; k < n; ++k) x[k + 2] = psi[base + k * st];
    u[0] = u[n + 2] = cplx(1.0, 0.0);
    for (int s = 0; s <= n; ++s) {
      const double A = a_phi ? (*a_phi)[axis][lbase + s * st] : 0.0;
      u[s + 1] = A == 0.0 ? cplx(1.0, 0.0) : std::polar(1.0, h * A);
    }
  }

  Grid grid_;
  ModelParams params_;
  SitePotential potential_;
  RealField diagonal_;
};

inline ComplexField apply_hamiltonian(const ComplexField& psi, const GaugeState& gauge,
                                      const DiscreteHamiltonian& H) {
  return H.apply(psi, &gauge.a_phi);
}

inline constexpr std::size_t kDenseCap = 16384;

/// Column j is apply_hamiltonian(e_j).
inline Eigen::MatrixXcd build_dense_hamiltonian(const GaugeState& gauge, const DiscreteHamiltonian& H,
                                                std::size_t cap = kDenseCap) {
  const std::size_t m = H.grid().size();
  if (m > cap)
    throw ContractViolation("build_dense_hamiltonian: M = " + std::to_string(m) +
                            " exceeds the dense cap " + std::to_string(cap));
  Eigen::MatrixXcd mat(m, m);
  ComplexField e(m, cplx{});
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    const ComplexField col = H.apply(e, &gauge.a_phi);
    for (std::size_t i = 0; i < m; ++i) mat(i, j) = col[i];
    e[j] = 0.0;
  }
  return mat;
}

/// Real symmetric matrix of H without connection.
inline Eigen::MatrixXd build_dense_real_hamiltonian(const DiscreteHamiltonian& H,
                                                    std::size_t cap = kDenseCap) {
  const std::size_t m = H.grid().size();
  if (m > cap)
    throw ContractViolation("build_dense_real_hamiltonian: M = " + std::to_string(m) +
                            " exceeds the dense cap " + std::to_string(cap));
  Eigen::MatrixXd mat(m, m);
  ComplexField e(m, cplx{});
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    const ComplexField col = H.apply(e, nullptr);
    for (std::size_t i = 0; i < m; ++i) mat(i, j) = col[i].real();
    e[j] = 0.0;
  }
  return mat;
}

/// ⟨Ψ|HΨ⟩ for normalized Ψ.
inline double energy_expectation(const ComplexField& psi, const GaugeState& gauge,
                                 const DiscreteHamiltonian& H) {
  const double n2 = norm_squared(psi, H.grid());
  if (std::abs(n2 - 1.0) > 1e-8)
    throw ContractViolation("energy_expectation: wave functional is not normalized (norm² " +
                            num(n2) + ")");
  return inner(psi, apply_hamiltonian(psi, gauge, H), H.grid()).real();
}

}  // namespace funcgauge
