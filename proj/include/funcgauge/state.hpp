#pragma once

// Wave functionals, the configuration-space connection, and the
// entropy nonlinearity ρN(ρ) = ρ(log p + S) with p = ρ·w.

#include <algorithm>
#include <cmath>
#include <string>

#include "funcgauge/grid.hpp"

namespace funcgauge {

/// Lower clamp for the cell probability inside the logarithm.
inline constexpr double kProbabilityFloor = 1e-300;

struct ModelParams {
  double mass_m = 1.0;
  double quartic_lambda = 0.0;
  double length_l = 1.0;
  double entropy_S = 0.0;
  double coupling_f = 1.0;  // absorbed by rescaling, must stay 1

  void validate() const {
    if (!(length_l > 0.0)) throw ContractViolation("model: length_l must be > 0");
    if (coupling_f != 1.0) throw ContractViolation("model: coupling_f is fixed to 1");
    if (!(mass_m >= 0.0)) throw ContractViolation("model: mass_m must be >= 0");
    if (!(quartic_lambda >= 0.0)) throw ContractViolation("model: quartic_lambda must be >= 0");
    if (!std::isfinite(entropy_S)) throw ContractViolation("model: entropy_S must be finite");
  }
  /// f / l², the strength of the new coupling.
  double coupling() const { return coupling_f / (length_l * length_l); }
};

/// 𝒜_t on points; 𝒜_φ and the electric field ℱ_tφ on links (see LinkFields).
struct GaugeState {
  RealField a_t;
  LinkFields a_phi;
  LinkFields e_field;

  static GaugeState zero(const Grid& g) {
    return {RealField(g.size(), 0.0), zero_links(g), zero_links(g)};
  }
  void check(const Grid& g, const char* who) const {
    g.check_size(a_t.size(), who);
    g.check_links(a_phi, who);
    g.check_links(e_field, who);
  }
};

inline double norm_squared(const ComplexField& psi, const Grid& g) {
  g.check_size(psi.size(), "norm_squared");
  double acc = 0.0;
  for (const cplx& v : psi) acc += std::norm(v);
  return acc * g.measure();
}

inline void normalize(ComplexField& psi, const Grid& g) {
  const double n2 = norm_squared(psi, g);
  if (!(n2 > 0.0)) throw ContractViolation("normalize: zero wave functional");
  const double s = 1.0 / std::sqrt(n2);
  for (cplx& v : psi) v *= s;
}

/// ⟨a|b⟩ = w Σ conj(a) b.
inline cplx inner(const ComplexField& a, const ComplexField& b, const Grid& g) {
  g.check_size(a.size(), "inner");
  g.check_size(b.size(), "inner");
  cplx acc{};
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc * g.measure();
}

inline RealField density(const ComplexField& psi) {
  RealField rho(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = std::norm(psi[j]);
  return rho;
}

inline RealField cell_probability(const RealField& rho, const Grid& g) {
  g.check_size(rho.size(), "cell_probability");
  RealField p(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j) p[j] = rho[j] * g.measure();
  return p;
}

inline double clamped_log(double p) { return std::log(std::max(p, kProbabilityFloor)); }

/// P = 1 + S + log p, the factor multiplying ∂_tΨ.
inline RealField prefactor(const RealField& rho, double S, const Grid& g) {
  RealField out = cell_probability(rho, g);
  for (double& v : out) v = 1.0 + S + clamped_log(v);
  return out;
}

struct Charge {
  RealField density;  ///< ρN(ρ) = ρ(log p + S)
  double total = 0.0; ///< Q = (f/l²) ∫Dφ ρN(ρ)
};

inline Charge charge_density_and_total(const RealField& rho, double S, const ModelParams& params,
                                       const Grid& g) {
  g.check_size(rho.size(), "charge_density_and_total");
  Charge c;
  c.density.resize(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j)
    c.density[j] = rho[j] * (clamped_log(rho[j] * g.measure()) + S);
  c.total = params.coupling() * functional_integral(c.density, g);
  return c;
}

/// S = -Σ p log p: the entropy for which the total charge vanishes.
inline double entropy_matching_S(const RealField& rho, const Grid& g) {
  const double n2 = functional_integral(rho, g);
  if (std::abs(n2 - 1.0) > 1e-8)
    throw ContractViolation("entropy_matching_S: density is not normalized (integral " +
                            num(n2) + ")");
  double acc = 0.0;
  for (double r : rho) acc += r * clamped_log(r * g.measure());
  return -acc * g.measure();
}

struct GaugeTransformed {
  ComplexField psi;
  GaugeState gauge;
};

/// Gauge transform with the link gradient of Λ supplied by the caller
/// (e.g. sampled analytically at link midpoints).
inline GaugeTransformed gauge_transform(const ComplexField& psi, const GaugeState& gauge,
                                        const RealField& lambda, const RealField& lambda_dot,
                                        const LinkFields& grad_lambda, const Grid& g) {
  g.check_size(psi.size(), "gauge_transform");
  g.check_size(lambda.size(), "gauge_transform");
  g.check_size(lambda_dot.size(), "gauge_transform");
  g.check_links(grad_lambda, "gauge_transform");
  gauge.check(g, "gauge_transform");
  GaugeTransformed out;
  out.psi.resize(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) out.psi[j] = std::polar(1.0, -lambda[j]) * psi[j];
  out.gauge = gauge;
  for (std::size_t j = 0; j < psi.size(); ++j) out.gauge.a_t[j] += lambda_dot[j];
  for (int i = 0; i < g.n_sites(); ++i)
    for (std::size_t s = 0; s < g.link_size(); ++s) out.gauge.a_phi[i][s] += grad_lambda[i][s];
  return out;
}

/// Ψ' = e^{-iΛ}Ψ, 𝒜_t' = 𝒜_t + ∂_tΛ, 𝒜_φ' = 𝒜_φ + δΛ/δφ on links.
/// The lattice gradient makes energy and ℱ exactly invariant. ℱ itself is
/// returned unchanged, since ∂_t δΛ/δφ − δ∂_tΛ/δφ = 0.
inline GaugeTransformed gauge_transform(const ComplexField& psi, const GaugeState& gauge,
                                        const RealField& lambda, const RealField& lambda_dot,
                                        const Grid& g) {
  LinkFields grad;
  grad.reserve(g.n_sites());
  for (int i = 0; i < g.n_sites(); ++i) grad.push_back(link_gradient(lambda, i, g, Ghost::mirror));
  return gauge_transform(psi, gauge, lambda, lambda_dot, grad, g);
}

/// ℱ_tφ = ∂_t𝒜_φ − δ𝒜_t/δφ on links.
inline LinkFields field_strength(const LinkFields& a_phi_dot, const RealField& a_t, const Grid& g) {
  g.check_links(a_phi_dot, "field_strength");
  LinkFields f = a_phi_dot;
  for (int i = 0; i < g.n_sites(); ++i) {
    const RealField grad = link_gradient(a_t, i, g);
    for (std::size_t s = 0; s < g.link_size(); ++s) f[i][s] -= grad[s];
  }
  return f;
}

/// C_iΨ = δΨ/δφ_i + i𝒜̄_iΨ, with 𝒜̄_i the site average of the link field.
inline ComplexField covariant_derivative(const ComplexField& psi, const GaugeState& gauge, int axis,
                                         const Grid& g) {
  g.check_site(axis, "covariant_derivative");
  g.check_links(gauge.a_phi, "covariant_derivative");
  ComplexField d = functional_derivative(psi, axis, g);
  const RealField abar = site_average(gauge.a_phi[axis], axis, g);
  for (std::size_t j = 0; j < d.size(); ++j)
    if (abar[j] != 0.0) d[j] += cplx(0.0, abar[j]) * psi[j];
  return d;
}

/// J_i = Im(Ψ* C_iΨ) on points. The dynamics uses the conserved link
/// current of the kinetic operator instead (hamiltonian.hpp).
inline RealField current_density(const ComplexField& psi, const GaugeState& gauge, int axis,
                                 const Grid& g) {
  const ComplexField c = covariant_derivative(psi, gauge, axis, g);
  RealField j(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) j[k] = std::imag(std::conj(psi[k]) * c[k]);
  return j;
}

}  // namespace funcgauge
