#pragma once

// Time evolution in the temporal gauge 𝒜_t = 0:
//   ∂_tΨ = −i HΨ / P,   P = 1 + S + log p
//   ∂_t𝒜_i = E_i,       ∂_tE_i = (f/l²) J_i
// with J the link current of the kinetic operator. In continuous time the
// Gauss field and ∫ρN(ρ) are then exactly conserved wherever P is not
// clamped. S stays frozen at its initial value.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "funcgauge/hamiltonian.hpp"
#include "funcgauge/poisson.hpp"

namespace funcgauge {

struct EvolutionState {
  ComplexField psi;
  LinkFields a_phi;
  LinkFields e_field;
  double time = 0.0;
  double s_param = 0.0;
};

struct TraceRecord {
  double time = 0.0;
  double norm2 = 0.0;
  double charge_integral = 0.0;  ///< ∫Dφ ρN(ρ)
  double total_Q = 0.0;
  double gauss_residual = 0.0;
  double continuity_residual = 0.0;
  double energy = 0.0;  ///< ⟨Ψ|HΨ⟩ / ⟨Ψ|Ψ⟩
  cplx overlap_with_initial{};
  long clamp_count = 0;  ///< cumulative
};

enum class EvolutionMode {
  coupled,  ///< full nonlinear, gauge-coupled system
  linear,   ///< P ≡ 1 and the connection frozen: plain −iHΨ
};

struct EvolveOptions {
  double dt = 1e-3;
  int n_steps = 1000;
  int record_stride = 10;
  double eps_P = 1e-3;
  EvolutionMode mode = EvolutionMode::coupled;
  bool keep_states = true;  ///< needed for the continuity column
};

struct EvolutionResult {
  EvolutionState state;
  std::vector<TraceRecord> trace;
  std::vector<EvolutionState> recorded;  ///< states at the trace times
  std::vector<std::string> warnings;
};

/// Thrown when a non-finite value appears; holds the trace up to the last
/// finite record and the state there.
class EvolutionAborted : public SolverError {
 public:
  EvolutionAborted(const std::string& what, std::vector<TraceRecord> trace, EvolutionState last)
      : SolverError(what, std::nan("")), trace_(std::move(trace)), last_(std::move(last)) {}
  const std::vector<TraceRecord>& trace() const { return trace_; }
  const EvolutionState& last_good() const { return last_; }

 private:
  std::vector<TraceRecord> trace_;
  EvolutionState last_;
};

struct StateDerivative {
  ComplexField psi;
  LinkFields a_phi;
  LinkFields e_field;
};

inline void check_state(const EvolutionState& s, const Grid& g, const char* who) {
  g.check_size(s.psi.size(), who);
  g.check_links(s.a_phi, who);
  g.check_links(s.e_field, who);
}

/// Evolution prefactor with the clamp |P| ≥ eps_P. Adds the number of
/// clamped points to *clamps.
inline RealField clamped_prefactor(const RealField& rho, double S, const Grid& g, double eps_P,
                                   long* clamps) {
  RealField p = prefactor(rho, S, g);
  for (double& v : p) {
    if (std::abs(v) < eps_P) {
      v = v < 0.0 ? -eps_P : eps_P;
      if (clamps) ++*clamps;
    }
  }
  return p;
}

inline StateDerivative coupled_rhs(const EvolutionState& st, const DiscreteHamiltonian& H,
                                   EvolutionMode mode = EvolutionMode::coupled, double eps_P = 1e-3,
                                   long* clamps = nullptr) {
  const Grid& g = H.grid();
  check_state(st, g, "coupled_rhs");
  StateDerivative d;
  const ComplexField hpsi = H.apply(st.psi, &st.a_phi);
  d.psi.resize(hpsi.size());
  if (mode == EvolutionMode::linear) {
    for (std::size_t j = 0; j < hpsi.size(); ++j) d.psi[j] = cplx(hpsi[j].imag(), -hpsi[j].real());
    d.a_phi = zero_links(g);
    d.e_field = zero_links(g);
    return d;
  }
  const RealField P = clamped_prefactor(density(st.psi), st.s_param, g, eps_P, clamps);
  for (std::size_t j = 0; j < hpsi.size(); ++j)
    d.psi[j] = cplx(hpsi[j].imag(), -hpsi[j].real()) / P[j];
  d.a_phi = st.e_field;
  const double c = H.params().coupling();
  d.e_field.reserve(g.n_sites());
  for (int i = 0; i < g.n_sites(); ++i) {
    RealField j = H.link_current(st.psi, &st.a_phi, i);
    for (double& v : j) v *= c;
    d.e_field.push_back(std::move(j));
  }
  return d;
}

inline TraceRecord make_record(const EvolutionState& st, const ComplexField& psi0, const DiscreteHamiltonian& H,
                               long clamps) {
  const Grid& g = H.grid();
  const RealField rho = density(st.psi);
  const Charge q = charge_density_and_total(rho, st.s_param, H.params(), g);
  TraceRecord r;
  r.time = st.time;
  r.norm2 = functional_integral(rho, g);
  r.charge_integral = functional_integral(q.density, g);
  r.total_Q = q.total;
  r.gauss_residual = gauss_residual(st.e_field, rho, st.s_param, H.params(), g);
  const ComplexField hpsi = H.apply(st.psi, &st.a_phi);
  r.energy = r.norm2 > 0.0 ? inner(st.psi, hpsi, g).real() / r.norm2 : 0.0;
  r.overlap_with_initial = inner(psi0, st.psi, g);
  r.clamp_count = clamps;
  return r;
}

/// Initial data in the temporal gauge: 𝒜_φ = 0 and the longitudinal E
/// that satisfies the Gauss law for (ρ, S).
inline EvolutionState temporal_gauge_state(const ComplexField& psi, double S, const DiscreteHamiltonian& H,
                                           double poisson_tol = 1e-10) {
  const Grid& g = H.grid();
  g.check_size(psi.size(), "temporal_gauge_state");
  EvolutionState st;
  st.psi = psi;
  st.a_phi = zero_links(g);
  st.e_field = initial_longitudinal_field(density(psi), S, H.params(), g, poisson_tol);
  st.s_param = S;
  return st;
}

namespace detail {

// Flat real view of an evolution state, for the Runge-Kutta stages.
inline std::size_t flat_size(const Grid& g) { return 2 * g.size() + 2 * g.n_sites() * g.link_size(); }

inline void pack(const ComplexField& psi, const LinkFields& a, const LinkFields& e, std::vector<double>& y) {
  y.resize(2 * psi.size() + 2 * a.size() * (a.empty() ? 0 : a[0].size()));
  std::size_t k = 0;
  for (const cplx& v : psi) {
    y[k++] = v.real();
    y[k++] = v.imag();
  }
  for (const auto& l : a)
    for (double v : l) y[k++] = v;
  for (const auto& l : e)
    for (double v : l) y[k++] = v;
}

inline void unpack(const std::vector<double>& y, EvolutionState& st) {
  std::size_t k = 0;
  for (cplx& v : st.psi) {
    v = cplx(y[k], y[k + 1]);
    k += 2;
  }
  for (auto& l : st.a_phi)
    for (double& v : l) v = y[k++];
  for (auto& l : st.e_field)
    for (double& v : l) v = y[k++];
}

inline bool all_finite(const std::vector<double>& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace detail

/// ∂_t(ρN) + Σ_i ∂_iJ_i at each recorded state, as sqrt(w Σ r²). The time
/// derivative is a central difference across neighbouring records
/// (one-sided three-point at the ends); records must be equally spaced.
inline std::vector<double> continuity_residual(const std::vector<EvolutionState>& states,
                                               const DiscreteHamiltonian& H) {
  const Grid& g = H.grid();
  const std::size_t n = states.size();
  if (n < 3) throw ContractViolation("continuity_residual: need at least 3 recorded states");
  const double dt = states[1].time - states[0].time;
  if (!(dt > 0.0)) throw ContractViolation("continuity_residual: records must advance in time");
  std::vector<RealField> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    check_state(states[k], g, "continuity_residual");
    q[k] = charge_density_and_total(density(states[k].psi), states[k].s_param, H.params(), g).density;
  }
  std::vector<double> out(n);
  RealField r(g.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (k == 0)
        r[j] = (-3.0 * q[0][j] + 4.0 * q[1][j] - q[2][j]) / (2.0 * dt);
      else if (k == n - 1)
        r[j] = (3.0 * q[n - 1][j] - 4.0 * q[n - 2][j] + q[n - 3][j]) / (2.0 * dt);
      else
        r[j] = (q[k + 1][j] - q[k - 1][j]) / (2.0 * dt);
    }
    LinkFields J;
    for (int i = 0; i < g.n_sites(); ++i) J.push_back(H.link_current(states[k].psi, &states[k].a_phi, i));
    const RealField div = link_divergence(J, g);
    double acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double v = r[j] + div[j];
      acc += v * v;
    }
    out[k] = std::sqrt(acc * g.measure());
  }
  return out;
}

/// Classical RK4 with compensated accumulation of the state. Records at
/// steps 0, stride, 2·stride, ..., n_steps.
inline EvolutionResult evolve(const EvolutionState& init, const DiscreteHamiltonian& H,
                              const EvolveOptions& opt) {
  const Grid& g = H.grid();
  check_state(init, g, "evolve");
  if (!(opt.dt > 0.0)) throw ContractViolation("evolve: dt must be > 0");
  if (opt.record_stride < 1) throw ContractViolation("evolve: record_stride must be >= 1");
  if (opt.n_steps < 2 * opt.record_stride || opt.n_steps % opt.record_stride != 0)
    throw ContractViolation("evolve: n_steps must be a multiple of record_stride and at least twice it");
  if (!(opt.eps_P > 0.0)) throw ContractViolation("evolve: eps_P must be > 0");

  EvolutionResult res;
  const double cfl = g.delta_phi() * g.delta_phi() * g.spacing();
  if (opt.dt >= cfl)
    res.warnings.push_back("dt = " + num(opt.dt) + " is not below a*dphi^2 = " + num(cfl));

  long clamps = 0;
  EvolutionState st = init;
  const ComplexField psi0 = init.psi;
  res.trace.push_back(make_record(st, psi0, H, clamps));
  if (opt.keep_states) res.recorded.push_back(st);

  std::vector<double> y, comp(detail::flat_size(g), 0.0), k1, k2, k3, k4, tmp, incr(detail::flat_size(g));
  detail::pack(st.psi, st.a_phi, st.e_field, y);
  EvolutionState stage = st;
  auto rhs = [&](const std::vector<double>& yy, std::vector<double>& out) {
    detail::unpack(yy, stage);
    const StateDerivative d = coupled_rhs(stage, H, opt.mode, opt.eps_P, &clamps);
    detail::pack(d.psi, d.a_phi, d.e_field, out);
  };
  auto axpy = [&](double s, const std::vector<double>& k) {
    tmp.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + s * k[i];
  };

  const double dt = opt.dt;
  EvolutionState last_good = st;
  for (int step = 1; step <= opt.n_steps; ++step) {
    rhs(y, k1);
    axpy(0.5 * dt, k1);
    rhs(tmp, k2);
    axpy(0.5 * dt, k2);
    rhs(tmp, k3);
    axpy(dt, k3);
    rhs(tmp, k4);
    for (std::size_t i = 0; i < y.size(); ++i) {
      incr[i] = dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      const double yk = incr[i] - comp[i];
      const double t = y[i] + yk;
      comp[i] = (t - y[i]) - yk;
      y[i] = t;
    }
    if (!detail::all_finite(y))
      throw EvolutionAborted("evolve: non-finite value at step " + std::to_string(step), res.trace, last_good);
    if (step % opt.record_stride == 0) {
      detail::unpack(y, st);
      st.time = init.time + step * dt;
      res.trace.push_back(make_record(st, psi0, H, clamps));
      if (opt.keep_states) res.recorded.push_back(st);
      last_good = st;
    }
  }
  detail::unpack(y, st);
  st.time = init.time + opt.n_steps * dt;
  res.state = st;
  if (opt.keep_states) {
    const std::vector<double> c = continuity_residual(res.recorded, H);
    for (std::size_t k = 0; k < c.size(); ++k) res.trace[k].continuity_residual = c[k];
  }
  return res;
}

/// −iHΨ with no connection, integrated by the same RK4 scheme.
inline ComplexField evolve_linear_baseline(const ComplexField& psi, const DiscreteHamiltonian& H, double dt,
                                           int n_steps) {
  const Grid& g = H.grid();
  g.check_size(psi.size(), "evolve_linear_baseline");
  if (!(dt > 0.0)) throw ContractViolation("evolve_linear_baseline: dt must be > 0");
  if (n_steps < 0) throw ContractViolation("evolve_linear_baseline: n_steps must be >= 0");
  ComplexField y = psi, k1, k2, k3, k4, tmp(psi.size()), comp(psi.size(), cplx{});
  auto f = [&](const ComplexField& x) {
    ComplexField h = H.apply(x, nullptr);
    for (cplx& v : h) v = cplx(v.imag(), -v.real());
    return h;
  };
  for (int step = 0; step < n_steps; ++step) {
    k1 = f(y);
    for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
    k2 = f(tmp);
    for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
    k3 = f(tmp);
    for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + dt * k3[j];
    k4 = f(tmp);
    for (std::size_t j = 0; j < y.size(); ++j) {
      const cplx yk = dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) - comp[j];
      const cplx t = y[j] + yk;
      comp[j] = (t - y[j]) - yk;
      y[j] = t;
    }
    for (const cplx& v : y)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw SolverError("evolve_linear_baseline: non-finite value at step " + std::to_string(step + 1),
                          std::nan(""));
  }
  return y;
}

/// Single-site marginal distributions: out[i][k] = w Σ_{φ_i = φ_k} ρ.
inline std::vector<RealField> site_marginals(const RealField& rho, const Grid& g) {
  g.check_size(rho.size(), "site_marginals");
  std::vector<RealField> out(g.n_sites(), RealField(g.n_phi(), 0.0));
  for (std::size_t j = 0; j < rho.size(); ++j)
    for (int i = 0; i < g.n_sites(); ++i) out[i][g.coord(j, i)] += rho[j];
  for (auto& m : out)
    for (double& v : m) v *= g.measure();
  return out;
}

struct MicrocausalityReport {
  int kick_site = 0;
  double kick_strength = 0.0;
  double t_spread = 0.0;
  std::vector<double> deviation_at_kick;    ///< per site, L¹
  std::vector<double> deviation_after;      ///< per site, L¹
  long clamp_count = 0;
};

/// Phase-kicks Ψ ← e^{−iεφ_{i₀}}Ψ and compares the site marginals against
/// an unkicked twin, right after the kick and after t_spread.
inline MicrocausalityReport microcausality_probe(const EvolutionState& init, const DiscreteHamiltonian& H,
                                                 int kick_site, double eps, double dt, double t_spread,
                                                 EvolutionMode mode = EvolutionMode::coupled) {
  const Grid& g = H.grid();
  if (g.n_sites() < 2) throw ContractViolation("microcausality_probe: needs at least 2 lattice sites");
  g.check_site(kick_site, "microcausality_probe");
  if (!(dt > 0.0) || !(t_spread > 0.0)) throw ContractViolation("microcausality_probe: dt and t_spread must be > 0");
  const int n_steps = static_cast<int>(std::llround(t_spread / dt));
  if (n_steps < 2 || std::abs(n_steps * dt - t_spread) > 1e-9 * t_spread)
    throw ContractViolation("microcausality_probe: t_spread must be a multiple of dt (at least 2 steps)");

  EvolutionState kicked = init;
  for (std::size_t j = 0; j < kicked.psi.size(); ++j)
    kicked.psi[j] *= std::polar(1.0, -eps * g.field_value(j, kick_site));

  auto deviations = [&](const ComplexField& a, const ComplexField& b) {
    const auto ma = site_marginals(density(a), g);
    const auto mb = site_marginals(density(b), g);
    std::vector<double> d(g.n_sites(), 0.0);
    for (int i = 0; i < g.n_sites(); ++i)
      for (int k = 0; k < g.n_phi(); ++k) d[i] += std::abs(ma[i][k] - mb[i][k]);
    return d;
  };

  MicrocausalityReport rep;
  rep.kick_site = kick_site;
  rep.kick_strength = eps;
  rep.t_spread = t_spread;
  rep.deviation_at_kick = deviations(kicked.psi, init.psi);

  EvolveOptions opt;
  opt.dt = dt;
  opt.n_steps = n_steps;
  opt.record_stride = n_steps / 2 * 2 == n_steps ? n_steps / 2 : 1;
  opt.mode = mode;
  opt.keep_states = false;
  const EvolutionResult a = evolve(kicked, H, opt);
  const EvolutionResult b = evolve(init, H, opt);
  rep.deviation_after = deviations(a.state.psi, b.state.psi);
  rep.clamp_count = a.trace.back().clamp_count + b.trace.back().clamp_count;
  return rep;
}

}  // namespace funcgauge
