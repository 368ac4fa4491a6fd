#pragma once

// Lattice image of the functional calculus: a periodic spatial lattice of
// n_sites points, each carrying one field axis sampled at n_phi points in
// [-phi_max, phi_max]. A configuration-space field holds one value per point
// of the N_phi^N_x product grid, stored row-major with site 0 slowest.
//
// Dictionary used throughout:
//   ∫d³x        -> a Σ_i
//   δ/δφ(x_i)   -> (1/a) ∂/∂φ_i
//   ∫Dφ         -> w Σ_j ,  w = Δφ^N_x
//
// Field axes are Dirichlet: ghost values just outside the box are zero.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace funcgauge {

using cplx = std::complex<double>;
using RealField = std::vector<double>;
using ComplexField = std::vector<cplx>;

/// Gauge-field components on links: one vector per spatial site (axis).
/// Along an axis line of n_phi points there are n_phi+1 link slots; slot s
/// joins point s-1 to point s, so slots 0 and n_phi touch the ghosts.
using LinkFields = std::vector<RealField>;

class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest round-trip-ish decimal form for messages.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Iterative or eigen solver failure; carries the best residual reached.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class Grid {
 public:
  static constexpr std::size_t kMaxPoints = std::size_t{1} << 26;

  Grid(int n_sites, double spacing_a, int n_phi, double phi_max)
      : n_sites_(n_sites), spacing_(spacing_a), n_phi_(n_phi), phi_max_(phi_max) {
    if (n_sites < 1) throw ContractViolation("grid: n_sites must be >= 1");
    if (n_phi < 3) throw ContractViolation("grid: n_phi must be >= 3");
    if (!(spacing_a > 0.0)) throw ContractViolation("grid: spacing_a must be > 0");
    if (!(phi_max > 0.0)) throw ContractViolation("grid: phi_max must be > 0");
    delta_phi_ = 2.0 * phi_max / (n_phi - 1);
    measure_ = 1.0;
    size_ = 1;
    strides_.assign(n_sites, 1);
    for (int i = 0; i < n_sites; ++i) {
      if (size_ > kMaxPoints / static_cast<std::size_t>(n_phi))
        throw ContractViolation("grid: N_phi^N_x exceeds the enumerable limit");
      size_ *= static_cast<std::size_t>(n_phi);
      measure_ *= delta_phi_;
    }
    for (int i = n_sites - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * n_phi;
  }

  int n_sites() const { return n_sites_; }
  double spacing() const { return spacing_; }
  int n_phi() const { return n_phi_; }
  double phi_max() const { return phi_max_; }
  double delta_phi() const { return delta_phi_; }
  /// Configuration measure weight w = Δφ^N_x.
  double measure() const { return measure_; }
  /// Number of configuration points M = N_φ^N_x.
  std::size_t size() const { return size_; }
  std::size_t stride(int site) const { return strides_[site]; }

  double phi(int k) const { return -phi_max_ + k * delta_phi_; }
  int coord(std::size_t j, int site) const {
    return static_cast<int>((j / strides_[site]) % static_cast<std::size_t>(n_phi_));
  }
  double field_value(std::size_t j, int site) const { return phi(coord(j, site)); }

  /// Entries in one axis' link field.
  std::size_t link_size() const { return size_ / n_phi_ * (n_phi_ + 1); }

  /// Index of the configuration -φ (every axis reflected).
  std::size_t reflect(std::size_t j) const {
    std::size_t r = 0;
    for (int i = 0; i < n_sites_; ++i) r += (n_phi_ - 1 - coord(j, i)) * strides_[i];
    return r;
  }

  void check_site(int site, const char* who) const {
    if (site < 0 || site >= n_sites_)
      throw ContractViolation(std::string(who) + ": site index out of range");
  }
  void check_size(std::size_t n, const char* who) const {
    if (n != size_)
      throw ContractViolation(std::string(who) + ": field size " + std::to_string(n) +
                              " does not match grid size " + std::to_string(size_));
  }
  void check_links(const LinkFields& links, const char* who) const {
    if (links.size() != static_cast<std::size_t>(n_sites_))
      throw ContractViolation(std::string(who) + ": expected one link field per site");
    for (const auto& l : links)
      if (l.size() != link_size())
        throw ContractViolation(std::string(who) + ": link field has wrong size");
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_sites_ == b.n_sites_ && a.spacing_ == b.spacing_ && a.n_phi_ == b.n_phi_ &&
           a.phi_max_ == b.phi_max_;
  }

 private:
  int n_sites_;
  double spacing_;
  int n_phi_;
  double phi_max_;
  double delta_phi_ = 0.0;
  double measure_ = 1.0;
  std::size_t size_ = 1;
  std::vector<std::size_t> strides_;
};

/// Visits every line of points along `axis`. The callback receives the
/// index of the first point, the index of the first link slot, and the
/// common stride of both.
template <class Fn>
void for_each_line(const Grid& g, int axis, Fn&& fn) {
  const std::size_t inner = g.stride(axis);
  const std::size_t n = static_cast<std::size_t>(g.n_phi());
  const std::size_t outer = g.size() / (inner * n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) fn(o * n * inner + in, o * (n + 1) * inner + in, inner);
}

inline LinkFields zero_links(const Grid& g) {
  return LinkFields(g.n_sites(), RealField(g.link_size(), 0.0));
}

/// ∫Dφ f, summed in storage order.
template <class T>
T functional_integral(std::span<const T> f, const Grid& g) {
  g.check_size(f.size(), "functional_integral");
  T acc{};
  for (const T& v : f) acc += v;
  return acc * g.measure();
}
template <class T>
T functional_integral(const std::vector<T>& f, const Grid& g) {
  return functional_integral(std::span<const T>(f), g);
}

/// δf/δφ(x_i): second-order central difference divided by a, zero ghosts.
template <class T>
std::vector<T> functional_derivative(const std::vector<T>& f, int axis, const Grid& g) {
  g.check_size(f.size(), "functional_derivative");
  g.check_site(axis, "functional_derivative");
  std::vector<T> out(f.size());
  const int n = g.n_phi();
  const double c = 1.0 / (2.0 * g.delta_phi() * g.spacing());
  for_each_line(g, axis, [&](std::size_t base, std::size_t, std::size_t st) {
    for (int k = 0; k < n; ++k) {
      const T up = k + 1 < n ? f[base + (k + 1) * st] : T{};
      const T dn = k > 0 ? f[base + (k - 1) * st] : T{};
      out[base + k * st] = (up - dn) * c;
    }
  });
  return out;
}

/// ∫d³x δ²f/δφ(x)² -> (1/a) Σ_i (f[j+e_i] - 2 f[j] + f[j-e_i]) / Δφ².
template <class T>
std::vector<T> config_laplacian(const std::vector<T>& f, const Grid& g) {
  g.check_size(f.size(), "config_laplacian");
  std::vector<T> out(f.size(), T{});
  const int n = g.n_phi();
  const double c = 1.0 / (g.spacing() * g.delta_phi() * g.delta_phi());
  for (int axis = 0; axis < g.n_sites(); ++axis) {
    for_each_line(g, axis, [&](std::size_t base, std::size_t, std::size_t st) {
      for (int k = 0; k < n; ++k) {
        const T up = k + 1 < n ? f[base + (k + 1) * st] : T{};
        const T dn = k > 0 ? f[base + (k - 1) * st] : T{};
        out[base + k * st] += (up - 2.0 * f[base + k * st] + dn) * c;
      }
    });
  }
  return out;
}

enum class Ghost {
  zero,    ///< Dirichlet: values outside the box are 0
  mirror,  ///< boundary links carry no difference (gauge parameters)
};

/// Forward difference onto links: (f_s - f_{s-1}) / (a Δφ).
inline RealField link_gradient(const RealField& f, int axis, const Grid& g, Ghost ghost = Ghost::zero) {
  g.check_size(f.size(), "link_gradient");
  g.check_site(axis, "link_gradient");
  RealField out(g.link_size());
  const int n = g.n_phi();
  const double c = 1.0 / (g.spacing() * g.delta_phi());
  const bool mirror = ghost == Ghost::mirror;
  for_each_line(g, axis, [&](std::size_t base, std::size_t lbase, std::size_t st) {
    for (int s = 0; s <= n; ++s) {
      if (mirror && (s == 0 || s == n)) {
        out[lbase + s * st] = 0.0;
        continue;
      }
      const double hi = s < n ? f[base + s * st] : 0.0;
      const double lo = s > 0 ? f[base + (s - 1) * st] : 0.0;
      out[lbase + s * st] = (hi - lo) * c;
    }
  });
  return out;
}

/// Σ_i (E_i[upper link] - E_i[lower link]) / Δφ: the image of
/// ∫d³x δ/δφ(x) acting on a link field.
inline RealField link_divergence(const LinkFields& e, const Grid& g) {
  g.check_links(e, "link_divergence");
  RealField out(g.size(), 0.0);
  const int n = g.n_phi();
  const double c = 1.0 / g.delta_phi();
  for (int axis = 0; axis < g.n_sites(); ++axis) {
    const RealField& ea = e[axis];
    for_each_line(g, axis, [&](std::size_t base, std::size_t lbase, std::size_t st) {
      for (int k = 0; k < n; ++k) out[base + k * st] += (ea[lbase + (k + 1) * st] - ea[lbase + k * st]) * c;
    });
  }
  return out;
}

/// Site value of a link field: mean of the two links adjacent along `axis`.
inline RealField site_average(const RealField& link, int axis, const Grid& g) {
  g.check_site(axis, "site_average");
  if (link.size() != g.link_size()) throw ContractViolation("site_average: link field has wrong size");
  RealField out(g.size());
  const int n = g.n_phi();
  for_each_line(g, axis, [&](std::size_t base, std::size_t lbase, std::size_t st) {
    for (int k = 0; k < n; ++k) out[base + k * st] = 0.5 * (link[lbase + k * st] + link[lbase + (k + 1) * st]);
  });
  return out;
}

/// Fills one axis' link field from fn(first_point_of_line, slot).
template <class Fn>
RealField sample_links(const Grid& g, int axis, Fn&& fn) {
  RealField out(g.link_size());
  const int n = g.n_phi();
  for_each_line(g, axis, [&](std::size_t base, std::size_t lbase, std::size_t st) {
    for (int s = 0; s <= n; ++s) out[lbase + s * st] = fn(base, s);
  });
  return out;
}

inline double norm2(std::span<const double> f) {
  double acc = 0.0;
  for (double v : f) acc += v * v;
  return std::sqrt(acc);
}
inline double norm2(std::span<const cplx> f) {
  double acc = 0.0;
  for (const cplx& v : f) acc += std::norm(v);
  return std::sqrt(acc);
}

}  // namespace funcgauge
