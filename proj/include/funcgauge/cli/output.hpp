#pragma once

// Artifact writers: CSV with 17 significant digits and LF endings, flat
// binary arrays with a JSON sidecar, and the summary document.

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "funcgauge/dynamics.hpp"
#include "funcgauge/stationary.hpp"

namespace funcgauge::cli {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : f_(path, std::ios::binary) {
    if (!f_) throw std::runtime_error("cannot write " + path.string());
    row_strings(header);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> s;
    s.reserve(values.size());
    for (double v : values) s.push_back(fmt17(v));
    row_strings(s);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) f_ << ',';
      f_ << cells[k];
    }
    f_ << '\n';
  }

 private:
  std::ofstream f_;
};

inline void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  CsvWriter w(path, {"time", "norm2", "charge_integral", "total_Q", "gauss_residual", "continuity_residual", "energy",
                     "overlap_re", "overlap_im", "clamp_count"});
  for (const TraceRecord& r : trace)
    w.row({r.time, r.norm2, r.charge_integral, r.total_Q, r.gauss_residual, r.continuity_residual, r.energy,
           r.overlap_with_initial.real(), r.overlap_with_initial.imag(), static_cast<double>(r.clamp_count)});
}

inline void write_scan_csv(const std::filesystem::path& path, const IRScan& scan) {
  CsvWriter w(path, {"l", "omega_scf", "omega_linear", "delta_omega", "s_value", "q_total", "iterations",
                     "residual_eom", "converged"});
  for (const IRScanRow& r : scan.rows)
    w.row({r.l, r.omega_scf, r.omega_linear, r.delta_omega, r.s_value, r.q_total, static_cast<double>(r.iterations),
           r.residual_eom, r.converged ? 1.0 : 0.0});
}

/// Raw little- or big-endian IEEE doubles plus `<name>.json` describing
/// them. Complex data is stored as interleaved (re, im) pairs.
inline void dump_array(const std::filesystem::path& dir, const std::string& name, const double* data,
                       std::size_t count, const std::vector<std::size_t>& shape, bool complex,
                       const std::string& ordering) {
  const std::filesystem::path bin = dir / (name + ".bin");
  std::ofstream f(bin, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + bin.string());
  f.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  nlohmann::ordered_json h;
  h["file"] = bin.filename().string();
  h["dtype"] = complex ? "complex128" : "float64";
  h["width_bytes"] = complex ? 16 : 8;
  h["layout"] = complex ? "interleaved re,im" : "scalar";
  h["endianness"] = std::endian::native == std::endian::little ? "little" : "big";
  h["shape"] = shape;
  h["ordering"] = ordering;
  std::ofstream j(dir / (name + ".json"), std::ios::binary);
  j << h.dump(2) << '\n';
}

inline std::vector<std::size_t> grid_shape(const Grid& g) {
  return std::vector<std::size_t>(g.n_sites(), static_cast<std::size_t>(g.n_phi()));
}

inline const char* kGridOrdering = "row-major, site 0 slowest; index = sum_i k_i * n_phi^(n_sites-1-i)";
inline const char* kLinkOrdering =
    "[site][line][slot]: per site axis, lines in row-major order of the other sites, n_phi+1 slots per line; "
    "slot s joins grid points s-1 and s";

inline void dump_real(const std::filesystem::path& dir, const std::string& name, const RealField& f, const Grid& g) {
  dump_array(dir, name, f.data(), f.size(), grid_shape(g), false, kGridOrdering);
}

inline void dump_complex(const std::filesystem::path& dir, const std::string& name, const ComplexField& f,
                         const Grid& g) {
  dump_array(dir, name, reinterpret_cast<const double*>(f.data()), 2 * f.size(), grid_shape(g), true, kGridOrdering);
}

inline void dump_links(const std::filesystem::path& dir, const std::string& name, const LinkFields& l, const Grid& g) {
  std::vector<double> flat;
  for (const RealField& f : l) flat.insert(flat.end(), f.begin(), f.end());
  dump_array(dir, name, flat.data(), flat.size(), {static_cast<std::size_t>(g.n_sites()), g.link_size()}, false,
             kLinkOrdering);
}

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

}  // namespace funcgauge::cli
