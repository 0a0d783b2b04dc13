#pragma once

// File formats: small CSV tables (LF line endings, %.17g numbers so
// values round-trip) and a JSON envelope that mirrors them.  The hopping
// file is CSV with header k,re,im and one row per bond in order.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "eigensolver.hpp"
#include "lattice.hpp"
#include "transform.hpp"

namespace ptchain {

using json = nlohmann::json;

/// Round-trip-exact decimal form of a double.
inline std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<double>& values) {
  os << "n,energy\n";
  for (std::size_t j = 0; j < values.size(); ++j)
    os << j + 1 << ',' << fmt_g(values[j]) << '\n';
}

inline void write_histogram_csv(std::ostream& os, const DOSHistogram& h) {
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t j = 0; j < h.counts.size(); ++j)
    os << fmt_g(h.bin_edges[j]) << ',' << fmt_g(h.bin_edges[j + 1]) << ','
       << fmt_g(h.counts[j]) << '\n';
}

inline void write_ipr_csv(std::ostream& os, const std::vector<double>& energies,
                          const std::vector<double>& per_state) {
  os << "state,energy,ipr\n";
  for (std::size_t j = 0; j < per_state.size(); ++j)
    os << j + 1 << ',' << fmt_g(energies[j]) << ',' << fmt_g(per_state[j]) << '\n';
}

inline void write_scaling_csv(std::ostream& os, const ScalingStudy& study) {
  os << "N,min_ipr,max_ipr\n";
  for (const auto& row : study.rows)
    os << row.n_sites << ',' << fmt_g(row.min_ipr) << ',' << fmt_g(row.max_ipr) << '\n';
}

inline void write_scale_csv(std::ostream& os, const SimilarityScale& scale) {
  os << "k,log_m\n";
  for (std::size_t k = 0; k < scale.log_m.size(); ++k)
    os << k + 1 << ',' << fmt_g(scale.log_m[k]) << '\n';
}

inline void write_hermitian_csv(std::ostream& os, const HermitianChain& h) {
  os << "k,off_mag,off_phase\n";
  for (std::size_t k = 0; k < h.off_mag.size(); ++k)
    os << k + 1 << ',' << fmt_g(h.off_mag[k]) << ',' << fmt_g(h.off_phase[k]) << '\n';
}

inline void write_roots_csv(std::ostream& os, const std::vector<cplx>& roots) {
  os << "n,re,im\n";
  for (std::size_t j = 0; j < roots.size(); ++j)
    os << j + 1 << ',' << fmt_g(roots[j].real()) << ',' << fmt_g(roots[j].imag()) << '\n';
}

namespace detail {

inline std::string strip_eol(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

inline double parse_double(const std::string& tok, int line_no) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  while (ptr < e && (*ptr == ' ' || *ptr == '\t')) ++ptr;
  if (ec != std::errc{} || ptr != e)
    throw std::runtime_error("hopping file: bad number '" + tok + "' on line " +
                             std::to_string(line_no));
  return v;
}

}  // namespace detail

/// Parse a hopping file: header k,re,im then rows k=1..N-1 in order.
inline std::vector<cplx> read_hopping_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("hopping file: empty");
  if (detail::strip_eol(line) != "k,re,im")
    throw std::runtime_error("hopping file: expected header 'k,re,im'");
  std::vector<cplx> t;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = detail::strip_eol(line);
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string kf, ref, imf;
    if (!std::getline(row, kf, ',') || !std::getline(row, ref, ',') || !std::getline(row, imf))
      throw std::runtime_error("hopping file: expected 3 fields on line " +
                               std::to_string(line_no));
    const int k = static_cast<int>(detail::parse_double(kf, line_no));
    if (k != static_cast<int>(t.size()) + 1)
      throw std::runtime_error("hopping file: bond index " + std::to_string(k) +
                               " out of order on line " + std::to_string(line_no));
    t.emplace_back(detail::parse_double(ref, line_no), detail::parse_double(imf, line_no));
  }
  if (t.empty()) throw std::runtime_error("hopping file: no bonds");
  return t;
}

inline std::vector<cplx> read_hopping_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open hopping file: " + path);
  return read_hopping_csv(f);
}

inline json to_json(const DOSHistogram& h) {
  return json{{"bin_edges", h.bin_edges}, {"counts", h.counts}, {"normalized", h.normalized}};
}

inline json to_json(const ScalingFit& fit) {
  return json{{"exponent", fit.exponent},
              {"intercept", fit.intercept},
              {"r_squared", fit.r_squared},
              {"sizes_used", fit.sizes_used},
              {"saturated", fit.saturated}};
}

inline json to_json(const ScalingStudy& study) {
  json rows = json::array();
  for (const auto& row : study.rows)
    rows.push_back({{"N", row.n_sites}, {"min_ipr", row.min_ipr}, {"max_ipr", row.max_ipr}});
  return json{{"rows", rows}, {"min_fit", to_json(study.min_fit)}, {"max_fit", to_json(study.max_fit)}};
}

inline json to_json(const std::vector<cplx>& roots) {
  json arr = json::array();
  for (const cplx& r : roots) arr.push_back({{"re", r.real()}, {"im", r.imag()}});
  return arr;
}

/// Common envelope for all JSON output.
inline json make_envelope(const std::string& command, json config, json data, json meta) {
  return json{{"command", command},
              {"config", std::move(config)},
              {"data", std::move(data)},
              {"meta", std::move(meta)}};
}

}  // namespace ptchain
