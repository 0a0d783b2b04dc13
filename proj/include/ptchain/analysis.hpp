#pragma once

// Spectral statistics on top of the transform + eigensolver pipeline:
// inverse participation ratios, density-of-states histograms, and the
// IPR-vs-N scaling study with log-log fits.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "eigensolver.hpp"
#include "lattice.hpp"
#include "transform.hpp"

namespace ptchain {

inline constexpr int default_dos_bins = 101;
inline constexpr int default_ipr_bins = 40;
inline const std::vector<int> default_scaling_sizes = {100, 200, 500, 1000, 2000};

/// Full pipeline: Hermitian counterpart, gauge reduction, diagonalization.
/// Throws criterion_error when the chain has no real spectrum.
inline Spectrum chain_spectrum(const PTChain& chain, DecomposeMode mode,
                               double phase_tol = default_phase_tol) {
  const auto h = hermitize(chain, phase_tol);
  const auto g = gauge_reduce(h);
  const SymTridiag m{std::vector<double>(h.n_sites, 0.0), g.real_offdiag};
  return decompose(m, mode);
}

/// sum |f|^4 / (sum |f|^2)^2; 1/N for a uniform state, ~1 for a localized one.
inline double ipr(const std::vector<double>& f) {
  double s2 = 0.0, s4 = 0.0;
  for (double x : f) {
    const double m2 = x * x;
    s2 += m2;
    s4 += m2 * m2;
  }
  if (s2 == 0.0) throw std::invalid_argument("ipr: zero vector");
  return s4 / (s2 * s2);
}

inline double ipr(const std::vector<cplx>& f) {
  double s2 = 0.0, s4 = 0.0;
  for (const cplx& x : f) {
    const double m2 = std::norm(x);
    s2 += m2;
    s4 += m2 * m2;
  }
  if (s2 == 0.0) throw std::invalid_argument("ipr: zero vector");
  return s4 / (s2 * s2);
}

/// Per-state IPRs of a full decomposition.  argmin/argmax are 0-based
/// indices into Spectrum::values (first occurrence on ties).
struct IPRReport {
  std::vector<double> per_state;
  double min_ipr = 0.0;
  double max_ipr = 0.0;
  int argmin = 0;
  int argmax = 0;
};

inline IPRReport ipr_report(const Spectrum& spec) {
  if (spec.vectors.empty())
    throw std::invalid_argument("ipr_report: spectrum has no eigenvectors");
  IPRReport rep;
  rep.per_state.resize(spec.vectors.size());
  for (std::size_t j = 0; j < spec.vectors.size(); ++j) rep.per_state[j] = ipr(spec.vectors[j]);
  const auto mn = std::min_element(rep.per_state.begin(), rep.per_state.end());
  const auto mx = std::max_element(rep.per_state.begin(), rep.per_state.end());
  rep.argmin = static_cast<int>(mn - rep.per_state.begin());
  rep.argmax = static_cast<int>(mx - rep.per_state.begin());
  rep.min_ipr = *mn;
  rep.max_ipr = *mx;
  return rep;
}

/// Histogram with B+1 edges and B counts.  Bins are left-closed except
/// the final bin, which also includes the upper edge.
struct DOSHistogram {
  std::vector<double> bin_edges;
  std::vector<double> counts;
  bool normalized = false;
};

namespace detail {

inline DOSHistogram histogram(const std::vector<double>& values, double lo, double hi, int bins,
                              bool log_spaced) {
  DOSHistogram h;
  h.bin_edges.resize(bins + 1);
  h.counts.assign(bins, 0.0);
  if (log_spaced) {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i <= bins; ++i) h.bin_edges[i] = std::exp(llo + (lhi - llo) * i / bins);
  } else {
    for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
  }
  h.bin_edges.front() = lo;
  h.bin_edges.back() = hi;
  for (double v : values) {
    int idx;
    if (hi == lo) {
      idx = bins - 1;
    } else {
      const double u = log_spaced ? (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo))
                                  : (v - lo) / (hi - lo);
      idx = std::clamp(static_cast<int>(std::floor(u * bins)), 0, bins - 1);
    }
    h.counts[idx] += 1.0;
  }
  return h;
}

}  // namespace detail

/// Equal-width histogram of the given energies.  energy_normalized first
/// divides all energies by max |E|; normalized rescales counts to unit
/// integral.
inline DOSHistogram dos(const std::vector<double>& values, int bins = default_dos_bins,
                        bool normalized = false, bool energy_normalized = false) {
  if (values.empty()) throw std::invalid_argument("dos: no values");
  if (bins < 1) throw std::invalid_argument("dos: need at least one bin");
  std::vector<double> v = values;
  if (energy_normalized) {
    double emax = 0.0;
    for (double x : v) emax = std::max(emax, std::abs(x));
    if (emax > 0.0)
      for (double& x : v) x /= emax;
  }
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  auto h = detail::histogram(v, *mn, *mx, bins, false);
  if (normalized) {
    const double width = (*mx - *mn) / bins;
    const double total = static_cast<double>(v.size());
    const double scale = width > 0.0 ? total * width : total;
    for (double& c : h.counts) c /= scale;
    h.normalized = true;
  }
  return h;
}

/// Histogram of per-state IPRs, log-spaced bins by default (IPRs spread
/// over decades once states localize).
inline DOSHistogram ipr_histogram(const IPRReport& rep, int bins = default_ipr_bins,
                                  bool log_spaced = true) {
  if (rep.per_state.empty()) throw std::invalid_argument("ipr_histogram: empty report");
  if (bins < 1) throw std::invalid_argument("ipr_histogram: need at least one bin");
  const auto [mn, mx] = std::minmax_element(rep.per_state.begin(), rep.per_state.end());
  if (log_spaced && !(*mn > 0.0))
    throw std::invalid_argument("ipr_histogram: log bins need positive values");
  return detail::histogram(rep.per_state, *mn, *mx, bins, log_spaced);
}

/// Least-squares fit of log(ipr) against log(N).  exponent is the decay
/// power, i.e. minus the slope; saturated flags |slope| < 0.05.
struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<int> sizes_used;
  bool saturated = false;
};

inline ScalingFit fit_log_log(const std::vector<int>& sizes, const std::vector<double>& vals) {
  if (sizes.size() != vals.size() || sizes.size() < 2)
    throw std::invalid_argument("fit_log_log: need at least two points");
  const std::size_t n = sizes.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(static_cast<double>(sizes[i]));
    ys[i] = std::log(vals[i]);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  ScalingFit fit;
  fit.exponent = -slope;
  fit.intercept = my - slope * mx;
  fit.sizes_used = sizes;
  fit.saturated = std::abs(slope) < 0.05;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = fit.intercept + slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

struct ScalingStudy {
  struct Row {
    int n_sites = 0;
    double min_ipr = 0.0;
    double max_ipr = 0.0;
  };
  std::vector<Row> rows;
  ScalingFit min_fit;
  ScalingFit max_fit;
};

/// Runs the full pipeline per size and fits min/max IPR against N.
/// Sizes are processed independently (up to max_threads workers, 0 =
/// hardware concurrency) and aggregated in input order, so the result
/// does not depend on the thread count.
inline ScalingStudy scaling_study(const PowerLaw& profile, const std::vector<int>& sizes,
                                  unsigned max_threads = 0) {
  if (sizes.empty()) throw std::invalid_argument("scaling_study: no sizes");
  for (int n : sizes)
    if (n < 2) throw std::invalid_argument("scaling_study: sizes must be >= 2");

  ScalingStudy study;
  study.rows.resize(sizes.size());
  unsigned workers = max_threads ? max_threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(sizes.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sizes.size()) return;
      try {
        const auto chain = build_chain(profile, sizes[i]);
        const auto spec = chain_spectrum(chain, DecomposeMode::full);
        const auto rep = ipr_report(spec);
        study.rows[i] = {sizes[i], rep.min_ipr, rep.max_ipr};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<double> mins(sizes.size()), maxs(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    mins[i] = study.rows[i].min_ipr;
    maxs[i] = study.rows[i].max_ipr;
  }
  study.min_fit = fit_log_log(sizes, mins);
  study.max_fit = fit_log_log(sizes, maxs);
  return study;
}

/// True when the sorted spectrum is symmetric about zero:
/// |E_j + E_{N+1-j}| <= tol * max |E| for every j.
inline bool symmetry_check(const std::vector<double>& sorted_values, double tol) {
  if (sorted_values.empty()) throw std::invalid_argument("symmetry_check: no values");
  const std::size_t n = sorted_values.size();
  const double scale = std::max(std::abs(sorted_values.front()), std::abs(sorted_values.back()));
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(sorted_values[j] + sorted_values[n - 1 - j]) > tol * scale) return false;
  return true;
}

/// One row per state whose IPR exceeds the threshold.  state and
/// peak_site are 1-based, matching the file output convention.
struct EdgeState {
  int state = 0;
  double energy = 0.0;
  double ipr = 0.0;
  int peak_site = 0;
};

inline std::vector<EdgeState> edge_state_report(const Spectrum& spec,
                                                double ipr_threshold = 0.05) {
  if (spec.vectors.empty())
    throw std::invalid_argument("edge_state_report: spectrum has no eigenvectors");
  std::vector<EdgeState> out;
  for (std::size_t j = 0; j < spec.vectors.size(); ++j) {
    const double p = ipr(spec.vectors[j]);
    if (p <= ipr_threshold) continue;
    const auto& v = spec.vectors[j];
    int peak = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
      if (std::abs(v[k]) > std::abs(v[peak])) peak = static_cast<int>(k);
    out.push_back({static_cast<int>(j) + 1, spec.values[j], p, peak + 1});
  }
  return out;
}

}  // namespace ptchain
