#pragma once

// Similarity transform from the non-Hermitian chain to its Hermitian
// counterpart.  The diagonal map M with m_1 = 1 and
// m_{k+1} = m_k sqrt(t_{N-k}/t_k) turns the chain Hamiltonian into a
// Hermitian tridiagonal with bond magnitudes |t_k t_{N-k}|^(1/2).  The
// scale factors grow exponentially in N, so everything is kept in log
// space.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace ptchain {

inline constexpr double default_endpoint_tol = 1e-10;

/// log m_k for k = 1..N.  m_1 = 1, so log_m.front() = 0; the recurrence
/// telescopes back to log_m.back() = 0 as a consistency check.
struct SimilarityScale {
  std::vector<double> log_m;
};

/// Hermitian counterpart: zero diagonal, H[k][k+1] = -off_mag[k-1] *
/// exp(i off_phase[k-1]).  off_mag and off_phase are reflection
/// symmetric about the middle bond.
struct HermitianChain {
  int n_sites = 0;
  std::vector<double> off_mag;
  std::vector<double> off_phase;
};

/// Diagonal metric eta = M^{-2} with eta H eta^{-1} = H^dagger,
/// stored as log eta_kk.
struct Metric {
  std::vector<double> log_eta_diag;
};

class criterion_error : public std::runtime_error {
 public:
  explicit criterion_error(RealityCriterionReport rep)
      : std::runtime_error("reality criterion violated at bond " +
                           std::to_string(rep.first_violation.value_or(0))),
        report_(std::move(rep)) {}
  const RealityCriterionReport& report() const noexcept { return report_; }

 private:
  RealityCriterionReport report_;
};

class endpoint_error : public std::runtime_error {
 public:
  explicit endpoint_error(double log_m_end)
      : std::runtime_error("similarity recurrence failed to close: log m_N = " +
                           std::to_string(log_m_end)),
        log_m_end_(log_m_end) {}
  double log_m_end() const noexcept { return log_m_end_; }

 private:
  double log_m_end_;
};

inline SimilarityScale build_similarity(const PTChain& chain,
                                        double phase_tol = default_phase_tol,
                                        double endpoint_tol = default_endpoint_tol) {
  auto rep = reality_criterion(chain, phase_tol);
  if (!rep.satisfied) throw criterion_error(std::move(rep));
  const int n = chain.n_sites;
  SimilarityScale scale;
  scale.log_m.resize(n);
  scale.log_m[0] = 0.0;
  for (int k = 1; k < n; ++k)
    scale.log_m[k] = scale.log_m[k - 1] +
                     0.5 * (std::log(std::abs(chain.t[n - k - 1])) -
                            std::log(std::abs(chain.t[k - 1])));
  if (std::abs(scale.log_m[n - 1]) > endpoint_tol) throw endpoint_error(scale.log_m[n - 1]);
  return scale;
}

inline HermitianChain hermitize(const PTChain& chain, double phase_tol = default_phase_tol) {
  auto rep = reality_criterion(chain, phase_tol);
  if (!rep.satisfied) throw criterion_error(std::move(rep));
  const int n = chain.n_sites;
  HermitianChain h;
  h.n_sites = n;
  h.off_mag.resize(chain.t.size());
  h.off_phase.resize(chain.t.size());
  // Fill the lower half and mirror so the reflection symmetry is exact.
  for (int k = 1; k < n; ++k) {
    const int km = n - k;  // mirror bond
    if (k > km) {
      h.off_mag[k - 1] = h.off_mag[km - 1];
      h.off_phase[k - 1] = h.off_phase[km - 1];
    } else {
      h.off_mag[k - 1] = std::sqrt(std::abs(chain.t[k - 1]) * std::abs(chain.t[km - 1]));
      h.off_phase[k - 1] = std::arg(chain.t[k - 1]);
    }
  }
  return h;
}

/// Accumulated gauge that strips the bond phases: with
/// phi_1 = 0, phi_{k+1} = phi_k - theta_k, the matrix
/// D^{-1} H D, D = diag(exp(i phi)), is real symmetric with
/// off-diagonal real_offdiag[k-1] = -off_mag[k-1].
struct GaugeReduction {
  std::vector<double> real_offdiag;
  std::vector<double> gauge_phases;
};

inline GaugeReduction gauge_reduce(const HermitianChain& h) {
  const int n = h.n_sites;
  GaugeReduction g;
  g.real_offdiag.resize(h.off_mag.size());
  g.gauge_phases.resize(n);
  g.gauge_phases[0] = 0.0;
  for (int k = 1; k < n; ++k) {
    g.real_offdiag[k - 1] = -h.off_mag[k - 1];
    g.gauge_phases[k] = g.gauge_phases[k - 1] - h.off_phase[k - 1];
  }
  return g;
}

/// Lift an eigenvector of the gauge-reduced real matrix back to the
/// phased Hermitian picture: v_k = exp(i phi_k) w_k.
inline std::vector<cplx> apply_gauge(const GaugeReduction& g, const std::vector<double>& w) {
  if (w.size() != g.gauge_phases.size())
    throw std::invalid_argument("apply_gauge: vector length mismatch");
  std::vector<cplx> v(w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    v[k] = std::polar(1.0, g.gauge_phases[k]) * w[k];
  return v;
}

/// Log-polar representation of a vector component.
struct LogPolar {
  double log_mag = 0.0;
  double phase = 0.0;
};

enum class MapDirection { to_pt, to_hermitian };

/// Rescale an eigenvector between the two pictures: components pick up
/// m_k (to_pt) or 1/m_k (to_hermitian).  Returned in log-polar form since
/// m_k overflows double for long chains.
inline std::vector<LogPolar> map_eigenvector(const SimilarityScale& scale,
                                             const std::vector<cplx>& v, MapDirection dir) {
  if (v.size() != scale.log_m.size())
    throw std::invalid_argument("map_eigenvector: vector length mismatch");
  std::vector<LogPolar> r(v.size());
  const double s = (dir == MapDirection::to_pt) ? 1.0 : -1.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    r[k] = LogPolar{std::log(std::abs(v[k])) + s * scale.log_m[k], std::arg(v[k])};
  return r;
}

inline Metric metric_from(const SimilarityScale& scale) {
  Metric m;
  m.log_eta_diag.resize(scale.log_m.size());
  for (std::size_t k = 0; k < scale.log_m.size(); ++k)
    m.log_eta_diag[k] = -2.0 * scale.log_m[k];
  return m;
}

/// Dense verification of eta H eta^{-1} = H^dagger, scaled by the largest
/// element magnitude.  Quadratic in memory, so capped at 64 sites.
inline bool metric_check(const PTChain& chain, const SimilarityScale& scale, double tol) {
  const int n = chain.n_sites;
  if (n > 64) throw std::invalid_argument("metric_check: capped at 64 sites");
  if (static_cast<int>(scale.log_m.size()) != n)
    throw std::invalid_argument("metric_check: scale length mismatch");
  const auto el = pt_elements(chain);
  const auto metric = metric_from(scale);
  // Both sides are tridiagonal; compare element-wise.
  // (eta H eta^{-1})[i][j] = eta_i H[i][j] / eta_j, (H^dagger)[i][j] = conj(H[j][i]).
  double worst = 0.0, hmax = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    hmax = std::max({hmax, std::abs(el.super[k]), std::abs(el.sub[k])});
    const double r_up = std::exp(metric.log_eta_diag[k] - metric.log_eta_diag[k + 1]);
    const double r_dn = std::exp(metric.log_eta_diag[k + 1] - metric.log_eta_diag[k]);
    worst = std::max(worst, std::abs(el.super[k] * r_up - std::conj(el.sub[k])));
    worst = std::max(worst, std::abs(el.sub[k] * r_dn - std::conj(el.super[k])));
  }
  return worst <= tol * hmax;
}

}  // namespace ptchain
