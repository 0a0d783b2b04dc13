#pragma once

// Tight-binding chains with position-dependent, possibly non-Hermitian
// hopping.  Sites and bonds are indexed from 1: bond k couples sites
// k and k+1.  The chain Hamiltonian has zero diagonal, upper elements
// H[k][k+1] = -t_k and lower elements H[k+1][k] = -conj(t_{N-k}), which
// makes it PT-symmetric by construction (P = site reversal, T = complex
// conjugation).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ptchain {

using cplx = std::complex<double>;

inline constexpr double default_phase_tol = 1e-12;

/// Wrap an angle into (-pi, pi].
inline double canonical_phase(double theta) {
  double w = std::remainder(theta, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

/// t_k = t0 * k^alpha on bond k.
struct PowerLaw {
  double t0 = 1.0;
  double alpha = 0.0;
};

/// Amplitudes given bond by bond, t[k-1] = t_k.
struct Explicit {
  std::vector<cplx> amplitudes;
};

using HoppingProfile = std::variant<PowerLaw, Explicit>;

/// Open chain of n_sites sites with hopping amplitudes t[k-1] = t_k,
/// k = 1..n_sites-1, all nonzero.
struct PTChain {
  int n_sites = 0;
  std::vector<cplx> t;
};

struct RealityCriterionReport {
  bool satisfied = false;
  std::optional<int> first_violation;  // smallest offending bond index
  std::vector<double> phase_mismatch;  // |arg t_k - arg t_{N-k}| wrapped, k = 1..N-1
};

inline PTChain build_chain(const HoppingProfile& profile, int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("build_chain: need at least two sites");
  PTChain chain;
  chain.n_sites = n_sites;
  chain.t.resize(static_cast<std::size_t>(n_sites) - 1);
  if (const auto* pl = std::get_if<PowerLaw>(&profile)) {
    if (!(pl->t0 > 0.0)) throw std::invalid_argument("build_chain: t0 must be positive");
    if (!std::isfinite(pl->alpha)) throw std::invalid_argument("build_chain: alpha must be finite");
    for (int k = 1; k < n_sites; ++k)
      chain.t[k - 1] = pl->t0 * std::pow(static_cast<double>(k), pl->alpha);
  } else {
    const auto& amps = std::get<Explicit>(profile).amplitudes;
    if (static_cast<int>(amps.size()) != n_sites - 1)
      throw std::invalid_argument("build_chain: expected " + std::to_string(n_sites - 1) +
                                  " amplitudes, got " + std::to_string(amps.size()));
    for (const cplx& a : amps)
      if (a == cplx{0.0, 0.0}) throw std::invalid_argument("build_chain: zero hopping amplitude");
    chain.t.assign(amps.begin(), amps.end());
  }
  return chain;
}

/// Off-diagonal elements of the chain Hamiltonian.
/// super[k-1] = H[k][k+1] = -t_k, sub[k-1] = H[k+1][k] = -conj(t_{N-k}).
struct PTElements {
  std::vector<cplx> super;
  std::vector<cplx> sub;
};

inline PTElements pt_elements(const PTChain& chain) {
  const int n = chain.n_sites;
  PTElements el;
  el.super.resize(chain.t.size());
  el.sub.resize(chain.t.size());
  for (int k = 1; k < n; ++k) {
    el.super[k - 1] = -chain.t[k - 1];
    el.sub[k - 1] = -std::conj(chain.t[n - k - 1]);
  }
  return el;
}

/// Does P conj(H) P = H hold for the tridiagonal matrix with the given
/// elements?  Reflection maps super[k] <-> conj(sub[N-1-k]) and
/// diag[k] <-> conj(diag[N+1-k]).
inline bool check_pt_symmetry(const std::vector<cplx>& super, const std::vector<cplx>& sub,
                              const std::vector<cplx>& diag, double tol = 0.0) {
  const int n = static_cast<int>(diag.size());
  if (static_cast<int>(super.size()) != n - 1 || static_cast<int>(sub.size()) != n - 1)
    throw std::invalid_argument("check_pt_symmetry: inconsistent element counts");
  double worst = 0.0;
  for (int k = 1; k <= n; ++k) {
    double d = std::abs(diag[k - 1] - std::conj(diag[n - k]));
    worst = std::max(worst, d);
  }
  for (int k = 1; k < n; ++k) {
    double d = std::abs(super[k - 1] - std::conj(sub[n - k - 1]));
    worst = std::max(worst, std::abs(sub[k - 1] - std::conj(super[n - k - 1])));
    worst = std::max(worst, d);
  }
  return worst <= tol;
}

inline bool check_pt_symmetry(const PTChain& chain, double tol = 0.0) {
  auto el = pt_elements(chain);
  std::vector<cplx> diag(chain.n_sites, cplx{0.0, 0.0});
  return check_pt_symmetry(el.super, el.sub, diag, tol);
}

/// The spectrum is entirely real iff arg t_k = arg t_{N-k} for every bond,
/// i.e. the ratio t_{N-k}/t_k is real and positive.
inline RealityCriterionReport reality_criterion(const PTChain& chain,
                                                double phase_tol = default_phase_tol) {
  const int n = chain.n_sites;
  RealityCriterionReport rep;
  rep.phase_mismatch.resize(chain.t.size());
  rep.satisfied = true;
  for (int k = 1; k < n; ++k) {
    double mism = std::abs(
        canonical_phase(std::arg(chain.t[k - 1]) - std::arg(chain.t[n - k - 1])));
    rep.phase_mismatch[k - 1] = mism;
    if (mism > phase_tol && rep.satisfied) {
      rep.satisfied = false;
      rep.first_violation = k;
    }
  }
  return rep;
}

/// result_k = -t_k f_{k+1} - conj(t_{N+1-k}) f_{k-1}, out-of-range terms zero.
inline std::vector<cplx> apply_pt_hamiltonian(const PTChain& chain, const std::vector<cplx>& f) {
  const int n = chain.n_sites;
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("apply_pt_hamiltonian: vector length mismatch");
  std::vector<cplx> r(f.size());
  for (int k = 1; k <= n; ++k) {
    cplx acc{0.0, 0.0};
    if (k + 1 <= n) acc -= chain.t[k - 1] * f[k];
    if (k - 1 >= 1) acc -= std::conj(chain.t[n - k]) * f[k - 2];
    r[k - 1] = acc;
  }
  return r;
}

/// f_k -> (-1)^k f_k.  On a zero-diagonal chain this maps an eigenvector
/// with energy E to one with energy -E.
template <class T>
std::vector<T> stagger(const std::vector<T>& f) {
  std::vector<T> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = (i % 2 == 0) ? -f[i] : f[i];
  return r;
}

/// f_k -> f_{N+1-k}.
template <class T>
std::vector<T> parity_reflect(const std::vector<T>& f) {
  return std::vector<T>(f.rbegin(), f.rend());
}

}  // namespace ptchain
