#pragma once

// Closed-form references used to cross-check the numerical pipeline:
// uniform-chain spectrum and density of states, the exactly solvable
// linear-hopping chain (equally spaced spectrum, binomial ground state),
// and the five-site two-parameter chain.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ptchain {

/// log C(n, k) via lgamma.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binomial: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Uniform open chain, t_k = t0: E_j = -2 t0 cos(j pi / (N+1)), ascending.
inline std::vector<double> uniform_spectrum(int n, double t0) {
  if (n < 1) throw std::invalid_argument("uniform_spectrum: need n >= 1");
  std::vector<double> e(n);
  for (int j = 1; j <= n; ++j)
    e[j - 1] = -2.0 * t0 * std::cos(j * std::numbers::pi / (n + 1.0));
  return e;
}

/// Per-site density of states of the infinite uniform chain,
/// rho(E) = 1 / (2 pi t0 sqrt(1 - x^2)) with x = E / (2 t0).
/// Zero outside the band, +infinity exactly at the band edges.
inline double uniform_dos(double energy, double t0) {
  if (!(t0 > 0.0)) throw std::invalid_argument("uniform_dos: t0 must be positive");
  const double x = energy / (2.0 * t0);
  const double ax = std::abs(x);
  if (ax > 1.0) return 0.0;
  if (ax == 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * std::numbers::pi * t0 * std::sqrt(1.0 - x * x));
}

/// Linear-hopping chain, t_k = t0 k: equally spaced spectrum
/// {-(N-1) t0 + 2 t0 j}, j = 0..N-1, ascending.
inline std::vector<double> linear_spectrum(int n, double t0) {
  if (n < 1) throw std::invalid_argument("linear_spectrum: need n >= 1");
  std::vector<double> e(n);
  for (int j = 0; j < n; ++j) e[j] = (-(n - 1.0) + 2.0 * j) * t0;
  return e;
}

/// Ground state of the linear-hopping chain: f_k = C(N-1, k-1), all
/// positive, kept as logs since the coefficients overflow for large N.
struct LogGroundState {
  std::vector<double> log_coeffs;
  double energy_per_t0 = 0.0;  // -(N-1)
};

inline LogGroundState linear_ground_state(int n) {
  if (n < 2) throw std::invalid_argument("linear_ground_state: need n >= 2");
  LogGroundState g;
  g.log_coeffs.resize(n);
  for (int k = 1; k <= n; ++k) g.log_coeffs[k - 1] = log_binomial(n - 1, k - 1);
  g.energy_per_t0 = -(n - 1.0);
  return g;
}

/// First excited state of the linear-hopping chain:
/// f_k = (N+1-2k) C(N-1, k-1) at energy -(N-3) t0.  Components change
/// sign, so each is stored as (log magnitude, sign), sign 0 for the
/// exact zero at the middle site of odd chains.
struct SignedLogState {
  struct Coeff {
    double log_mag = 0.0;
    int sign = 0;
  };
  std::vector<Coeff> coeffs;
  double energy_per_t0 = 0.0;  // -(N-3)
};

inline SignedLogState linear_first_excited(int n) {
  if (n < 2) throw std::invalid_argument("linear_first_excited: need n >= 2");
  SignedLogState s;
  s.coeffs.resize(n);
  for (int k = 1; k <= n; ++k) {
    const int w = n + 1 - 2 * k;
    if (w == 0) {
      s.coeffs[k - 1] = {-std::numeric_limits<double>::infinity(), 0};
    } else {
      s.coeffs[k - 1] = {std::log(std::abs(static_cast<double>(w))) + log_binomial(n - 1, k - 1),
                         w > 0 ? 1 : -1};
    }
  }
  s.energy_per_t0 = -(n - 3.0);
  return s;
}

/// Five-site chain with hopping (a, b, b, a): eigenvalues
/// {0, +-|a|, +-sqrt(a^2 + 2 b^2)}, ascending.
inline std::vector<double> five_site_eigenvalues(double a, double b) {
  const double s = std::sqrt(a * a + 2.0 * b * b);
  const double aa = std::abs(a);
  return {-s, -aa, 0.0, aa, s};
}

/// Normalized ground state of the Hermitian counterpart of the linear
/// chain: v_k = sqrt(C(N-1, k-1) / 2^(N-1)).  Tail components underflow
/// to zero for very long chains, which leaves the norm intact.
inline std::vector<double> hermitian_ground_state_alpha1(int n) {
  if (n < 2) throw std::invalid_argument("hermitian_ground_state_alpha1: need n >= 2");
  const double ln2 = std::numbers::ln2;
  std::vector<double> v(n);
  for (int k = 1; k <= n; ++k)
    v[k - 1] = std::exp(0.5 * (log_binomial(n - 1, k - 1) - (n - 1.0) * ln2));
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace ptchain
