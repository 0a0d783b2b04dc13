#pragma once

// Dense symmetric tridiagonal eigensolver, implicit-shift QL with
// Wilkinson shifts after the EISPACK tql2/imtql2 lineage.  Values-only
// mode runs in O(N^2); accumulating eigenvectors makes it O(N^3).
// Also: Sturm-sequence eigenvalue counting, characteristic-polynomial
// evaluation with exponent tracking for complex tridiagonals, and a
// Durand-Kerner root finder for small systems whose spectrum may be
// complex.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace ptchain {

/// Real symmetric tridiagonal matrix: diag has N entries, offdiag N-1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

enum class DecomposeMode { values_only, full };

/// Eigendecomposition result.  values ascending; vectors[j] is the
/// normalized eigenvector of values[j] (empty in values-only mode) with
/// its largest-magnitude component made positive.  The quality fields
/// are exact maxima over all computed pairs.
struct Spectrum {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  double max_residual = 0.0;
  double max_orthogonality_defect = 0.0;
};

class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what, std::vector<cplx> best = {})
      : std::runtime_error(what), best_(std::move(best)) {}
  /// Best iterate at the point the iteration cap was hit (root finder only).
  const std::vector<cplx>& best_iterate() const noexcept { return best_; }

 private:
  std::vector<cplx> best_;
};

namespace detail {

inline void check_tridiag(const SymTridiag& m) {
  if (m.diag.empty()) throw std::invalid_argument("decompose: empty matrix");
  if (m.offdiag.size() + 1 != m.diag.size())
    throw std::invalid_argument("decompose: offdiag must have N-1 entries");
  for (double x : m.diag)
    if (!std::isfinite(x)) throw std::invalid_argument("decompose: non-finite diagonal");
  for (double x : m.offdiag)
    if (!std::isfinite(x)) throw std::invalid_argument("decompose: non-finite off-diagonal");
}

}  // namespace detail

inline constexpr int max_ql_sweeps = 50;

inline Spectrum decompose(const SymTridiag& m, DecomposeMode mode) {
  detail::check_tridiag(m);
  const int n = static_cast<int>(m.diag.size());
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> d = m.diag;
  std::vector<double> e(m.offdiag);
  e.push_back(0.0);

  const bool full = (mode == DecomposeMode::full);
  std::vector<std::vector<double>> z;
  if (full) {
    z.assign(n, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) z[j][j] = 1.0;
  }

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int mm = l;
      for (; mm < n - 1; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= eps * dd) break;
      }
      if (mm == l) break;
      if (iter++ == max_ql_sweeps)
        throw convergence_error("decompose: QL sweep cap hit at eigenvalue " +
                                std::to_string(l));
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = mm - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[mm] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (full) {
          double* zi = z[i].data();
          double* zi1 = z[i + 1].data();
          for (int k = 0; k < n; ++k) {
            f = zi1[k];
            zi1[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[mm] = 0.0;
    }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });

  Spectrum spec;
  spec.values.resize(n);
  for (int j = 0; j < n; ++j) spec.values[j] = d[idx[j]];

  if (full) {
    spec.vectors.resize(n);
    for (int j = 0; j < n; ++j) spec.vectors[j] = std::move(z[idx[j]]);
    for (auto& v : spec.vectors) {
      int arg = 0;
      for (int k = 1; k < n; ++k)
        if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
      if (v[arg] < 0.0)
        for (double& x : v) x = -x;
    }
    for (int j = 0; j < n; ++j) {
      const auto& v = spec.vectors[j];
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        double r = m.diag[k] * v[k] - spec.values[j] * v[k];
        if (k > 0) r += m.offdiag[k - 1] * v[k - 1];
        if (k + 1 < n) r += m.offdiag[k] * v[k + 1];
        acc += r * r;
      }
      spec.max_residual = std::max(spec.max_residual, std::sqrt(acc));
    }
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        const double* va = spec.vectors[a].data();
        const double* vb = spec.vectors[b].data();
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += va[k] * vb[k];
        const double defect = std::abs(dot - (a == b ? 1.0 : 0.0));
        spec.max_orthogonality_defect = std::max(spec.max_orthogonality_defect, defect);
      }
  }
  return spec;
}

/// Number of eigenvalues strictly below x, by counting negative pivots of
/// the LDL^T factorization of T - xI.  Exact-zero pivots are nudged to
/// +tiny, which keeps the count at "strictly below".
inline int sturm_count(const SymTridiag& m, double x) {
  detail::check_tridiag(m);
  const int n = static_cast<int>(m.diag.size());
  constexpr double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = m.diag[0] - x;
  if (q < 0.0) ++count;
  for (int k = 1; k < n; ++k) {
    if (q == 0.0) q = tiny;
    q = (m.diag[k] - x) - m.offdiag[k - 1] * m.offdiag[k - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

/// det(T - lambda I) as mantissa * 2^exponent.  peak_log2 records the
/// largest scaled magnitude seen along the recurrence, so a root test can
/// be made relative: log2|det| - peak_log2 << 0 at a root.
struct CharPolyValue {
  cplx mantissa{0.0, 0.0};
  long exponent = 0;
  double peak_log2 = 0.0;

  double log2_abs() const {
    const double a = std::abs(mantissa);
    return a == 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::log2(a) + static_cast<double>(exponent);
  }
};

/// Three-term recurrence p_k = (d_k - lambda) p_{k-1} - super_{k-1} sub_{k-1} p_{k-2}
/// for a general (possibly non-Hermitian) tridiagonal, rescaled by powers
/// of two whenever the running values leave [2^-512, 2^512].
inline CharPolyValue charpoly_eval(std::span<const cplx> super, std::span<const cplx> sub,
                                   std::span<const cplx> diag, cplx lambda) {
  const int n = static_cast<int>(diag.size());
  if (n < 1) throw std::invalid_argument("charpoly_eval: empty matrix");
  if (static_cast<int>(super.size()) != n - 1 || static_cast<int>(sub.size()) != n - 1)
    throw std::invalid_argument("charpoly_eval: inconsistent element counts");
  const double hi = std::ldexp(1.0, 512), lo = std::ldexp(1.0, -512);

  CharPolyValue out;
  cplx pm1{1.0, 0.0};
  cplx p = diag[0] - lambda;
  auto track = [&](const cplx& v) {
    const double a = std::abs(v);
    if (a > 0.0)
      out.peak_log2 = std::max(out.peak_log2, std::log2(a) + static_cast<double>(out.exponent));
  };
  track(p);
  for (int k = 1; k < n; ++k) {
    const cplx pn = (diag[k] - lambda) * p - super[k - 1] * sub[k - 1] * pm1;
    pm1 = p;
    p = pn;
    const double mag = std::max(std::abs(p), std::abs(pm1));
    if (mag > hi || (mag > 0.0 && mag < lo)) {
      const int s = std::ilogb(mag);
      p = cplx{std::ldexp(p.real(), -s), std::ldexp(p.imag(), -s)};
      pm1 = cplx{std::ldexp(pm1.real(), -s), std::ldexp(pm1.imag(), -s)};
      out.exponent += s;
    }
    track(p);
  }
  out.mantissa = p;
  return out;
}

/// All eigenvalues of a small (N <= 32) general tridiagonal via
/// Durand-Kerner iteration on the characteristic polynomial.  Roots are
/// sorted by (real, imag).  Intended for chains where the spectrum may be
/// complex; accuracy degrades with N, hence the cap.
inline std::vector<cplx> small_roots(std::span<const cplx> super, std::span<const cplx> sub,
                                     std::span<const cplx> diag, int max_iters = 10000) {
  const int n = static_cast<int>(diag.size());
  if (n < 1 || n > 32) throw std::invalid_argument("small_roots: size must be in [1, 32]");
  if (static_cast<int>(super.size()) != n - 1 || static_cast<int>(sub.size()) != n - 1)
    throw std::invalid_argument("small_roots: inconsistent element counts");

  // Characteristic polynomial coefficients, ascending powers.
  std::vector<cplx> pm1{cplx{1.0, 0.0}};
  std::vector<cplx> p{diag[0], cplx{-1.0, 0.0}};
  for (int k = 1; k < n; ++k) {
    std::vector<cplx> pn(k + 2, cplx{0.0, 0.0});
    for (int j = 0; j <= k; ++j) {
      pn[j] += diag[k] * p[j];
      pn[j + 1] -= p[j];
    }
    const cplx w = super[k - 1] * sub[k - 1];
    for (int j = 0; j < k; ++j) pn[j] -= w * pm1[j];
    pm1 = std::move(p);
    p = std::move(pn);
  }

  std::vector<cplx> a(n);  // monic: lambda^n + sum a_j lambda^j
  for (int j = 0; j < n; ++j) a[j] = p[j] / p[n];
  double radius = 0.0;
  for (int j = 0; j < n; ++j) radius = std::max(radius, std::abs(a[j]));
  radius += 1.0;

  std::vector<cplx> x(n);
  for (int i = 0; i < n; ++i)
    x[i] = std::polar(radius, 2.0 * std::numbers::pi * i / n + 0.4);

  auto eval = [&](cplx v) {
    cplx acc{1.0, 0.0};
    for (int j = n - 1; j >= 0; --j) acc = acc * v + a[j];
    return acc;
  };

  const double tol = 1e-12 * radius;
  bool converged = false;
  for (int it = 0; it < max_iters && !converged; ++it) {
    double max_update = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx den{1.0, 0.0};
      for (int j = 0; j < n; ++j)
        if (j != i) den *= x[i] - x[j];
      if (den == cplx{0.0, 0.0}) {
        x[i] += std::polar(radius * 1e-12 * (i + 1), 0.7 * (i + 1));
        max_update = std::max(max_update, radius);
        continue;
      }
      const cplx delta = eval(x[i]) / den;
      x[i] -= delta;
      max_update = std::max(max_update, std::abs(delta));
    }
    converged = max_update < tol;
  }
  if (!converged)
    throw convergence_error("small_roots: iteration cap hit", x);

  std::sort(x.begin(), x.end(), [](const cplx& u, const cplx& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return x;
}

/// ||T v - value v||_2.
inline double residual(const SymTridiag& m, const std::vector<double>& v, double value) {
  detail::check_tridiag(m);
  const int n = static_cast<int>(m.diag.size());
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("residual: vector length mismatch");
  double norm = 0.0;
  for (double y : v) norm += y * y;
  if (norm == 0.0) throw std::invalid_argument("residual: zero vector");
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double r = (m.diag[k] - value) * v[k];
    if (k > 0) r += m.offdiag[k - 1] * v[k - 1];
    if (k + 1 < n) r += m.offdiag[k] * v[k + 1];
    acc += r * r;
  }
  return std::sqrt(acc);
}

}  // namespace ptchain
