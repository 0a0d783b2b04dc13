#pragma once

// Self-check suites that cross the numerical pipeline against closed
// forms and structural identities.  Shared by the `verify` subcommand
// and the acceptance test binary.  All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "eigensolver.hpp"
#include "lattice.hpp"
#include "oracles.hpp"
#include "transform.hpp"

namespace ptchain {

struct VerifyCase {
  std::string name;
  std::string expected;
  std::string got;
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr std::uint64_t default_verify_seed = 12345;

namespace verify_detail {

inline std::string num(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

/// Uniform double in [0, 1) from the top 53 bits, so sequences do not
/// depend on the standard library's distribution implementation.
inline double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double inf_norm(const std::vector<double>& offdiag) {
  double worst = 0.0;
  const std::size_t nb = offdiag.size();
  for (std::size_t k = 0; k <= nb; ++k) {
    double row = 0.0;
    if (k > 0) row += std::abs(offdiag[k - 1]);
    if (k < nb) row += std::abs(offdiag[k]);
    worst = std::max(worst, row);
  }
  return worst;
}

inline double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// log2 |det(T - lambda)| relative to the largest scaled value seen along
/// the recurrence; strongly negative at a root.
inline double charpoly_rel_log2(std::span<const cplx> super, std::span<const cplx> sub,
                                std::span<const cplx> diag, cplx lambda) {
  const auto v = charpoly_eval(super, sub, diag, lambda);
  return v.log2_abs() - v.peak_log2;
}

struct Worst {
  double value = 0.0;
  void feed(double x) { value = std::max(value, x); }
};

}  // namespace verify_detail

// ---------------------------------------------------------------- alpha0

inline std::vector<VerifyCase> verify_alpha0() {
  using namespace verify_detail;
  std::vector<VerifyCase> out;
  const int n = 500;
  const double t0 = 1.0;

  {
    const auto chain = build_chain(PowerLaw{t0, 0.0}, n);
    const auto spec = chain_spectrum(chain, DecomposeMode::values_only);
    const auto oracle = uniform_spectrum(n, t0);
    Worst w;
    for (int j = 0; j < n; ++j) w.feed(std::abs(spec.values[j] - oracle[j]));
    const double tol = 1e-10 * 4.0 * t0;
    out.push_back({"alpha0/spectrum-closed-form-n500", "max deviation 0",
                   "max deviation " + num(w.value, "%.3e"), tol, w.value <= tol});

    const auto h = dos(spec.values, 101);
    double cmax = 0.0;
    for (double c : h.counts) cmax = std::max(cmax, c);
    const bool edges_max = h.counts.front() == cmax && h.counts.back() == cmax;
    out.push_back({"alpha0/dos-edge-bins-maximal", "outermost bins hold the highest counts",
                   "edge counts " + num(h.counts.front(), "%.0f") + "/" +
                       num(h.counts.back(), "%.0f") + ", max " + num(cmax, "%.0f"),
                   0.0, edges_max});
  }

  {
    // Closed-form band DOS integrates to one (midpoint rule on the
    // arcsine substitution, which keeps the integrand bounded).
    const int steps = 200001;
    const double a = -std::numbers::pi / 2.0, b = std::numbers::pi / 2.0;
    const double hstep = (b - a) / steps;
    double integral = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double u = a + (i + 0.5) * hstep;
      integral += uniform_dos(2.0 * t0 * std::sin(u), t0) * 2.0 * t0 * std::cos(u) * hstep;
    }
    const double err = std::abs(integral - 1.0);
    out.push_back({"alpha0/dos-closed-form-integral", "1",
                   num(integral, "%.12g"), 1e-6, err <= 1e-6});
  }

  {
    // Brute-force IPR from the sine eigenvectors, no solver involved.
    auto brute = [](int nn) {
      std::vector<double> iprs(nn);
      for (int j = 1; j <= nn; ++j) {
        double s2 = 0.0, s4 = 0.0;
        for (int k = 1; k <= nn; ++k) {
          const double f = std::sin(j * k * std::numbers::pi / (nn + 1.0));
          s2 += f * f;
          s4 += f * f * f * f;
        }
        iprs[j - 1] = s4 / (s2 * s2);
      }
      return iprs;
    };
    Worst w;
    const auto i10 = brute(10);
    for (double p : i10) w.feed(std::abs(p - 3.0 / 22.0));
    const auto i11 = brute(11);
    for (int j = 1; j <= 11; ++j)
      w.feed(std::abs(i11[j - 1] - (j == 6 ? 2.0 / 12.0 : 3.0 / 24.0)));
    out.push_back({"alpha0/ipr-brute-force-sine", "3/(2(N+1)), midband 2/(N+1) for odd N",
                   "max deviation " + num(w.value, "%.3e"), 1e-12, w.value <= 1e-12});

    Worst wp;
    for (int nn : {10, 100, 500}) {
      const auto chain = build_chain(PowerLaw{t0, 0.0}, nn);
      const auto rep = ipr_report(chain_spectrum(chain, DecomposeMode::full));
      for (double p : rep.per_state) wp.feed(std::abs(p - 3.0 / (2.0 * (nn + 1.0))));
    }
    {
      const auto chain = build_chain(PowerLaw{t0, 0.0}, 11);
      const auto rep = ipr_report(chain_spectrum(chain, DecomposeMode::full));
      for (int j = 0; j < 11; ++j)
        wp.feed(std::abs(rep.per_state[j] - (j == 5 ? 2.0 / 12.0 : 3.0 / 24.0)));
    }
    out.push_back({"alpha0/ipr-pipeline-exact", "pipeline matches 3/(2(N+1)) at N=10,100,500",
                   "max deviation " + num(wp.value, "%.3e"), 1e-10, wp.value <= 1e-10});

    // The often-quoted 3/N value disagrees with the exact lattice sum;
    // recorded here without failing anything.
    out.push_back({"alpha0/ipr-3-over-N-note",
                   "3/(2(N+1)) (exact); 3/N is the loose large-N quote",
                   "at N=10: exact " + num(3.0 / 22.0, "%.6g") + " vs 3/N " + num(0.3, "%.6g"),
                   0.0, true});
  }
  return out;
}

// ---------------------------------------------------------------- alpha1

inline std::vector<VerifyCase> verify_alpha1() {
  using namespace verify_detail;
  std::vector<VerifyCase> out;
  const int n = 500;
  const double t0 = 1.0;
  const auto chain = build_chain(PowerLaw{t0, 1.0}, n);

  {
    const auto h = hermitize(build_chain(PowerLaw{1.0, 1.0}, 5));
    const double r6 = std::sqrt(6.0);
    Worst w;
    const double want[4] = {2.0, r6, r6, 2.0};
    for (int k = 0; k < 4; ++k) {
      w.feed(std::abs(h.off_mag[k] - want[k]));
      w.feed(std::abs(h.off_phase[k]));
    }
    out.push_back({"alpha1/hermitize-five-site", "bond magnitudes (2, sqrt6, sqrt6, 2)",
                   "max deviation " + num(w.value, "%.3e"), 1e-14, w.value <= 1e-14});
  }

  const auto t_start = std::chrono::steady_clock::now();
  const auto spec = chain_spectrum(chain, DecomposeMode::full);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  const auto g = gauge_reduce(hermitize(chain));
  const double hnorm = inf_norm(g.real_offdiag);

  {
    const auto oracle = linear_spectrum(n, t0);
    Worst w;
    for (int j = 0; j < n; ++j) w.feed(std::abs(spec.values[j] - oracle[j]));
    const double tol = 1e-8 * hnorm;
    out.push_back({"alpha1/equally-spaced-spectrum-n500", "levels -(N-1)+2j, max deviation 0",
                   "max deviation " + num(w.value, "%.3e"), tol, w.value <= tol});
    out.push_back({"alpha1/decompose-runtime-n500", "< 30 s with eigenvectors",
                   num(wall, "%.2f") + " s", 30.0, wall < 30.0});
  }

  {
    const auto oracle = hermitian_ground_state_alpha1(n);
    double overlap = 0.0;
    for (int k = 0; k < n; ++k) overlap += spec.vectors[0][k] * oracle[k];
    overlap = std::abs(overlap);
    out.push_back({"alpha1/ground-state-overlap", ">= 1 - 1e-10",
                   num(overlap, "%.15g"), 1e-10, overlap >= 1.0 - 1e-10});

    const double e1_err = std::abs(spec.values[1] - (-(n - 3.0) * t0));
    const double tol = 1e-8 * hnorm;
    out.push_back({"alpha1/first-excited-energy", "-(N-3) = " + num(-(n - 3.0), "%.0f"),
                   num(spec.values[1], "%.12g"), tol, e1_err <= tol});
  }

  {
    // Binomial ground state satisfies the chain recurrence directly.
    const auto gs = linear_ground_state(n);
    double lmax = gs.log_coeffs[0];
    for (double l : gs.log_coeffs) lmax = std::max(lmax, l);
    std::vector<cplx> f(n);
    for (int k = 0; k < n; ++k) f[k] = std::exp(gs.log_coeffs[k] - lmax);
    const auto hf = apply_pt_hamiltonian(chain, f);
    const double energy = gs.energy_per_t0 * t0;
    std::vector<cplx> r(n);
    for (int k = 0; k < n; ++k) r[k] = hf[k] - energy * f[k];
    const double rel = norm2(r) / (std::abs(energy) * norm2(f));
    out.push_back({"alpha1/ground-state-recurrence", "relative residual 0",
                   num(rel, "%.3e"), 1e-10, rel <= 1e-10});
  }

  {
    // Gaussian envelope of the binomial ground state near the center: the
    // exact coefficient ratio f_k / f_{N/2} against the Gaussian ratio
    // exp(-2 (k - c)^2 / (N - 1)) evaluated at the same two sites.  The fit
    // center c = (N+1)/2 sits half a site off the normalization site N/2;
    // centering the model on N/2 instead costs ~9% at the window edge.
    const auto gs = linear_ground_state(n);
    const int k0 = n / 2;
    const double c = (n + 1.0) / 2.0;
    const double width = 2.0 / (n - 1.0);
    Worst w;
    for (int k = 1; k <= n; ++k) {
      if (std::abs(k - n / 2.0) > std::sqrt(static_cast<double>(n))) continue;
      const double ratio = std::exp(gs.log_coeffs[k - 1] - gs.log_coeffs[k0 - 1]);
      const double model =
          std::exp(-width * ((k - c) * (k - c) - (k0 - c) * (k0 - c)));
      w.feed(std::abs(ratio - model) / model);
    }
    out.push_back({"alpha1/ground-state-gaussian-envelope",
                   "coefficient ratio within 2% of the Gaussian ratio for |k - N/2| <= sqrt(N)",
                   "max relative deviation " + num(w.value, "%.3e"), 0.02, w.value <= 0.02});
  }

  {
    const auto h = dos(spec.values, 101);
    const auto ideal = dos(linear_spectrum(n, t0), 101);
    Worst w;
    for (int j = 0; j < 101; ++j) w.feed(std::abs(h.counts[j] - ideal.counts[j]));
    const double tol = 0.05 * n / 101.0;
    out.push_back({"alpha1/dos-flat-comb", "counts match the ideal equally-spaced comb",
                   "max count deviation " + num(w.value, "%.3g"), tol, w.value <= tol});
  }
  return out;
}

// ------------------------------------------------------------- five-site

inline std::vector<VerifyCase> verify_five_site(std::uint64_t seed) {
  using namespace verify_detail;
  std::vector<VerifyCase> out;
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    double x;
    do
      x = -10.0 + 20.0 * u01(rng);
    while (std::abs(x) < 1e-3);
    return x;
  };

  {
    Worst w;
    for (int trial = 0; trial < 200; ++trial) {
      const double a = draw(), b = draw();
      const auto chain = build_chain(Explicit{{a, b, b, a}}, 5);
      const auto spec = chain_spectrum(chain, DecomposeMode::values_only);
      const auto oracle = five_site_eigenvalues(a, b);
      const double scale = oracle.back();
      for (int j = 0; j < 5; ++j) w.feed(std::abs(spec.values[j] - oracle[j]) / scale);
    }
    out.push_back({"five-site/closed-form-200-random", "{0, +-|a|, +-sqrt(a^2+2b^2)}",
                   "max scaled deviation " + num(w.value, "%.3e"), 1e-12, w.value <= 1e-12});
  }

  {
    Worst w;
    for (int trial = 0; trial < 20; ++trial) {
      const double a = draw(), b = draw();
      const auto el = pt_elements(build_chain(Explicit{{a, b, b, a}}, 5));
      const std::vector<cplx> diag(5, cplx{0.0, 0.0});
      const auto roots = small_roots(el.super, el.sub, diag);
      const auto oracle = five_site_eigenvalues(a, b);
      const double scale = oracle.back();
      for (int j = 0; j < 5; ++j) {
        w.feed(std::abs(roots[j].real() - oracle[j]) / scale);
        w.feed(std::abs(roots[j].imag()) / scale);
      }
    }
    out.push_back({"five-site/polynomial-roots-match", "root finder agrees with closed form",
                   "max scaled deviation " + num(w.value, "%.3e"), 1e-8, w.value <= 1e-8});
  }

  {
    const std::vector<cplx> zero4(4, cplx{0.0, 0.0});
    const std::vector<cplx> zero5(5, cplx{0.0, 0.0});
    const auto roots = small_roots(zero4, zero4, zero5);
    Worst w;
    for (const cplx& r : roots) w.feed(std::abs(r));
    out.push_back({"five-site/all-zero-couplings", "quintuple root at 0",
                   "max |root| " + num(w.value, "%.3e"), 1e-10, w.value <= 1e-10});
  }
  return out;
}

// ------------------------------------------------------------ pt-breaking

inline std::vector<VerifyCase> verify_pt_breaking() {
  using namespace verify_detail;
  std::vector<VerifyCase> out;
  const auto chain = build_chain(Explicit{{1.0, 2.0, 3.0, -4.0}}, 5);

  {
    const auto rep = reality_criterion(chain);
    const bool ok = !rep.satisfied && rep.first_violation && *rep.first_violation == 1;
    out.push_back({"pt-breaking/criterion-flags-bond-1", "violation first reported at bond 1",
                   rep.satisfied ? "criterion reported satisfied"
                                 : "violation at bond " + std::to_string(rep.first_violation.value_or(-1)),
                   0.0, ok});
  }

  {
    bool threw = false;
    try {
      hermitize(chain);
    } catch (const criterion_error&) {
      threw = true;
    }
    out.push_back({"pt-breaking/hermitize-refuses", "criterion_error",
                   threw ? "criterion_error" : "no exception", 0.0, threw});
  }

  {
    const auto el = pt_elements(chain);
    const std::vector<cplx> diag(5, cplx{0.0, 0.0});
    const auto roots = small_roots(el.super, el.sub, diag);
    const double s = 2.0 * std::sqrt(2.0);
    const std::vector<cplx> oracle = {{-s, 0.0}, {0.0, -2.0}, {0.0, 0.0}, {0.0, 2.0}, {s, 0.0}};
    // returned order ties up to rounding noise among the re ~ 0 roots, so
    // match each oracle root to its nearest return
    Worst w;
    for (const cplx& o : oracle) {
      double best = 1e300;
      for (const cplx& r : roots) best = std::min(best, std::abs(r - o));
      w.feed(best);
    }
    out.push_back({"pt-breaking/complex-pair-roots", "{0, +-2sqrt2, +-2i}",
                   "max deviation " + num(w.value, "%.3e"), 1e-8, w.value <= 1e-8});

    Worst wc;
    for (const cplx& r : roots) {
      double best = 1e300;
      for (const cplx& q : roots) best = std::min(best, std::abs(std::conj(r) - q));
      wc.feed(best);
    }
    out.push_back({"pt-breaking/conjugate-pairing", "spectrum closed under conjugation",
                   "max unpaired distance " + num(wc.value, "%.3e"), 1e-8, wc.value <= 1e-8});
  }
  return out;
}

// ----------------------------------------------------------------- metric

inline std::vector<VerifyCase> verify_metric(std::uint64_t seed) {
  using namespace verify_detail;
  std::vector<VerifyCase> out;
  std::mt19937_64 rng(seed);

  const int trials = 500;
  Worst w_herm, w_agree, w_sym, w_res, w_stagger;
  // collapse ratios are <= 0 by construction, so Worst's zero start would
  // never move; seed the max at -inf instead
  double w_charpoly = -std::numeric_limits<double>::infinity();
  bool all_metric = true;
  int sturm_bad = 0, sturm_total = 0;

  for (int trial = 0; trial < trials; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    std::vector<cplx> t(n - 1);
    for (int k = 1; k <= (n - 1) / 2 + (n - 1) % 2; ++k) {
      const int km = n - k;
      const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * u01(rng);
      const double mag_a = 0.1 * std::pow(10.0, 2.0 * u01(rng));
      const double mag_b = 0.1 * std::pow(10.0, 2.0 * u01(rng));
      t[k - 1] = std::polar(mag_a, theta);
      t[km - 1] = std::polar(mag_b, theta);
    }
    const auto chain = build_chain(Explicit{t}, n);
    const auto scale = build_similarity(chain);
    const auto h = hermitize(chain);
    const auto el = pt_elements(chain);

    // Similarity-transformed off-diagonals vs the Hermitian counterpart.
    double amax = 0.0;
    std::vector<cplx> a_super(n - 1), a_sub(n - 1);
    for (int k = 0; k < n - 1; ++k) {
      a_super[k] = el.super[k] * std::exp(scale.log_m[k + 1] - scale.log_m[k]);
      a_sub[k] = el.sub[k] * std::exp(scale.log_m[k] - scale.log_m[k + 1]);
      amax = std::max({amax, std::abs(a_super[k]), std::abs(a_sub[k])});
    }
    for (int k = 0; k < n - 1; ++k) {
      w_herm.feed(std::abs(a_super[k] - std::conj(a_sub[k])) / amax);
      const cplx want = -std::polar(h.off_mag[k], h.off_phase[k]);
      w_agree.feed(std::abs(a_super[k] - want) / amax);
    }

    all_metric = all_metric && metric_check(chain, scale, 1e-12);

    const auto g = gauge_reduce(h);
    const SymTridiag m{std::vector<double>(n, 0.0), g.real_offdiag};
    const auto spec = decompose(m, DecomposeMode::full);
    const double rho = std::max(std::abs(spec.values.front()), std::abs(spec.values.back()));
    const double hnorm = inf_norm(g.real_offdiag);

    for (std::size_t j = 0; j < spec.values.size(); ++j)
      if (std::abs(spec.values[j] + spec.values[n - 1 - j]) > 0.0)
        w_sym.feed(std::abs(spec.values[j] + spec.values[n - 1 - j]) / rho);

    // Phased Hermitian elements; every computed eigenvalue must be a
    // root of its characteristic polynomial.
    std::vector<cplx> h_super(n - 1), h_sub(n - 1);
    const std::vector<cplx> h_diag(n, cplx{0.0, 0.0});
    for (int k = 0; k < n - 1; ++k) {
      h_super[k] = -std::polar(h.off_mag[k], h.off_phase[k]);
      h_sub[k] = std::conj(h_super[k]);
    }
    for (double lam : spec.values)
      w_charpoly = std::max(w_charpoly, charpoly_rel_log2(h_super, h_sub, h_diag, cplx{lam, 0.0}));

    // Lift eigenvectors back to the non-Hermitian picture and check the
    // eigen-equation, and its sign flip under staggering.
    for (std::size_t j = 0; j < spec.values.size(); ++j) {
      const auto v = apply_gauge(g, spec.vectors[j]);
      std::vector<cplx> u(n);
      for (int k = 0; k < n; ++k) u[k] = std::exp(scale.log_m[k]) * v[k];
      const double lam = spec.values[j];
      const double ptnorm = [&] {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
          double row = 0.0;
          if (k > 0) row += std::abs(el.sub[k - 1]);
          if (k < n - 1) row += std::abs(el.super[k]);
          worst = std::max(worst, row);
        }
        return worst;
      }();
      {
        const auto hu = apply_pt_hamiltonian(chain, u);
        std::vector<cplx> r(n);
        for (int k = 0; k < n; ++k) r[k] = hu[k] - lam * u[k];
        w_res.feed(norm2(r) / (ptnorm * norm2(u)));
      }
      {
        const auto su = stagger(u);
        const auto hsu = apply_pt_hamiltonian(chain, su);
        std::vector<cplx> r(n);
        for (int k = 0; k < n; ++k) r[k] = hsu[k] + lam * su[k];
        w_stagger.feed(norm2(r) / (ptnorm * norm2(su)));
      }
    }

    // Sturm counts against the sorted spectrum, away from eigenvalues.
    for (int probe = 0; probe < 2; ++probe) {
      double x = -1.2 * rho + 2.4 * rho * u01(rng);
      double dist = 1e300;
      for (double lam : spec.values) dist = std::min(dist, std::abs(x - lam));
      if (dist < 1e-8 * rho) x += 1e-6 * rho;
      int below = 0;
      for (double lam : spec.values)
        if (lam < x) ++below;
      ++sturm_total;
      if (sturm_count(m, x) != below) ++sturm_bad;
    }
  }

  out.push_back({"metric/similarity-yields-hermitian", "M^-1 H M Hermitian, 500 random chains",
                 "max scaled deviation " + num(w_herm.value, "%.3e"), 1e-12,
                 w_herm.value <= 1e-12});
  out.push_back({"metric/similarity-matches-counterpart", "M^-1 H M equals the bond-magnitude form",
                 "max scaled deviation " + num(w_agree.value, "%.3e"), 1e-12,
                 w_agree.value <= 1e-12});
  out.push_back({"metric/pseudo-hermiticity", "eta H eta^-1 = H^dagger within 1e-12 scaled",
                 all_metric ? "holds for all 500 chains" : "violated", 1e-12, all_metric});
  out.push_back({"metric/spectrum-symmetric", "E_j = -E_{N+1-j} within 1e-11 scaled",
                 "max scaled asymmetry " + num(w_sym.value, "%.3e"), 1e-11,
                 w_sym.value <= 1e-11});
  out.push_back({"metric/gauge-eigenvalues-are-roots",
                 "charpoly of the phased form vanishes at every eigenvalue",
                 "max log2 det ratio " + num(w_charpoly, "%.1f"), std::log2(1e-8),
                 w_charpoly <= std::log2(1e-8)});
  out.push_back({"metric/lifted-eigenvector-residual", "H u = E u after lifting, 1e-10 scaled",
                 "max scaled residual " + num(w_res.value, "%.3e"), 1e-10,
                 w_res.value <= 1e-10});
  out.push_back({"metric/stagger-flips-energy", "H (Su) = -E (Su), 1e-10 scaled",
                 "max scaled residual " + num(w_stagger.value, "%.3e"), 1e-10,
                 w_stagger.value <= 1e-10});
  out.push_back({"metric/sturm-count-consistent", "pivot counts match sorted spectrum",
                 std::to_string(sturm_total - sturm_bad) + "/" + std::to_string(sturm_total) +
                     " probes agree",
                 0.0, sturm_bad == 0});
  return out;
}

// ---------------------------------------------------------------- scaling

inline std::vector<VerifyCase> verify_scaling(unsigned max_threads) {
  using namespace verify_detail;
  std::vector<VerifyCase> out;
  const auto& sizes = default_scaling_sizes;

  const auto s0 = scaling_study(PowerLaw{1.0, 0.0}, sizes, max_threads);
  const auto s05 = scaling_study(PowerLaw{1.0, 0.5}, sizes, max_threads);
  const auto s1 = scaling_study(PowerLaw{1.0, 1.0}, sizes, max_threads);
  const auto s2 = scaling_study(PowerLaw{1.0, 2.0}, sizes, max_threads);

  {
    const bool ok = std::abs(s0.min_fit.exponent - 1.0) <= 0.02 &&
                    std::abs(s0.max_fit.exponent - 1.0) <= 0.02 &&
                    s0.min_fit.r_squared >= 0.999 && s0.max_fit.r_squared >= 0.999;
    out.push_back({"scaling/alpha0-exponent-one", "min and max IPR decay as N^-1 (+-0.02, r2>=0.999)",
                   "exponents " + num(s0.min_fit.exponent, "%.4f") + "/" +
                       num(s0.max_fit.exponent, "%.4f") + ", r2 " +
                       num(std::min(s0.min_fit.r_squared, s0.max_fit.r_squared), "%.6f"),
                   0.02, ok});
  }

  {
    auto in_range = [](const ScalingStudy& s) {
      return s.min_fit.exponent > 0.0 && s.min_fit.exponent < 1.0 &&
             s.max_fit.exponent > 0.0 && s.max_fit.exponent < 1.0 &&
             s.max_fit.exponent < s.min_fit.exponent;
    };
    const bool ok = in_range(s05) && in_range(s1) && in_range(s2);
    out.push_back({"scaling/positive-alpha-exponent-range",
                   "for alpha in {0.5, 1, 2}: 0 < eta < gamma < 1",
                   "gamma " + num(s05.min_fit.exponent, "%.3f") + "/" +
                       num(s1.min_fit.exponent, "%.3f") + "/" + num(s2.min_fit.exponent, "%.3f") +
                       ", eta " + num(s05.max_fit.exponent, "%.3f") + "/" +
                       num(s1.max_fit.exponent, "%.3f") + "/" + num(s2.max_fit.exponent, "%.3f"),
                   0.0, ok});

    const bool mono = s0.min_fit.exponent > s05.min_fit.exponent &&
                      s05.min_fit.exponent > s1.min_fit.exponent &&
                      s1.min_fit.exponent > s2.min_fit.exponent &&
                      s0.max_fit.exponent > s05.max_fit.exponent &&
                      s05.max_fit.exponent > s1.max_fit.exponent &&
                      s1.max_fit.exponent > s2.max_fit.exponent;
    out.push_back({"scaling/exponents-decrease-with-alpha",
                   "gamma and eta strictly decrease along alpha = 0, 0.5, 1, 2",
                   mono ? "monotone" : "not monotone", 0.0, mono});
  }

  {
    const auto chain500 = build_chain(PowerLaw{1.0, -1.0}, 500);
    const auto chain2000 = build_chain(PowerLaw{1.0, -1.0}, 2000);
    const auto spec500 = chain_spectrum(chain500, DecomposeMode::full);
    const auto spec2000 = chain_spectrum(chain2000, DecomposeMode::full);
    const auto rep500 = ipr_report(spec500);
    const auto rep2000 = ipr_report(spec2000);

    const double drift = std::abs(rep500.max_ipr - rep2000.max_ipr) / rep2000.max_ipr;
    out.push_back({"scaling/alpha-neg-max-ipr-saturates", "max IPR drift N=500 vs N=2000 < 5%",
                   "drift " + num(100.0 * drift, "%.3f") + "%", 0.05, drift < 0.05});

    auto top = rep2000.per_state;
    std::sort(top.begin(), top.end(), std::greater<>());
    const double spread = (top[0] - top[3]) / top[3];
    out.push_back({"scaling/alpha-neg-top-quadruplet", "four largest IPRs within 1%",
                   "spread " + num(100.0 * spread, "%.3e") + "%", 0.01, spread <= 0.01});

    const auto edges = edge_state_report(spec2000, 0.15);
    bool near_ends = !edges.empty();
    bool extreme = !edges.empty();
    for (const auto& s : edges) {
      near_ends = near_ends && (s.peak_site <= 10 || s.peak_site >= 2000 - 9);
      extreme = extreme && (s.state <= 4 || s.state >= 2000 - 3);
    }
    out.push_back({"scaling/alpha-neg-edge-localized",
                   "saturated states peak within 10 sites of an end and are the extreme "
                   "eigenvalue pairs",
                   std::to_string(edges.size()) + " states above IPR 0.15, ends " +
                       (near_ends ? "yes" : "no") + ", extreme " + (extreme ? "yes" : "no"),
                   0.0, near_ends && extreme});
  }

  {
    const auto spec = chain_spectrum(build_chain(PowerLaw{1.0, 2.0}, 500),
                                     DecomposeMode::values_only);
    const auto h = dos(spec.values, 101);
    const double center = h.counts[50];
    bool strict_max = true;
    for (int j = 0; j < 101; ++j)
      if (j != 50 && h.counts[j] >= center) strict_max = false;
    out.push_back({"scaling/alpha2-dos-central-peak", "central bin is the strict global maximum",
                   "center " + num(center, "%.0f") + ", next best " +
                       num([&] {
                         double best = 0.0;
                         for (int j = 0; j < 101; ++j)
                           if (j != 50) best = std::max(best, h.counts[j]);
                         return best;
                       }(), "%.0f"),
                   0.0, strict_max});
  }

  {
    const auto spec = chain_spectrum(build_chain(PowerLaw{1.0, -1.0}, 500),
                                     DecomposeMode::values_only);
    const auto h = dos(spec.values, 101);
    double peak = 0.0;
    for (double c : h.counts) peak = std::max(peak, c);
    std::vector<int> peak_bins;
    for (int j = 0; j < 101; ++j)
      if (h.counts[j] == peak) peak_bins.push_back(j);
    const bool two_sym = peak_bins.size() == 2 && peak_bins[0] + peak_bins[1] == 100 &&
                         peak_bins[0] != 0 && peak_bins[0] != 50;
    bool center_min = two_sym;
    if (two_sym) {
      double inter_min = peak;
      for (int j = peak_bins[0]; j <= peak_bins[1]; ++j)
        inter_min = std::min(inter_min, h.counts[j]);
      center_min = h.counts[50] == inter_min && h.counts[50] < peak;
    }
    out.push_back({"scaling/alpha-neg-dos-two-peaks",
                   "two symmetric interior maxima with a dip at zero energy",
                   "peak bins " +
                       (peak_bins.size() == 2 ? std::to_string(peak_bins[0]) + "," +
                                                    std::to_string(peak_bins[1])
                                              : std::to_string(peak_bins.size()) + " bins") +
                       ", center count " + num(h.counts[50], "%.0f") + " vs peak " +
                       num(peak, "%.0f"),
                   0.0, two_sym && center_min});
  }
  return out;
}

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"alpha0",      "alpha1", "five-site",
                                                 "pt-breaking", "metric", "scaling",
                                                 "all"};
  return names;
}

inline std::vector<VerifyCase> run_verify_suite(const std::string& suite, std::uint64_t seed,
                                                unsigned max_threads) {
  std::vector<VerifyCase> out;
  auto append = [&](std::vector<VerifyCase> v) {
    for (auto& c : v) out.push_back(std::move(c));
  };
  if (suite == "alpha0" || suite == "all") append(verify_alpha0());
  if (suite == "alpha1" || suite == "all") append(verify_alpha1());
  if (suite == "five-site" || suite == "all") append(verify_five_site(seed));
  if (suite == "pt-breaking" || suite == "all") append(verify_pt_breaking());
  if (suite == "metric" || suite == "all") append(verify_metric(seed));
  if (suite == "scaling" || suite == "all") append(verify_scaling(max_threads));
  if (out.empty()) throw std::invalid_argument("unknown verify suite: " + suite);
  return out;
}

}  // namespace ptchain
