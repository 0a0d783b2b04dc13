#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include <ptchain/eigensolver.hpp>
#include <ptchain/lattice.hpp>
#include <ptchain/oracles.hpp>

using namespace ptchain;
using Catch::Approx;

namespace {
double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }
}

TEST_CASE("log_binomial matches small binomials") {
  CHECK(std::exp(log_binomial(4, 0)) == Approx(1.0));
  CHECK(std::exp(log_binomial(4, 2)) == Approx(6.0));
  CHECK(std::exp(log_binomial(10, 3)) == Approx(120.0));
  CHECK(std::exp(log_binomial(30, 15)) == Approx(155117520.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_binomial(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(log_binomial(4, -1), std::invalid_argument);
}

TEST_CASE("uniform_spectrum four sites") {
  const auto e = uniform_spectrum(4, 1.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(e[0] == Approx(-phi));
  CHECK(e[1] == Approx(1.0 - phi));
  CHECK(e[2] == Approx(phi - 1.0));
  CHECK(e[3] == Approx(phi));
  for (int j = 1; j < 4; ++j) CHECK(e[j] > e[j - 1]);
}

TEST_CASE("uniform_spectrum scales with t0 and stays inside the band") {
  const auto e = uniform_spectrum(101, 2.5);
  for (double v : e) CHECK(std::abs(v) < 5.0);
  CHECK(e.front() == Approx(-2.0 * 2.5 * std::cos(std::numbers::pi / 102.0)));
}

TEST_CASE("uniform_dos band profile") {
  CHECK(uniform_dos(0.0, 1.0) == Approx(1.0 / (2.0 * std::numbers::pi)));
  CHECK(uniform_dos(2.5, 1.0) == 0.0);
  CHECK(uniform_dos(-2.5, 1.0) == 0.0);
  CHECK(uniform_dos(2.0, 1.0) == std::numeric_limits<double>::infinity());
  CHECK(uniform_dos(-2.0, 1.0) == std::numeric_limits<double>::infinity());
  CHECK(uniform_dos(1.3, 1.0) == Approx(uniform_dos(-1.3, 1.0)));
  CHECK(uniform_dos(1.9, 1.0) > uniform_dos(0.5, 1.0));
  CHECK_THROWS_AS(uniform_dos(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("linear_spectrum is equally spaced") {
  const auto e = linear_spectrum(500, 1.0);
  CHECK(e.front() == -499.0);
  CHECK(e.back() == 499.0);
  for (int j = 1; j < 500; ++j) CHECK(e[j] - e[j - 1] == Approx(2.0));
  const auto e2 = linear_spectrum(4, 0.5);
  CHECK(e2 == std::vector<double>{-1.5, -0.5, 0.5, 1.5});
}

TEST_CASE("linear_ground_state five sites is binomial") {
  const auto g = linear_ground_state(5);
  CHECK(g.energy_per_t0 == -4.0);
  const double want[5] = {1, 4, 6, 4, 1};
  for (int k = 0; k < 5; ++k)
    CHECK(std::exp(g.log_coeffs[k]) == Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("linear ground state satisfies the recurrence exactly") {
  // N = 31 keeps every product an exact integer below 2^53.
  const int n = 31;
  const double t0 = 2.0;
  const auto c = build_chain(PowerLaw{t0, 1.0}, n);
  const auto g = linear_ground_state(n);
  std::vector<cplx> f(n);
  for (int k = 0; k < n; ++k) f[k] = std::round(std::exp(g.log_coeffs[k]));
  const auto hf = apply_pt_hamiltonian(c, f);
  const double energy = g.energy_per_t0 * t0;
  for (int k = 0; k < n; ++k) {
    CHECK(hf[k].real() == energy * f[k].real());  // exact integer arithmetic
    CHECK(hf[k].imag() == 0.0);
  }
}

TEST_CASE("linear_first_excited five sites") {
  const auto s = linear_first_excited(5);
  CHECK(s.energy_per_t0 == -2.0);
  const double mag[5] = {4, 8, 0, 8, 4};
  const int sign[5] = {1, 1, 0, -1, -1};
  for (int k = 0; k < 5; ++k) {
    CHECK(s.coeffs[k].sign == sign[k]);
    if (sign[k] == 0)
      CHECK(s.coeffs[k].log_mag == -std::numeric_limits<double>::infinity());
    else
      CHECK(std::exp(s.coeffs[k].log_mag) == Approx(mag[k]).epsilon(1e-12));
  }
}

TEST_CASE("linear first excited satisfies the recurrence exactly") {
  const int n = 31;
  const auto c = build_chain(PowerLaw{1.0, 1.0}, n);
  const auto s = linear_first_excited(n);
  std::vector<cplx> f(n);
  for (int k = 0; k < n; ++k)
    f[k] = s.coeffs[k].sign == 0
               ? cplx{0.0, 0.0}
               : cplx{s.coeffs[k].sign * std::round(std::exp(s.coeffs[k].log_mag)), 0.0};
  const auto hf = apply_pt_hamiltonian(c, f);
  CHECK(s.energy_per_t0 == -(n - 3.0));
  for (int k = 0; k < n; ++k) {
    CHECK(hf[k].real() == s.energy_per_t0 * f[k].real());
    CHECK(hf[k].imag() == 0.0);
  }
}

TEST_CASE("five_site_eigenvalues instances") {
  const auto e = five_site_eigenvalues(-2.0, -std::sqrt(6.0));
  CHECK(e[0] == Approx(-4.0));
  CHECK(e[1] == Approx(-2.0));
  CHECK(e[2] == 0.0);
  CHECK(e[3] == Approx(2.0));
  CHECK(e[4] == Approx(4.0));

  const auto d = five_site_eigenvalues(3.0, 0.0);
  CHECK(d == std::vector<double>{-3.0, -3.0, 0.0, 3.0, 3.0});
}

TEST_CASE("five_site_eigenvalues are characteristic polynomial roots") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = -5.0 + 10.0 * u01(rng);
    const double b = -5.0 + 10.0 * u01(rng);
    const std::vector<cplx> e = {{-std::abs(a), 0}, {-std::abs(b), 0}, {-std::abs(b), 0},
                                 {-std::abs(a), 0}};
    const std::vector<cplx> diag(5, cplx{0, 0});
    for (double lam : five_site_eigenvalues(a, b)) {
      const auto v = charpoly_eval(e, e, diag, cplx{lam, 0.0});
      if (v.peak_log2 == 0.0) continue;  // degenerate all-zero couplings
      CHECK(v.log2_abs() - v.peak_log2 < std::log2(1e-10));
    }
  }
}

TEST_CASE("hermitian_ground_state_alpha1 five sites") {
  const auto v = hermitian_ground_state_alpha1(5);
  const double want[5] = {0.25, 0.5, std::sqrt(6.0) / 4.0, 0.5, 0.25};
  for (int k = 0; k < 5; ++k) CHECK(v[k] == Approx(want[k]).epsilon(1e-13));
}

TEST_CASE("hermitian_ground_state_alpha1 long chain is normalized and symmetric") {
  for (int n : {100, 500, 2000}) {
    const auto v = hermitian_ground_state_alpha1(n);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    CHECK(norm == Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < n; ++k) {
      CHECK(v[k] == Approx(v[n - 1 - k]).margin(1e-15));
      CHECK(v[k] >= 0.0);
    }
    // tails vanish, center dominates; the endpoint amplitude is
    // binomial-small, 2^{-(n-1)/2} up to normalization
    CHECK(v[n / 2] > 0.1 * std::pow(n, -0.25));
    CHECK(v[0] <= std::exp2(-(n - 1) / 2.0) * 1.0001);
  }
}

TEST_CASE("oracle argument validation") {
  CHECK_THROWS_AS(uniform_spectrum(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_spectrum(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_ground_state(1), std::invalid_argument);
  CHECK_THROWS_AS(linear_first_excited(1), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_ground_state_alpha1(1), std::invalid_argument);
}
