#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include <ptchain/lattice.hpp>

using namespace ptchain;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

PTChain random_paired_chain(std::mt19937_64& rng, int n) {
  std::vector<cplx> t(n - 1);
  for (int k = 1; 2 * k <= n; ++k) {
    const int km = n - k;
    const double theta = -pi + 2.0 * pi * u01(rng);
    t[k - 1] = std::polar(0.5 + u01(rng), theta);
    if (km <= n - 1 && km != k) t[km - 1] = std::polar(0.5 + u01(rng), theta);
  }
  return build_chain(Explicit{t}, n);
}
}  // namespace

TEST_CASE("canonical_phase wraps into (-pi, pi]") {
  CHECK(canonical_phase(0.1) == Approx(0.1));
  CHECK(canonical_phase(3.0 * pi) == Approx(pi));
  CHECK(canonical_phase(-pi) == Approx(pi));
  CHECK(canonical_phase(pi) == Approx(pi));
  CHECK(canonical_phase(-0.5) == Approx(-0.5));
  CHECK(canonical_phase(2.0 * pi) == Approx(0.0).margin(1e-15));
}

TEST_CASE("build_chain power law") {
  const auto c = build_chain(PowerLaw{1.0, 1.0}, 5);
  REQUIRE(c.n_sites == 5);
  REQUIRE(c.t.size() == 4);
  for (int k = 1; k <= 4; ++k) {
    CHECK(c.t[k - 1].real() == Approx(k));
    CHECK(c.t[k - 1].imag() == 0.0);
  }

  const auto flat = build_chain(PowerLaw{2.5, 0.0}, 4);
  for (const auto& t : flat.t) CHECK(t.real() == Approx(2.5));

  const auto inv = build_chain(PowerLaw{1.0, -1.0}, 5);
  CHECK(inv.t[3].real() == Approx(0.25));
}

TEST_CASE("build_chain explicit amplitudes") {
  const std::vector<cplx> amps = {{1.0, 0.0}, {0.0, 2.0}, {-3.0, 0.5}};
  const auto c = build_chain(Explicit{amps}, 4);
  CHECK(c.t == amps);
}

TEST_CASE("build_chain rejects bad input") {
  CHECK_THROWS_AS(build_chain(PowerLaw{1.0, 1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(PowerLaw{0.0, 1.0}, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(PowerLaw{-2.0, 1.0}, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(PowerLaw{1.0, std::nan("")}, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(Explicit{{{1.0, 0.0}}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(Explicit{{{1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}}, 4),
                  std::invalid_argument);
}

TEST_CASE("pt_elements pairs mirrored bonds") {
  const auto c = build_chain(Explicit{{{1, 0}, {2, 0}, {3, 0}, {-4, 0}}}, 5);
  const auto el = pt_elements(c);
  const std::vector<cplx> want_super = {{-1, 0}, {-2, 0}, {-3, 0}, {4, 0}};
  const std::vector<cplx> want_sub = {{4, 0}, {-3, 0}, {-2, 0}, {-1, 0}};
  CHECK(el.super == want_super);
  CHECK(el.sub == want_sub);
}

TEST_CASE("pt_elements conjugates complex mirrors") {
  const auto c = build_chain(Explicit{{{0, 1}, {2, 0}, {0, 1}}}, 4);
  const auto el = pt_elements(c);
  CHECK(el.sub[0] == cplx{0, 1});   // -conj(t_3)
  CHECK(el.sub[1] == cplx{-2, 0});  // -conj(t_2)
  CHECK(el.sub[2] == cplx{0, 1});
}

TEST_CASE("check_pt_symmetry holds by construction") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 5, 8, 13}) {
    std::vector<cplx> t(n - 1);
    for (auto& x : t) x = std::polar(0.5 + u01(rng), -pi + 2 * pi * u01(rng));
    const auto c = build_chain(Explicit{t}, n);
    CHECK(check_pt_symmetry(c));
  }
}

TEST_CASE("check_pt_symmetry detects perturbed elements") {
  const auto c = build_chain(PowerLaw{1.0, 1.0}, 5);
  auto el = pt_elements(c);
  const std::vector<cplx> diag(5, cplx{0, 0});
  CHECK(check_pt_symmetry(el.super, el.sub, diag));
  el.super[0] += 0.01;
  CHECK_FALSE(check_pt_symmetry(el.super, el.sub, diag));
  CHECK(check_pt_symmetry(el.super, el.sub, diag, 0.02));
}

TEST_CASE("check_pt_symmetry sees non-PT diagonal") {
  const std::vector<cplx> super = {{1, 0}};
  const std::vector<cplx> sub = {{1, 0}};
  CHECK(check_pt_symmetry(super, sub, {{0.5, 0}, {0.5, 0}}));
  CHECK_FALSE(check_pt_symmetry(super, sub, {{0.5, 0}, {0.6, 0}}));
  // Mirrored imaginary parts (gain/loss balance) are PT symmetric.
  CHECK(check_pt_symmetry(super, sub, {{0.0, 0.3}, {0.0, -0.3}}));
  CHECK_FALSE(check_pt_symmetry(super, sub, {{0.0, 0.3}, {0.0, 0.3}}));
}

TEST_CASE("reality_criterion on real positive hopping") {
  const auto rep = reality_criterion(build_chain(PowerLaw{1.0, 1.0}, 9));
  CHECK(rep.satisfied);
  CHECK_FALSE(rep.first_violation.has_value());
  for (double m : rep.phase_mismatch) CHECK(m == 0.0);
}

TEST_CASE("reality_criterion flags sign flip") {
  const auto c = build_chain(Explicit{{{1, 0}, {2, 0}, {3, 0}, {-4, 0}}}, 5);
  const auto rep = reality_criterion(c);
  CHECK_FALSE(rep.satisfied);
  REQUIRE(rep.first_violation.has_value());
  CHECK(*rep.first_violation == 1);
  CHECK(rep.phase_mismatch[0] == Approx(pi));
  CHECK(rep.phase_mismatch[1] == 0.0);
  CHECK(rep.phase_mismatch[2] == 0.0);
  CHECK(rep.phase_mismatch[3] == Approx(pi));
}

TEST_CASE("reality_criterion accepts mirrored phases, any magnitudes") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 6, 11, 20}) {
    const auto c = random_paired_chain(rng, n);
    const auto rep = reality_criterion(c);
    INFO("n = " << n);
    CHECK(rep.satisfied);
  }
}

TEST_CASE("reality_criterion tolerance window") {
  auto c = build_chain(Explicit{{{1, 0}, {3, 0}, {1, 0}}}, 4);
  c.t[0] *= std::polar(1.0, 1e-6);
  const auto strict = reality_criterion(c);
  CHECK_FALSE(strict.satisfied);
  REQUIRE(strict.first_violation.has_value());
  CHECK(*strict.first_violation == 1);
  CHECK(strict.phase_mismatch[0] == Approx(1e-6));
  const auto loose = reality_criterion(c, 1e-5);
  CHECK(loose.satisfied);
}

TEST_CASE("reality_criterion on two sites always holds") {
  const auto c = build_chain(Explicit{{{0.0, -2.0}}}, 2);
  CHECK(reality_criterion(c).satisfied);
}

TEST_CASE("apply_pt_hamiltonian on known eigenvectors") {
  const auto c = build_chain(PowerLaw{1.0, 1.0}, 5);
  const std::vector<cplx> ground = {{1, 0}, {4, 0}, {6, 0}, {4, 0}, {1, 0}};
  const auto hg = apply_pt_hamiltonian(c, ground);
  for (int k = 0; k < 5; ++k) {
    CHECK(hg[k].real() == Approx(-4.0 * ground[k].real()));
    CHECK(hg[k].imag() == 0.0);
  }
  const std::vector<cplx> excited = {{4, 0}, {8, 0}, {0, 0}, {-8, 0}, {-4, 0}};
  const auto he = apply_pt_hamiltonian(c, excited);
  for (int k = 0; k < 5; ++k) CHECK(he[k].real() == Approx(-2.0 * excited[k].real()));
}

TEST_CASE("apply_pt_hamiltonian length check") {
  const auto c = build_chain(PowerLaw{1.0, 0.0}, 4);
  CHECK_THROWS_AS(apply_pt_hamiltonian(c, std::vector<cplx>(3)), std::invalid_argument);
}

TEST_CASE("apply_pt_hamiltonian matches element-wise definition") {
  std::mt19937_64 rng(23);
  const auto c = random_paired_chain(rng, 7);
  const auto el = pt_elements(c);
  std::vector<cplx> f(7);
  for (auto& x : f) x = cplx{u01(rng) - 0.5, u01(rng) - 0.5};
  const auto hf = apply_pt_hamiltonian(c, f);
  for (int k = 0; k < 7; ++k) {
    cplx want{0, 0};
    if (k > 0) want += el.sub[k - 1] * f[k - 1];
    if (k < 6) want += el.super[k] * f[k + 1];
    CHECK(std::abs(hf[k] - want) < 1e-15);
  }
}

TEST_CASE("stagger alternates signs starting at site 1") {
  const std::vector<double> f = {1, 4, 6, 4, 1};
  const std::vector<double> want = {-1, 4, -6, 4, -1};
  CHECK(stagger(f) == want);
  CHECK(stagger(stagger(f)) == f);
}

TEST_CASE("parity_reflect reverses") {
  const std::vector<cplx> f = {{1, 1}, {2, 0}, {3, -1}};
  const auto r = parity_reflect(f);
  CHECK(r[0] == cplx{3, -1});
  CHECK(r[2] == cplx{1, 1});
  CHECK(parity_reflect(r) == f);
}
