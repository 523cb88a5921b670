#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "entlab/boson_chain.hpp"
#include "entlab/boson_pair.hpp"

using namespace entlab;
using bosonchain::Boundary;
using bosonchain::ChainSpec;
using matfun::SymMatrix;

namespace {

std::vector<std::size_t> range_sites(std::size_t lo, std::size_t count) {
  std::vector<std::size_t> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = lo + i;
  return s;
}

}  // namespace

TEST_CASE("couplings of small chains") {
  // n = 2 periodic: the wraparound doubles the off-diagonal
  const auto c2 = bosonchain::build_couplings({2, 1.0, 1.0, Boundary::Periodic});
  CHECK(c2.X(0, 0) == doctest::Approx(3.0));
  CHECK(c2.X(0, 1) == doctest::Approx(-2.0));
  CHECK(c2.P(0, 0) == doctest::Approx(1.0));
  CHECK(c2.P(0, 1) == doctest::Approx(0.0));

  // n = 3 massless periodic: translation zero mode
  const auto c3 = bosonchain::build_couplings({3, 0.0, 1.0, Boundary::Periodic});
  const auto ev = matfun::sym_eigenvalues(c3.X);
  CHECK(std::abs(ev.front()) <= 1e-12);

  // n = 3, m = 2: circulant eigenvalues m^2 + 2 - 2cos(2 pi q / 3)
  const auto cm = bosonchain::build_couplings({3, 2.0, 1.0, Boundary::Periodic});
  const auto em = matfun::sym_eigenvalues(cm.X);
  CHECK(em[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(em[1] == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(em[2] == doctest::Approx(7.0).epsilon(1e-12));

  // Dirichlet: no wrap entry
  const auto cd = bosonchain::build_couplings({4, 0.0, 1.0, Boundary::Dirichlet});
  CHECK(cd.X(0, 3) == doctest::Approx(0.0));
  CHECK(matfun::sym_eigenvalues(cd.X).front() > 0.1);
}

TEST_CASE("ground covariance closed forms") {
  // single oscillator X = [w^2], P = [1]
  const double w = 1.7;
  SymMatrix x1(1), p1(1);
  x1.set(0, 0, w * w);
  p1.set(0, 0, 1.0);
  const auto g1 = bosonchain::ground_covariance(x1, p1);
  CHECK(g1.gamma_x(0, 0) == doctest::Approx(1.0 / (2.0 * w)).epsilon(1e-12));
  CHECK(g1.gamma_p(0, 0) == doctest::Approx(w / 2.0).epsilon(1e-12));

  // decoupled X = diag(1, 4)
  const double d[] = {1.0, 4.0};
  const auto g2 =
      bosonchain::ground_covariance(SymMatrix::diagonal(d), SymMatrix::identity(2));
  CHECK(g2.gamma_x(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g2.gamma_x(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(g2.gamma_x(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("n = 2 covariance matches the mode-decomposition oracle") {
  // X = [[3,-2],[-2,3]]: mode frequencies sqrt(3 -+ 2) on (1,1)/(1,-1)
  const auto cp = bosonchain::build_couplings({2, 1.0, 1.0, Boundary::Periodic});
  const auto cov = bosonchain::ground_covariance(cp.X, cp.P);
  const double wplus = 1.0, wminus = std::sqrt(5.0);
  const double xx_diag = 0.25 * (1.0 / wplus + 1.0 / wminus);
  const double xx_off = 0.25 * (1.0 / wplus - 1.0 / wminus);
  CHECK(cov.gamma_x(0, 0) == doctest::Approx(xx_diag).epsilon(1e-11));
  CHECK(cov.gamma_x(0, 1) == doctest::Approx(xx_off).epsilon(1e-11));

  // purity: gamma_x gamma_p = I/4
  const auto prod = matfun::mat_mul(cov.gamma_x.raw(), cov.gamma_p.raw(), 2);
  CHECK(prod[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(prod[1]) <= 1e-9);
}

TEST_CASE("massless periodic chains surface the zero mode") {
  const auto cp = bosonchain::build_couplings({8, 0.0, 1.0, Boundary::Periodic});
  CHECK_THROWS_AS(bosonchain::ground_covariance(cp.X, cp.P), ZeroModePresent);
  CHECK_THROWS_AS(bosonchain::chain_entropy({8, 0.0, 1.0, Boundary::Periodic},
                                            range_sites(0, 3)),
                  ZeroModePresent);
  // Dirichlet massless is fine
  CHECK_NOTHROW(bosonchain::chain_entropy({8, 0.0, 1.0, Boundary::Dirichlet},
                                          range_sites(0, 3)));
}

TEST_CASE("reduce: identity, single site, translation symmetry") {
  const ChainSpec spec{4, 0.7, 1.0, Boundary::Periodic};
  const auto cp = bosonchain::build_couplings(spec);
  const auto cov = bosonchain::ground_covariance(cp.X, cp.P);

  const auto all = bosonchain::reduce(cov, {0, 1, 2, 3});
  CHECK(all.gamma_x(2, 3) == cov.gamma_x(2, 3));

  const auto one = bosonchain::reduce(cov, {1});
  CHECK(one.gamma_x.dim() == 1);
  CHECK(one.gamma_x(0, 0) == cov.gamma_x(1, 1));

  // {0,1} and {2,3} are translates of each other on the ring
  const auto a = bosonchain::reduce(cov, {0, 1});
  const auto b = bosonchain::reduce(cov, {2, 3});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(a.gamma_x(i, j) == doctest::Approx(b.gamma_x(i, j)).epsilon(1e-12));
      CHECK(a.gamma_p(i, j) == doctest::Approx(b.gamma_p(i, j)).epsilon(1e-12));
    }

  CHECK_THROWS_AS(bosonchain::reduce(cov, {}), std::invalid_argument);
  CHECK_THROWS_AS(bosonchain::reduce(cov, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(bosonchain::reduce(cov, {5}), std::invalid_argument);
}

TEST_CASE("entanglement mode frequencies from symplectic eigenvalues") {
  const ChainSpec spec{10, 0.4, 1.0, Boundary::Periodic};
  const auto rep = bosonchain::chain_entropy(spec, range_sites(0, 4));
  const auto& s = rep.spectrum;
  REQUIRE(s.nu.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s.nu[i] >= 0.5 - 1e-9);
    if (i) CHECK(s.nu[i] >= s.nu[i - 1]);
    if (i) CHECK(s.mu_star[i] <= s.mu_star[i - 1]);  // co-sorted, decreasing
  }

  // arccoth oracle: mu* = ln((2nu+1)/(2nu-1)) at nu = 0.707107
  const long double nu = 0.707107L;
  const long double mu_ref = std::log((2.0L * nu + 1.0L) / (2.0L * nu - 1.0L));
  CHECK(double(mu_ref) == doctest::Approx(1.762747).epsilon(1e-6));

  // nu at 1/2 maps to mu* = inf; large nu to mu* ~ 1/nu
  const ChainSpec pure{4, 2.0, 1.0, Boundary::Periodic};
  const auto cov = bosonchain::ground_covariance(
      bosonchain::build_couplings(pure).X, bosonchain::build_couplings(pure).P);
  const auto full = bosonchain::symplectic_spectrum(
      bosonchain::reduce(cov, range_sites(0, 4)));
  for (double mu : full.mu_star) CHECK(std::isinf(mu));
}

TEST_CASE("chain entropy: purity of the global state") {
  const ChainSpec spec{12, 0.8, 1.0, Boundary::Periodic};
  const auto rep = bosonchain::chain_entropy(spec, range_sites(0, 12));
  CHECK(rep.entropy <= 1e-8);
}

TEST_CASE("n = 2 chain entropy equals the closed pair form") {
  // X = [[3,-2],[-2,3]] has the spectrum of (j,k,l,m) = (3,2,1,0) by the
  // sign flip on one site
  const auto rep = bosonchain::chain_entropy({2, 1.0, 1.0, Boundary::Periodic},
                                             {0});
  const double closed = bosonpair::pair_entropy({3.0, 2.0, 1.0, 0.0});
  CHECK(rep.entropy == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("entropy grows as the chain approaches masslessness") {
  const auto sites = range_sites(0, 10);
  double prev = -1.0;
  for (double m : {0.1, 0.01, 0.001}) {
    const auto rep =
        bosonchain::chain_entropy({50, m, 1.0, Boundary::Periodic}, sites);
    CHECK(std::isfinite(rep.entropy));
    CHECK(rep.entropy > prev);
    prev = rep.entropy;
  }
}

TEST_CASE("complementarity: S(A) == S(complement) for pure global states") {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 8 + rng() % 33;  // up to 40
    std::uniform_real_distribution<double> mass(0.1, 1.5);
    const ChainSpec spec{n, mass(rng), 1.0,
                         rng() % 2 ? Boundary::Periodic : Boundary::Dirichlet};
    const auto cp = bosonchain::build_couplings(spec);
    const auto cov = bosonchain::ground_covariance(cp.X, cp.P);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t cut = 1 + rng() % (n - 1);
    std::vector<std::size_t> a(perm.begin(), perm.begin() + long(cut));
    std::vector<std::size_t> b(perm.begin() + long(cut), perm.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    auto entropy_of = [&](const std::vector<std::size_t>& sites) {
      const auto s = bosonchain::symplectic_spectrum(bosonchain::reduce(cov, sites));
      double total = 0.0;
      for (double nu : s.nu) total += bosonpair::entropy_from_alpha(nu);
      return total;
    };
    CHECK(std::abs(entropy_of(a) - entropy_of(b)) <= 1e-8);
  }
}

TEST_CASE("route agreement on random reduced covariances") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> mass(0.2, 2.0);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 4 + rng() % 9;
    const ChainSpec spec{n, mass(rng), 1.0,
                         rng() % 2 ? Boundary::Periodic : Boundary::Dirichlet};
    const auto cp = bosonchain::build_couplings(spec);
    const auto cov = bosonchain::ground_covariance(cp.X, cp.P);
    const std::size_t count = 1 + rng() % (n - 1);
    std::vector<std::size_t> sites(n);
    for (std::size_t i = 0; i < n; ++i) sites[i] = i;
    std::shuffle(sites.begin(), sites.end(), rng);
    sites.resize(count);
    std::sort(sites.begin(), sites.end());
    const auto s = bosonchain::symplectic_spectrum(bosonchain::reduce(cov, sites));
    CHECK(s.route_deviation <= 1e-9);
  }
}

TEST_CASE("zero mode report: gapped bound, massless limit, monotone link") {
  const auto gapped = bosonchain::zero_mode_report(
      {20, 1.0, 1.0, Boundary::Periodic}, range_sites(0, 5));
  CHECK(gapped.chain_min_freq >= 1.0 - 1e-12);
  CHECK(gapped.ent_min_freq > 0.0);
  CHECK(gapped.near_zero_tower == 0);

  // q = 0 circulant eigenvalue is m^2 exactly
  const auto soft = bosonchain::zero_mode_report(
      {20, 1e-3, 1.0, Boundary::Periodic}, range_sites(0, 5));
  CHECK(soft.chain_min_freq == doctest::Approx(1e-3).epsilon(1e-9));

  double prev_ent = std::numeric_limits<double>::infinity();
  double prev_s = -1.0;
  for (double m : {0.5, 0.2, 0.08, 0.03}) {
    const ChainSpec spec{30, m, 1.0, Boundary::Periodic};
    const auto zm = bosonchain::zero_mode_report(spec, range_sites(0, 8));
    const auto rep = bosonchain::chain_entropy(spec, range_sites(0, 8));
    CHECK(zm.ent_min_freq <= prev_ent + 1e-12);
    CHECK(rep.entropy >= prev_s - 1e-12);
    prev_ent = zm.ent_min_freq;
    prev_s = rep.entropy;
  }

  // exact zero mode: chain frequency reported, entanglement side pinned at 0
  const auto hard = bosonchain::zero_mode_report(
      {12, 0.0, 1.0, Boundary::Periodic}, range_sites(0, 3));
  CHECK(hard.chain_min_freq <= 1e-6);
  CHECK(hard.ent_min_freq == 0.0);
  CHECK(hard.near_zero_tower >= 1);
}

TEST_CASE("entanglement zero modes only occur with soft chain modes") {
  // scan: whenever ent_min_freq < 1e-3, chain_min_freq < 1e-1
  for (double m : {1.0, 0.3, 0.1, 0.03, 0.01, 0.003}) {
    const ChainSpec spec{40, m, 1.0, Boundary::Periodic};
    const auto zm = bosonchain::zero_mode_report(spec, range_sites(0, 10));
    if (zm.ent_min_freq < 1e-3) CHECK(zm.chain_min_freq < 1e-1);
  }

  // converse witness: X = P with a nearly vanishing chain mode has zero
  // entanglement (product state), so a chain zero mode alone proves nothing
  const double delta = 1e-5;
  SymMatrix x(2);
  x.set(0, 0, 1.0 + delta);
  x.set(1, 1, 1.0 + delta);
  x.set(0, 1, 1.0);
  const auto cov = bosonchain::ground_covariance(x, x);
  const auto s = bosonchain::symplectic_spectrum(bosonchain::reduce(cov, {0}));
  CHECK(bosonchain::chain_min_frequency(x, x) <= 2e-5);
  CHECK(s.nu[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::isinf(s.mu_star[0]));
}

TEST_CASE("the near-critical divergence lives in the position block only") {
  // momentum correlators carry a factor omega^{1/2} and stay finite as the
  // chain softens; the omega^{-1/2} of the position correlators is what
  // blows up
  double gp_first = 0.0;
  double gx_prev = 0.0;
  for (double m : {0.1, 0.01, 0.001, 0.0001}) {
    const auto cp =
        bosonchain::build_couplings({24, m, 1.0, Boundary::Periodic});
    const auto cov = bosonchain::ground_covariance(cp.X, cp.P);
    const double gx = cov.gamma_x.max_abs();
    const double gp = cov.gamma_p.max_abs();
    if (gp_first == 0.0) gp_first = gp;
    CHECK(gp <= 1.5 * gp_first);  // bounded
    CHECK(gx > gx_prev);          // grows without bound as m -> 0
    gx_prev = gx;
  }
  CHECK(gx_prev > 10.0 * gp_first);
}

TEST_CASE("divergence equivalence: S, max nu and min mu* are co-monotone") {
  const auto sites = range_sites(0, 12);
  double prev_s = -1.0, prev_nu = -1.0, prev_inv = -1.0;
  for (double m : {0.8, 0.4, 0.2, 0.1, 0.05}) {
    const auto rep =
        bosonchain::chain_entropy({40, m, 1.0, Boundary::Periodic}, sites);
    const double inv_mu = 1.0 / rep.spectrum.mu_star.back();
    CHECK(rep.entropy > prev_s);
    CHECK(rep.spectrum.nu.back() > prev_nu);
    CHECK(inv_mu > prev_inv);
    prev_s = rep.entropy;
    prev_nu = rep.spectrum.nu.back();
    prev_inv = inv_mu;
  }
}
