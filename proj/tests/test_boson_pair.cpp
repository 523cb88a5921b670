#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "entlab/boson_chain.hpp"
#include "entlab/boson_pair.hpp"

using namespace entlab;
using bosonpair::DegeneracyPath;
using bosonpair::PairCouplings;
using bosonpair::PathKind;

namespace {

// Independent high-precision evaluation of the entropy closed form.
long double entropy_ref(long double a) {
  const long double p = (a + 0.5L) * std::log(a + 0.5L);
  const long double q = a > 0.5L ? (a - 0.5L) * std::log(a - 0.5L) : 0.0L;
  return p - q;
}

double pipeline_nu(const PairCouplings& c) {
  matfun::SymMatrix x(2), p(2);
  x.set(0, 0, c.j);
  x.set(1, 1, c.j);
  x.set(0, 1, c.k);
  p.set(0, 0, c.l);
  p.set(1, 1, c.l);
  p.set(0, 1, c.m);
  const auto cov = bosonchain::ground_covariance(x, p);
  return bosonchain::symplectic_spectrum(bosonchain::reduce(cov, {0})).nu[0];
}

}  // namespace

TEST_CASE("coupling invariants are enforced") {
  CHECK_THROWS_AS(PairCouplings(1.0, 1.0, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PairCouplings(2.0, -0.1, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PairCouplings(2.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(PairCouplings(2.0, 0.0, 1.0, 0.0));
}

TEST_CASE("mode frequencies and the zero-mode flag") {
  const auto f = bosonpair::mode_frequencies_squared({2, 1, 2, 1});
  CHECK(f.mu_plus == doctest::Approx(9.0));
  CHECK(f.mu_minus == doctest::Approx(1.0));
  CHECK_FALSE(f.zero_mode);

  const auto g = bosonpair::mode_frequencies_squared({1, 0, 1, 0});
  CHECK(g.mu_plus == doctest::Approx(1.0));
  CHECK(g.mu_minus == doctest::Approx(1.0));

  // (j-k)(l-m) = eps exactly
  const double eps = 1e-6;
  const auto h = bosonpair::mode_frequencies_squared({1, 1 - eps, 1, 0});
  CHECK(h.mu_minus == doctest::Approx(eps).epsilon(1e-9));
  // the flag thresholds at 1e-10*mu_plus, so it fires much closer in
  CHECK_FALSE(h.zero_mode);
  CHECK(bosonpair::mode_frequencies_squared({1, 1 - 1e-12, 1, 0}).zero_mode);
}

TEST_CASE("symplectic eigenvalue: product states sit exactly at 1/2") {
  CHECK(bosonpair::symplectic_eigenvalue({1, 0, 1, 0}) == 0.5);
  // X = P makes the ground state a product state for any coupling
  CHECK(bosonpair::symplectic_eigenvalue({2, 1, 2, 1}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pipeline_nu({2, 1, 2, 1}) == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("closed form matches the covariance pipeline on random couplings") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> off(0.0, 2.0), gap(0.05, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double k = off(rng), m = off(rng);
    const PairCouplings c(k + gap(rng), k, m + gap(rng), m);
    const double a = bosonpair::symplectic_eigenvalue(c);
    CHECK(pipeline_nu(c) == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("eigenvalue divergence rate on a single collapsing pair") {
  // alpha^2 ~ eps^{-1/2} for (1, 1-eps, 1, 0)
  std::vector<double> la2, le;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const double a = bosonpair::symplectic_eigenvalue({1, 1 - eps, 1, 0});
    la2.push_back(std::log(a * a));
    le.push_back(std::log(eps));
  }
  const double slope = (la2.back() - la2.front()) / (le.back() - le.front());
  CHECK(std::abs(slope + 0.5) <= 0.03);
}

TEST_CASE("collapsed difference coupling with finite numerator throws") {
  CHECK_THROWS_AS(bosonpair::symplectic_eigenvalue({1, 1 - 1e-12, 1, 0}),
                  DivergentEigenvalue);
  try {
    bosonpair::symplectic_eigenvalue({1, 1 - 1e-12, 1, 0});
  } catch (const DivergentEigenvalue& e) {
    CHECK(e.mu_minus() <= 2e-12);
    CHECK(e.numerator() == doctest::Approx(1.0));
  }
}

TEST_CASE("entropy from alpha: exact values and asymptote") {
  CHECK(bosonpair::entropy_from_alpha(0.5) == 0.0);
  CHECK_THROWS_AS(bosonpair::entropy_from_alpha(0.49), DomainError);

  const double a = std::sqrt(0.5);
  const double s = bosonpair::entropy_from_alpha(a);
  CHECK(s == doctest::Approx(double(entropy_ref(a))).epsilon(1e-13));
  CHECK(s == doctest::Approx(0.5533033).epsilon(1e-6));

  for (double big : {10.0, 100.0, 1000.0}) {
    const double v = bosonpair::entropy_from_alpha(big) - std::log(big);
    CHECK(std::abs(v - 1.0) <= 1.0 / (8.0 * big * big) + 1e-12);
  }

  // strictly increasing
  double prev = 0.0;
  for (double x = 0.5; x < 3.0; x += 0.01) {
    const double v = bosonpair::entropy_from_alpha(x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("scale and exchange invariance of the eigenvalue") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> off(0.0, 2.0), gap(0.05, 2.0),
      sc(0.1, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double k = off(rng), m = off(rng);
    const PairCouplings c(k + gap(rng), k, m + gap(rng), m);
    const double a = bosonpair::symplectic_eigenvalue(c);
    const double s = sc(rng), t = sc(rng);
    const PairCouplings scaled(s * c.j, s * c.k, t * c.l, t * c.m);
    CHECK(bosonpair::symplectic_eigenvalue(scaled) ==
          doctest::Approx(a).epsilon(1e-12));
    const PairCouplings swapped(c.l, c.m, c.j, c.k);
    CHECK(bosonpair::symplectic_eigenvalue(swapped) ==
          doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("path points: linear, quadratic and endpoint behaviour") {
  const PairCouplings base(2, 1, 2, 1);

  const DegeneracyPath p2(base, PathKind::II);
  const auto mid = bosonpair::path_point(p2, 0.5);
  CHECK(mid.j == doctest::Approx(1.5));
  CHECK(mid.l == doctest::Approx(1.5));

  const DegeneracyPath p1(base, PathKind::I);
  const auto q = bosonpair::path_point(p1, 0.5);
  CHECK(q.j == doctest::Approx(1.25));
  CHECK(q.l == doctest::Approx(1.5));

  const DegeneracyPath p3(base, PathKind::III);
  const auto r = bosonpair::path_point(p3, 0.5);
  CHECK(r.j == doctest::Approx(1.5));
  CHECK(r.l == doctest::Approx(1.25));

  for (const auto& p : {p1, p2, p3}) {
    const auto end = bosonpair::path_point(p, 1.0);
    CHECK(end.j == doctest::Approx(base.k));
    CHECK(end.l == doctest::Approx(base.m));
    const auto start = bosonpair::path_point(p, 0.0);
    CHECK(start.j == doctest::Approx(base.j));
    CHECK(start.l == doctest::Approx(base.l));
  }

  const DegeneracyPath pc(base, 3.0, 1.5);
  const auto e = bosonpair::path_point(pc, 1.0);
  CHECK(e.j == doctest::Approx(base.k));
  CHECK(e.l == doctest::Approx(base.m));
}

TEST_CASE("limit classification of the canonical paths") {
  const PairCouplings base(2, 1, 2, 1);

  const auto v2 = bosonpair::classify_limit({base, PathKind::II});
  CHECK(v2.limit_class == bosonpair::LimitClass::Harmonic);
  CHECK_FALSE(v2.entropy_diverges);
  CHECK(v2.width_bounded);
  CHECK_FALSE(v2.tower_collapses);
  CHECK(v2.omega_minus_limit == doctest::Approx(1.0).epsilon(1e-6));

  const auto v1 = bosonpair::classify_limit({base, PathKind::I});
  CHECK(v1.limit_class == bosonpair::LimitClass::FreeParticle);
  CHECK(v1.entropy_diverges);
  CHECK_FALSE(v1.width_bounded);
  CHECK(v1.tower_collapses);

  const auto v3 = bosonpair::classify_limit({base, PathKind::III});
  CHECK(v3.limit_class == bosonpair::LimitClass::XSquared);
  CHECK(v3.entropy_diverges);
  CHECK_FALSE(v3.width_bounded);
}

TEST_CASE("verdict invariants hold on the classifiable family") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> off(0.1, 2.0), gap(0.1, 2.0),
      expd(1.0, 3.0);
  std::bernoulli_distribution equal_exponents(0.5);
  for (int rep = 0; rep < 60; ++rep) {
    const double k = off(rng), m = off(rng);
    const PairCouplings base(k + gap(rng), k, m + gap(rng), m);
    double pj = expd(rng), pl;
    if (equal_exponents(rng)) {
      pl = pj;
    } else {
      pl = expd(rng);
      if (std::abs(pj - pl) < 0.5) pl = pj + (pl >= pj ? 0.5 : -0.5);
      pl = std::max(1.0, pl);
    }
    const DegeneracyPath path(base, pj, pl);
    const auto v = bosonpair::classify_limit(path);
    CHECK(v.entropy_diverges ==
          (v.limit_class != bosonpair::LimitClass::Harmonic));
    CHECK(v.tower_collapses == v.entropy_diverges);
    CHECK(v.width_bounded == !v.entropy_diverges);
    CHECK((v.limit_class == bosonpair::LimitClass::Harmonic) == (pj == pl));

    // verdict agrees with the numerically observed divergence
    const double s4 = bosonpair::pair_entropy_at(path, 1 - 1e-4);
    const double s8 = bosonpair::pair_entropy_at(path, 1 - 1e-8);
    if (v.entropy_diverges)
      CHECK(s8 - s4 > 0.5);
    else
      CHECK(std::abs(s8 - s4) < 0.05);
  }
}

TEST_CASE("non-monotone rate sequences are rejected as inconclusive") {
  const double wobble[] = {1.0, 3.0, 0.5, 2.0};
  CHECK_THROWS_AS(bosonpair::detail::classify_ratio_sequence(wobble, 1e3),
                  InconclusivePath);
  const double fine[] = {1.0, 1.0, 1.0, 1.0};
  CHECK(bosonpair::detail::classify_ratio_sequence(fine, 1e3) ==
        bosonpair::LimitClass::Harmonic);
}

TEST_CASE("omega_minus: raw vs scale-stripped frequency") {
  const PairCouplings base(2, 1, 2, 1);  // omega_II = 1

  const DegeneracyPath p2(base, PathKind::II);
  for (double tau : {0.0, 0.3, 0.9, 0.999}) {
    CHECK(bosonpair::omega_minus(p2, tau).stripped ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bosonpair::omega_minus(p2, tau).raw ==
          doctest::Approx(1.0 - tau).epsilon(1e-12));
  }

  const DegeneracyPath p1(base, PathKind::I);
  CHECK(bosonpair::omega_minus(p1, 0.75).stripped ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bosonpair::omega_minus(p1, 0.0).stripped == doctest::Approx(1.0));
}

TEST_CASE("ground width along the paths") {
  const PairCouplings base(2, 1, 2, 1);

  const DegeneracyPath p2(base, PathKind::II);
  const double w0 = bosonpair::ground_width(p2, 0.0);
  CHECK(w0 == doctest::Approx(0.5));
  for (double tau : {0.5, 0.99, 1 - 1e-6})
    CHECK(bosonpair::ground_width(p2, tau) ==
          doctest::Approx(w0).epsilon(1e-12));

  // decoupled base at tau = 0: the single-oscillator variance
  const DegeneracyPath pd(PairCouplings(4.0, 0.0, 9.0, 0.0), PathKind::II);
  CHECK(bosonpair::ground_width(pd, 0.0) ==
        doctest::Approx(0.5 * std::sqrt(9.0 / 4.0)));

  // path I: width grows like (1-tau)^{-1/2}
  const DegeneracyPath p1(base, PathKind::I);
  std::vector<double> lw, lu;
  for (double q : {4.0, 6.0, 8.0}) {
    const double u = std::pow(10.0, -q);
    lw.push_back(std::log(bosonpair::ground_width(p1, 1.0 - u)));
    lu.push_back(std::log(u));
  }
  const double slope = (lw.back() - lw.front()) / (lu.back() - lu.front());
  CHECK(slope == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("entropy is constant along path II for the acceptance base") {
  const DegeneracyPath p(PairCouplings(2, 1, 2, 1), PathKind::II);
  for (double tau : {0.0, 0.25, 0.5, 0.9, 0.99, 1 - 1e-4, 1 - 1e-8}) {
    CHECK(std::abs(bosonpair::symplectic_eigenvalue_at(p, tau) - 0.5) <=
          1e-12);
    CHECK(bosonpair::pair_entropy_at(p, tau) <= 1e-10);
  }
}

TEST_CASE("path II stays constant on proportional bases and finite generally") {
  // k0 (l0 - m0) == m0 (j0 - k0) keeps the reduced state exactly frozen
  const DegeneracyPath prop(PairCouplings(3, 1, 6, 2), PathKind::II);
  const double a0 = bosonpair::symplectic_eigenvalue_at(prop, 0.0);
  for (double tau : {0.5, 0.99, 1 - 1e-6, 1 - 1e-8})
    CHECK(bosonpair::symplectic_eigenvalue_at(prop, tau) ==
          doctest::Approx(a0).epsilon(1e-12));

  // generic bases drift slightly but stay finite up to the endpoint
  const DegeneracyPath gen(PairCouplings(3, 1, 2, 0.5), PathKind::II);
  const double g0 = bosonpair::symplectic_eigenvalue_at(gen, 0.0);
  const double g1 = bosonpair::symplectic_eigenvalue_at(gen, 1 - 1e-8);
  CHECK(std::isfinite(g1));
  CHECK(std::abs(g1 - g0) / g0 < 0.02);
}

TEST_CASE("entropy grows logarithmically along paths I and III") {
  const PairCouplings base(2, 1, 2, 1);
  for (const auto kind : {PathKind::I, PathKind::III}) {
    const DegeneracyPath p(base, kind);
    std::vector<double> s;
    for (int q = 2; q <= 8; ++q)
      s.push_back(bosonpair::pair_entropy_at(p, 1.0 - std::pow(10.0, -q)));
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    std::vector<double> slopes;
    for (std::size_t i = 2; i < s.size(); ++i)
      slopes.push_back((s[i] - s[i - 1]) / std::log(10.0));
    double mean = 0;
    for (double v : slopes) mean += v;
    mean /= double(slopes.size());
    for (double v : slopes) CHECK(std::abs(v - mean) / mean <= 0.05);
  }
}

TEST_CASE("product state check is exactly zero below the zero-mode point") {
  CHECK(bosonpair::product_state_check(0.0) == 0.0);
  CHECK(bosonpair::product_state_check(0.5) <= 1e-12);
  CHECK(bosonpair::product_state_check(0.999) <= 1e-12);
  CHECK_THROWS_AS(bosonpair::product_state_check(1.0), UnboundedHamiltonian);
  CHECK_THROWS_AS(bosonpair::product_state_check(1.5), UnboundedHamiltonian);
}
