#pragma once

#include <cstddef>
#include <vector>

#include "entlab/matfun.hpp"

// N-site harmonic chain: discretized-scalar-field couplings, ground-state
// covariance, subsystem symplectic spectra computed along two independent
// routes, entanglement-Hamiltonian mode frequencies, and zero-mode
// diagnostics.

namespace entlab::bosonchain {

enum class Boundary { Periodic, Dirichlet };

struct ChainSpec {
  std::size_t n_sites;
  double mass;       // >= 0, lattice units
  double lattice_a;  // > 0
  Boundary boundary = Boundary::Periodic;
};

struct CouplingPair {
  matfun::SymMatrix X;
  matfun::SymMatrix P;
};

// P = identity; X_ii = m^2 + 2/a^2, nearest-neighbour coupling -1/a^2, wrap
// for periodic chains (the n = 2 wraparound doubles the off-diagonal entry).
// X is singular exactly for the massless periodic chain.
CouplingPair build_couplings(const ChainSpec& spec);

// Ground-state second moments in the physical normalization where a pure
// uncorrelated mode has symplectic eigenvalue 1/2:
//   gamma_p = (1/2) X^{1/2} (X^{1/2} P X^{1/2})^{-1/2} X^{1/2},
//   gamma_x = (1/4) gamma_p^{-1}.
struct GroundCovariance {
  matfun::SymMatrix gamma_x;
  matfun::SymMatrix gamma_p;
};

GroundCovariance ground_covariance(const matfun::SymMatrix& x,
                                   const matfun::SymMatrix& p);

// Principal submatrices of both blocks on the chosen sites (strictly
// increasing, in range). Purity of the full state is lost here on purpose.
GroundCovariance reduce(const GroundCovariance& cov,
                        const std::vector<std::size_t>& sites);

// Entanglement-Hamiltonian mode frequency below which a mode counts as a
// zero mode of the entanglement Hamiltonian.
inline constexpr double kEpsZero = 1e-3;

struct EntanglementSpectrum {
  std::vector<double> nu;       // symplectic eigenvalues, ascending, >= 1/2
  std::vector<double> mu_star;  // 2 arccoth(2 nu), +inf where nu <= 1/2
  std::size_t zero_mode_count;  // # of mu_star below kEpsZero
  double route_deviation;       // max relative disagreement of the two routes
};

// Symplectic eigenvalues of a reduced covariance, computed both as the
// positive spectrum of i Omega Gamma (Hermitian form) and as
// sqrt(eig(gamma_x^{1/2} gamma_p gamma_x^{1/2})); the routes must agree to
// 1e-9 relative (beyond 1e-6 is an internal consistency error).
EntanglementSpectrum symplectic_spectrum(const GroundCovariance& reduced);

struct EntropyReport {
  double entropy;
  EntanglementSpectrum spectrum;
  double chain_min_freq;  // sqrt(min eig of XP) for the full chain
};

// Subsystem entanglement entropy S = sum_a [(nu+1/2)ln(nu+1/2) -
// (nu-1/2)ln(nu-1/2)]. Massless periodic chains surface ZeroModePresent.
EntropyReport chain_entropy(const ChainSpec& spec,
                            const std::vector<std::size_t>& sites);

struct ZeroModeReport {
  double chain_min_freq;        // sqrt(min eig XP), 0 at an exact zero mode
  double ent_min_freq;          // min mu_star (0 when covariance diverges)
  std::size_t near_zero_tower;  // # of mu_star below kEpsZero
};

ZeroModeReport zero_mode_report(const ChainSpec& spec,
                                const std::vector<std::size_t>& sites);

// sqrt(min eigenvalue of XP), computed on the similarity-symmetrized
// product; clamps tiny negative rounding to zero.
double chain_min_frequency(const matfun::SymMatrix& x,
                           const matfun::SymMatrix& p);

}  // namespace entlab::bosonchain
