#pragma once

#include <span>

#include "entlab/errors.hpp"

// Two coupled bosonic degrees of freedom with exchange symmetry:
//   H = p^T P p / 2 + x^T X x / 2,  X = [[j,k],[k,j]],  P = [[l,m],[m,l]].
// Closed-form symplectic eigenvalue and entropy of the one-site reduction,
// tau-parameterized degeneration paths, and the divergence diagnostics that
// separate paths with finite entropy from those that blow up.

namespace entlab::bosonpair {

struct PairCouplings {
  double j, k, l, m;
  PairCouplings(double j_, double k_, double l_, double m_);
};

struct ModeFrequenciesSquared {
  double mu_plus;   // (j+k)(l+m)
  double mu_minus;  // (j-k)(l-m)
  bool zero_mode;   // mu_minus < 1e-10 * mu_plus
};

ModeFrequenciesSquared mode_frequencies_squared(const PairCouplings& c);

// Symplectic eigenvalue of the one-site reduced covariance,
//   alpha^2 = (r + 1)/8 with r = (jl - km)/sqrt((j^2-k^2)(l^2-m^2)),
// normalized so a decoupled pair gives alpha = 1/2 and zero entropy.
// Throws DivergentEigenvalue when a difference coupling has collapsed while
// the numerator stays finite (alpha formally infinite).
double symplectic_eigenvalue(const PairCouplings& c);

// S = (a+1/2)ln(a+1/2) - (a-1/2)ln(a-1/2), with the a -> 1/2 limit taken
// explicitly. Strictly increasing; S = 0 iff a = 1/2.
double entropy_from_alpha(double alpha);

// Convenience composition of the two calls above.
double pair_entropy(const PairCouplings& c);

enum class PathKind { I, II, III, Custom };

// Trajectory through the diagonal couplings (j, l) that reaches the
// degenerate endpoint (k0, m0) at tau = 1:
//   j(tau) = k0 + (j0-k0)(1-tau)^pj,  l(tau) = m0 + (l0-m0)(1-tau)^pl,
// with (pj, pl) = (2,1) for path I, (1,1) for II, (1,2) for III.
struct DegeneracyPath {
  PairCouplings base;
  PathKind kind;
  double p_j = 1.0;  // used by Custom only; must be >= 1
  double p_l = 1.0;

  DegeneracyPath(PairCouplings base_, PathKind kind_);
  DegeneracyPath(PairCouplings base_, double p_j_, double p_l_);  // Custom
};

struct PathPoint {
  double j, l;
};

PathPoint path_point(const DegeneracyPath& p, double tau);

// Couplings at a path point; valid for tau in [0, 1). Note that forming the
// absolute couplings rounds the differences j - k0 and l - m0 away once
// (1-tau)^p falls below machine epsilon relative to the base; the *_at
// evaluators below keep those differences exact instead.
PairCouplings couplings_at(const DegeneracyPath& p, double tau);

// Symplectic eigenvalue / entropy at a path point, evaluated from the exact
// difference couplings (j-k0, l-m0) so tau may approach 1 to within 1e-12.
double symplectic_eigenvalue_at(const DegeneracyPath& p, double tau);
double pair_entropy_at(const DegeneracyPath& p, double tau);

enum class LimitClass { Harmonic, FreeParticle, XSquared };

struct DivergenceVerdict {
  LimitClass limit_class;
  bool entropy_diverges;      // == (limit_class != Harmonic)
  double omega_minus_limit;   // scale-stripped frequency at tau = 1 - 1e-8
  bool width_bounded;         // == !entropy_diverges
  bool tower_collapses;       // == entropy_diverges
};

// Classifies the tau -> 1 limit by the decay-rate ratio
//   r(tau) = [(j-k0)/(l-m0)] * [(l0-m0)/(j0-k0)]
// sampled at tau = 1 - 10^{-q}, q in {2,4,6,8}: Harmonic when r stays within
// (1e-3, 1e3), FreeParticle when r -> 0 (potential dies faster), XSquared
// when r -> inf. Throws InconclusivePath if the samples are not monotone.
DivergenceVerdict classify_limit(const DegeneracyPath& p);

struct OmegaMinus {
  double raw;       // sqrt((j-k0)(l-m0))
  double stripped;  // raw with the overall amplitude factor of H_- removed
};

// Frequency of the odd-parity mode H_- at the path point. The stripped value
// divides out the overall prefactor of H_- (kinetic coefficient normalized
// to its base value), separating amplitude modulation from genuine frequency
// modulation: it is constant on path II and decays like sqrt(1-tau) on I.
OmegaMinus omega_minus(const DegeneracyPath& p, double tau);

// Ground-state width of the odd-parity mode, <x_-^2> =
// (1/2) sqrt((l-m0)/(j-k0)); valid for tau in [0, 1).
double ground_width(const DegeneracyPath& p, double tau);

// Entropy of the number-coupled pair H = a^t a + b^t b + lambda(a^t b + b^t a),
// mapped to couplings (2, 2 lambda, 2, 2 lambda). Exactly zero for all
// lambda < 1 even though a zero mode emerges as lambda -> 1.
double product_state_check(double lambda);

namespace detail {
// Classification core, exposed for direct testing of the monotonicity guard.
LimitClass classify_ratio_sequence(std::span<const double> r, double ratio_tol);
}  // namespace detail

}  // namespace entlab::bosonpair
