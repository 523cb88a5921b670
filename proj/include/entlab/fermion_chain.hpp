#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "entlab/matfun.hpp"

// Staggered-fermion (discretized Dirac) chain in 1+1 dimensions: momentum
// space diagonalization on the half-integer (antiperiodic) grid, the
// position-space block-Toeplitz correlation matrix, subsystem entanglement
// entropy, single-site analytics in terms of complete elliptic integrals,
// and the root-geometry asymptotics of the small-K divergence.
//
// Cell convention: cell j holds the two staggered sites (2j, 2j+1); the
// first component carries the mass -m and the second +m, so the single-site
// correlation matrix has sum_k (omega_k + m)/(2 N omega_k) on its (1,1)
// slot. The opposite labeling differs by a one-site shift and gives
// identical entanglement.

namespace entlab::fermion {

using cplx = std::complex<double>;

struct FermionSpec {
  std::size_t n_cells;  // N, even; the chain has 2N staggered sites
  double mass;          // m >= 0
  double lattice_a;     // a > 0
  double K() const noexcept { return mass * lattice_a; }
};

void validate(const FermionSpec& spec);

// Half-integer momentum grid k_n = pi (n + 1/2) / (N a), n = -N/2 .. N/2-1:
// antiperiodic boundary conditions, symmetric under k -> -k, and free of the
// sin(ka) = 0 degeneracy even at m = 0.
std::vector<double> momentum_grid(std::size_t n_cells, double lattice_a);

struct BlochMode {
  double k;
  double omega;  // +sqrt(m^2 + sin^2(ka)/a^2)
  cplx alpha;    // first component of the +omega eigenvector, real >= 0
  cplx beta;     // second component
};

// Diagonalizes the 2x2 Bloch matrix [[-m, f], [conj(f), m]] with
// f = -(sin(ka)/a) e^{-ika}; the eigenvector phase is fixed so alpha is real
// and nonnegative.
BlochMode bloch_diagonalize(double k, double mass, double lattice_a);

// 2x2 correlation block, row-major:
//   A(d) = [[ <b^t(0) b(d)>, <b^t(0) d(d)> ], [ <d^t(0) b(d)>, <d^t(0) d(d)> ]]
// evaluated as momentum sums over the Bloch coefficients; A(-d) = A(d)^t*.
using CBlock = std::array<cplx, 4>;

CBlock correlation_block(long offset, const FermionSpec& spec);

// All blocks A(0..L-1) in one pass (shared phase tables).
std::vector<CBlock> correlation_blocks(std::size_t n_blocks,
                                       const FermionSpec& spec);

struct FermionCorrelation {
  std::size_t cells;                // subsystem cell count L
  std::vector<CBlock> blocks;       // A(d) for d = 0..L-1
  matfun::HermMatrix assembled;     // 2L x 2L, block (i,j) = A(i-j)

  CBlock block(long d) const;       // negative offsets via A(-d) = A(d)^t*
};

FermionCorrelation assemble_correlation(std::size_t cells,
                                        const FermionSpec& spec);

// Assembles the leading principal 2*cells x 2*cells correlation from an
// already-computed block set (shared across the L values of a subsystem
// sweep).
FermionCorrelation assemble_from_blocks(std::span<const CBlock> blocks,
                                        std::size_t cells);

// Eigenvalues of the assembled correlation matrix, ascending, clamped to
// [0,1]; excursions beyond 1e-9 outside that interval are errors.
std::vector<double> correlation_spectrum(const FermionCorrelation& corr);

// S = -sum_i [l ln l + (1-l) ln(1-l)] with 0 ln 0 = 0.
double entropy_from_occupations(std::span<const double> lambdas);

double fermion_entropy(const FermionCorrelation& corr);

struct SingleSiteReport {
  double delta_elliptic;  // sqrt(K^2 (F-E)^2 + F^2) at parameter -1/K^2
                          // (NaN at K = 0 where the argument is singular)
  double lambda_minus;
  double lambda_plus;     // numeric L = 1 eigenvalues; these are authoritative
  double entropy;
  double ratio;           // (lambda_plus - 1/2) / delta_elliptic
};

// Single-cell analytics: the printed elliptic expression evaluated with
// matfun::elliptic_fe next to the numeric momentum-sum eigenvalues at the
// given grid size. The numeric route is authoritative; the report carries
// the measured proportionality between the two.
SingleSiteReport single_site_analytics(double K, std::size_t n_cells = 4096);

struct AsymptoticEstimate {
  cplx zeta_plus;      // (-K + sqrt(K^2+4))/2, inside the unit disc for K > 0
  cplx zeta_minus;     // (-K - sqrt(K^2+4))/2
  double s_estimate;   // -(1/6) sum over interior roots of ln|z - conj(1/z)|
  double small_k_law;  // -(1/3) ln K
};

// Root geometry of p(z) = -(1/K) z^2 - z + 1/K: the roots pair as
// zeta_+ zeta_- = -1, exactly one lies inside the unit circle, and the
// distance of each interior root of z^N p(z) p(1/z) to its conjugate
// reciprocal reproduces the -(1/3) ln K divergence law.
AsymptoticEstimate asymptotic_entropy(double K);

struct RescaleCheck {
  bool ok;                  // |entropies| agree to 1e-9
  double entropy_printed;   // staggered hopping Hamiltonian route
  double entropy_rescaled;  // pairing-form (rescaled) Hamiltonian route
  std::vector<double> occupations_printed;   // subsystem eigenvalues
  std::vector<double> occupations_rescaled;  // paired Nambu eigenvalues
};

// Verifies that the particle-hole substitution, the phase twist and the
// overall 2/m rescaling that turn the hopping chain into the uniform-pairing
// chain leave every subsystem entropy unchanged. Both routes fill the
// negative-energy single-particle (resp. quasiparticle) modes in real space.
RescaleCheck rescaled_hamiltonian_check(const FermionSpec& spec,
                                        std::size_t cells);

}  // namespace entlab::fermion
