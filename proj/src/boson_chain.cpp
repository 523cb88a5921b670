#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "entlab/boson_chain.hpp"
#include "entlab/boson_pair.hpp"

namespace entlab::bosonchain {

using matfun::SymMatrix;

namespace {

void check_spec(const ChainSpec& s) {
  if (s.n_sites < 2)
    throw std::invalid_argument("ChainSpec: n_sites must be >= 2");
  if (!(s.lattice_a > 0.0))
    throw std::invalid_argument("ChainSpec: lattice_a must be > 0");
  if (!(s.mass >= 0.0))
    throw std::invalid_argument("ChainSpec: mass must be >= 0");
}

void check_sites(const std::vector<std::size_t>& sites, std::size_t n) {
  if (sites.empty()) throw std::invalid_argument("site set must be nonempty");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] >= n)
      throw std::invalid_argument("site index out of range");
    if (i > 0 && sites[i] <= sites[i - 1])
      throw std::invalid_argument("site set must be strictly increasing");
  }
}

SymMatrix scaled(const SymMatrix& m, double s) {
  SymMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) out.set(i, j, s * m(i, j));
  return out;
}

// C = A*B*A for symmetric A, B; the congruence keeps the result symmetric.
SymMatrix sandwich(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t n = a.dim();
  const std::vector<double> ab = matfun::mat_mul(a.raw(), b.raw(), n);
  const std::vector<double> aba = matfun::mat_mul(ab, a.raw(), n);
  return matfun::symmetrize(aba, n);
}

}  // namespace

CouplingPair build_couplings(const ChainSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.n_sites;
  const double inv_a2 = 1.0 / (spec.lattice_a * spec.lattice_a);
  SymMatrix x(n);
  for (std::size_t i = 0; i < n; ++i)
    x.set(i, i, spec.mass * spec.mass + 2.0 * inv_a2);
  for (std::size_t i = 0; i + 1 < n; ++i) x.add(i, i + 1, -inv_a2);
  if (spec.boundary == Boundary::Periodic) x.add(n - 1, 0, -inv_a2);
  return {std::move(x), SymMatrix::identity(n)};
}

GroundCovariance ground_covariance(const matfun::SymMatrix& x,
                                   const matfun::SymMatrix& p) {
  if (x.dim() != p.dim())
    throw std::invalid_argument("ground_covariance: dimension mismatch");
  try {
    const SymMatrix sx = matfun::sym_sqrt(x);
    const SymMatrix core = matfun::sym_inv_sqrt(sandwich(sx, p));
    const SymMatrix gamma_p = scaled(sandwich(sx, core), 0.5);
    const SymMatrix gamma_x = scaled(matfun::sym_inverse(gamma_p), 0.25);
    return {gamma_x, gamma_p};
  } catch (const NotPositiveDefinite& e) {
    std::ostringstream msg;
    msg << "ground_covariance: chain has a zero mode (vanishing eigenvalue "
        << e.eigenvalue() << "); the entanglement entropy is formally infinite";
    throw ZeroModePresent(e.eigenvalue(), msg.str());
  }
}

GroundCovariance reduce(const GroundCovariance& cov,
                        const std::vector<std::size_t>& sites) {
  const std::size_t n = cov.gamma_x.dim();
  check_sites(sites, n);
  const std::size_t k = sites.size();
  SymMatrix gx(k), gp(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      gx.set(a, b, cov.gamma_x(sites[a], sites[b]));
      gp.set(a, b, cov.gamma_p(sites[a], sites[b]));
    }
  return {std::move(gx), std::move(gp)};
}

EntanglementSpectrum symplectic_spectrum(const GroundCovariance& reduced) {
  const std::size_t k = reduced.gamma_x.dim();

  // Route 2: nu^2 = eig of gamma_x^{1/2} gamma_p gamma_x^{1/2}.
  const SymMatrix gx_half = matfun::sym_sqrt(reduced.gamma_x);
  std::vector<double> prod_eigs =
      matfun::sym_eigenvalues(sandwich(gx_half, reduced.gamma_p));
  std::vector<double> nu2(k);
  for (std::size_t i = 0; i < k; ++i)
    nu2[i] = std::sqrt(std::max(prod_eigs[i], 0.0));

  // Route 1: positive spectrum of i Omega Gamma, made Hermitian by the
  // congruence Gamma^{1/2} (i Omega) Gamma^{1/2} =
  // [[0, i Gx Gp], [-i (Gx Gp)^T, 0]] with Gx = gamma_x^{1/2} etc.
  const SymMatrix gp_half = matfun::sym_sqrt(reduced.gamma_p);
  const std::vector<double> b =
      matfun::mat_mul(gx_half.raw(), gp_half.raw(), k);
  matfun::HermMatrix h(2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      h.set(i, k + j, matfun::cplx(0.0, b[i * k + j]));
  std::vector<double> full = matfun::herm_eigenvalues(h);
  std::vector<double> nu1(full.begin() + k, full.end());  // positive half

  double dev = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    dev = std::max(dev, std::abs(nu1[i] - nu2[i]) /
                            std::max(std::abs(nu2[i]), 1e-300));
  if (dev > 1e-6) {
    std::ostringstream msg;
    msg << "symplectic_spectrum: the i*Omega*Gamma route and the "
           "sqrt(eig(gamma_x gamma_p)) route disagree (max relative "
           "deviation "
        << dev << ")";
    throw ConsistencyError(dev, msg.str());
  }

  EntanglementSpectrum s;
  s.nu = std::move(nu2);
  s.mu_star.resize(k);
  s.zero_mode_count = 0;
  s.route_deviation = dev;
  for (std::size_t i = 0; i < k; ++i) {
    const double nu = s.nu[i];
    s.mu_star[i] = nu <= 0.5 + 1e-12
                       ? std::numeric_limits<double>::infinity()
                       : std::log((2.0 * nu + 1.0) / (2.0 * nu - 1.0));
    if (s.mu_star[i] < kEpsZero) ++s.zero_mode_count;
  }
  return s;
}

double chain_min_frequency(const matfun::SymMatrix& x,
                           const matfun::SymMatrix& p) {
  const SymMatrix sp = matfun::sym_sqrt(p);
  const std::vector<double> eigs = matfun::sym_eigenvalues(sandwich(sp, x));
  return std::sqrt(std::max(eigs.front(), 0.0));
}

EntropyReport chain_entropy(const ChainSpec& spec,
                            const std::vector<std::size_t>& sites) {
  check_sites(sites, spec.n_sites);
  const CouplingPair xp = build_couplings(spec);
  const GroundCovariance cov = ground_covariance(xp.X, xp.P);
  const EntanglementSpectrum spectrum = symplectic_spectrum(reduce(cov, sites));

  double s = 0.0;
  for (double nu : spectrum.nu) s += bosonpair::entropy_from_alpha(nu);

  EntropyReport r;
  r.entropy = s;
  r.spectrum = spectrum;
  r.chain_min_freq = chain_min_frequency(xp.X, xp.P);
  return r;
}

ZeroModeReport zero_mode_report(const ChainSpec& spec,
                                const std::vector<std::size_t>& sites) {
  check_sites(sites, spec.n_sites);
  const CouplingPair xp = build_couplings(spec);

  ZeroModeReport r;
  {
    // min chain frequency straight from the couplings; works for singular X
    // where the covariance pipeline refuses.
    const std::vector<double> eigs = matfun::sym_eigenvalues(
        sandwich(matfun::sym_sqrt(xp.P), xp.X));
    r.chain_min_freq = std::sqrt(std::max(eigs.front(), 0.0));
  }
  try {
    const EntanglementSpectrum s =
        symplectic_spectrum(reduce(ground_covariance(xp.X, xp.P), sites));
    r.ent_min_freq = s.mu_star.empty() ? 0.0 : s.mu_star.back();
    for (double mu : s.mu_star) r.ent_min_freq = std::min(r.ent_min_freq, mu);
    r.near_zero_tower = s.zero_mode_count;
  } catch (const ZeroModePresent&) {
    // Exact chain zero mode: the covariance diverges, which is the
    // entanglement-Hamiltonian frequency hitting zero.
    r.ent_min_freq = 0.0;
    r.near_zero_tower = 1;
  }
  return r;
}

}  // namespace entlab::bosonchain
