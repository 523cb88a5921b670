#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "entlab/fermion_chain.hpp"
#include "entlab/kern.hpp"

namespace entlab::fermion {

using matfun::HermMatrix;
using matfun::SymMatrix;

void validate(const FermionSpec& spec) {
  if (spec.n_cells < 2 || spec.n_cells % 2 != 0)
    throw std::invalid_argument("FermionSpec: n_cells must be even and >= 2");
  if (!(spec.mass >= 0.0))
    throw std::invalid_argument("FermionSpec: mass must be >= 0");
  if (!(spec.lattice_a > 0.0))
    throw std::invalid_argument("FermionSpec: lattice_a must be > 0");
}

std::vector<double> momentum_grid(std::size_t n_cells, double lattice_a) {
  if (n_cells < 2 || n_cells % 2 != 0)
    throw std::invalid_argument("momentum_grid: N must be even and >= 2");
  if (!(lattice_a > 0.0))
    throw std::invalid_argument("momentum_grid: lattice_a must be > 0");
  const double step = std::numbers::pi / (double(n_cells) * lattice_a);
  std::vector<double> k(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i)
    k[i] = step * (double(i) - double(n_cells) / 2.0 + 0.5);
  return k;
}

BlochMode bloch_diagonalize(double k, double mass, double lattice_a) {
  const double sinx = std::sin(k * lattice_a);
  const double omega = std::hypot(mass, sinx / lattice_a);
  if (omega <= 0.0)
    throw DegenerateMode(
        "bloch_diagonalize: omega = 0 (massless mode at sin(ka) = 0)");

  BlochMode bm;
  bm.k = k;
  bm.omega = omega;
  const double fmag = std::abs(sinx) / lattice_a;
  if (fmag == 0.0) {
    // Pure mass point: the +omega eigenvector is the +m component.
    bm.alpha = 0.0;
    bm.beta = 1.0;
    return bm;
  }
  // Bloch matrix [[-m, f], [conj(f), m]] with f = -(sin(ka)/a) e^{-ika};
  // +omega eigenvector (f, omega + m), normalized and rotated so the first
  // component is real nonnegative.
  const cplx f = -(sinx / lattice_a) * std::exp(cplx(0.0, -k * lattice_a));
  const double norm = std::sqrt(2.0 * omega * (omega + mass));
  bm.alpha = fmag / norm;
  bm.beta = (omega + mass) / norm * (std::conj(f) / fmag);
  return bm;
}

std::vector<CBlock> correlation_blocks(std::size_t n_blocks,
                                       const FermionSpec& spec) {
  validate(spec);
  if (n_blocks < 1 || n_blocks > spec.n_cells)
    throw std::invalid_argument(
        "correlation_blocks: offset count must lie in [1, N]");
  const std::size_t n = spec.n_cells;
  const std::vector<double> ks = momentum_grid(n, spec.lattice_a);

  std::vector<double> wb(n), wa(n), wcr(n), wci(n), c1(n), s1(n), cs(n), sn(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BlochMode bm = bloch_diagonalize(ks[i], spec.mass, spec.lattice_a);
    wb[i] = std::norm(bm.beta);
    wa[i] = std::norm(bm.alpha);
    // <b~† d~> = -alpha*beta in the eigenvector convention for (alpha, beta);
    // the filled mode is the orthogonal complement (-beta*, alpha*).
    const cplx wc = bm.alpha * bm.beta;
    wcr[i] = wc.real();
    wci[i] = wc.imag();
    const double theta = 2.0 * spec.lattice_a * ks[i];  // phase step per cell
    c1[i] = std::cos(theta);
    s1[i] = std::sin(theta);
    cs[i] = 1.0;
    sn[i] = 0.0;
  }

  const double inv_n = 1.0 / double(n);
  std::vector<CBlock> blocks(n_blocks);
  for (std::size_t d = 0; d < n_blocks; ++d) {
    const double* c = cs.data();
    const double* s = sn.data();
    const cplx a11(kern::dot(wb.data(), c, n), kern::dot(wb.data(), s, n));
    const cplx a22(kern::dot(wa.data(), c, n), kern::dot(wa.data(), s, n));
    const double pc = kern::dot(wcr.data(), c, n);
    const double ps = kern::dot(wcr.data(), s, n);
    const double qc = kern::dot(wci.data(), c, n);
    const double qs = kern::dot(wci.data(), s, n);
    const cplx a12 = -cplx(pc - qs, ps + qc);
    const cplx a21 = -cplx(pc + qs, ps - qc);
    blocks[d] = {inv_n * a11, inv_n * a12, inv_n * a21, inv_n * a22};
    kern::phasor_mul(cs.data(), sn.data(), c1.data(), s1.data(), n);
  }
  return blocks;
}

CBlock correlation_block(long offset, const FermionSpec& spec) {
  const std::size_t mag = std::size_t(offset < 0 ? -offset : offset);
  if (mag >= spec.n_cells)
    throw std::invalid_argument("correlation_block: |offset| must be < N");
  const std::vector<CBlock> b = correlation_blocks(mag + 1, spec);
  const CBlock& a = b.back();
  if (offset >= 0) return a;
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

CBlock FermionCorrelation::block(long d) const {
  const std::size_t mag = std::size_t(d < 0 ? -d : d);
  const CBlock& a = blocks.at(mag);
  if (d >= 0) return a;
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

FermionCorrelation assemble_from_blocks(std::span<const CBlock> blocks,
                                        std::size_t cells) {
  if (cells < 1 || cells > blocks.size())
    throw std::invalid_argument(
        "assemble_from_blocks: need blocks for every offset below L");
  const std::size_t dim = 2 * cells;
  std::vector<cplx> raw(dim * dim);
  for (std::size_t i = 0; i < cells; ++i)
    for (std::size_t j = 0; j < cells; ++j) {
      const long d = long(i) - long(j);
      const std::size_t mag = std::size_t(d < 0 ? -d : d);
      const CBlock& a = blocks[mag];
      CBlock blk = a;
      if (d < 0)
        blk = {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]),
               std::conj(a[3])};
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s)
          raw[(2 * i + r) * dim + (2 * j + s)] = blk[r * 2 + s];
    }
  return FermionCorrelation{cells,
                            {blocks.begin(), blocks.begin() + long(cells)},
                            HermMatrix::from_rowmajor(dim, raw)};
}

FermionCorrelation assemble_correlation(std::size_t cells,
                                        const FermionSpec& spec) {
  if (cells < 1 || cells > spec.n_cells)
    throw std::invalid_argument("assemble_correlation: L must lie in [1, N]");
  const std::vector<CBlock> blocks = correlation_blocks(cells, spec);
  return assemble_from_blocks(blocks, cells);
}

std::vector<double> correlation_spectrum(const FermionCorrelation& corr) {
  std::vector<double> lam = matfun::herm_eigenvalues(corr.assembled);
  for (double& v : lam) {
    if (v < -1e-9 || v > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "correlation_spectrum: eigenvalue " << v
          << " outside [0,1] beyond tolerance; the assembled matrix is not a "
             "valid one-body correlation";
      throw ConsistencyError(std::max(-v, v - 1.0), msg.str());
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return lam;
}

double entropy_from_occupations(std::span<const double> lambdas) {
  double s = 0.0;
  for (double l : lambdas) {
    if (l > 0.0 && l < 1.0)
      s -= l * std::log(l) + (1.0 - l) * std::log(1.0 - l);
  }
  return s;
}

double fermion_entropy(const FermionCorrelation& corr) {
  const std::vector<double> lam = correlation_spectrum(corr);
  return entropy_from_occupations(lam);
}

SingleSiteReport single_site_analytics(double K, std::size_t n_cells) {
  if (K < 0.0)
    throw std::invalid_argument("single_site_analytics: K must be >= 0");
  const FermionSpec spec{n_cells, K, 1.0};
  const FermionCorrelation corr = assemble_correlation(1, spec);
  const std::vector<double> lam = correlation_spectrum(corr);

  SingleSiteReport r;
  r.lambda_minus = lam[0];
  r.lambda_plus = lam[1];
  r.entropy = entropy_from_occupations(lam);
  if (K > 0.0) {
    const matfun::EllipticFE fe = matfun::elliptic_fe(-1.0 / (K * K));
    r.delta_elliptic =
        std::sqrt(K * K * (fe.F - fe.E) * (fe.F - fe.E) + fe.F * fe.F);
    r.ratio = (r.lambda_plus - 0.5) / r.delta_elliptic;
  } else {
    r.delta_elliptic = std::numeric_limits<double>::quiet_NaN();
    r.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

AsymptoticEstimate asymptotic_entropy(double K) {
  if (!(K > 0.0)) {
    std::ostringstream msg;
    msg << "asymptotic_entropy: K must be > 0, got " << K;
    throw DomainError(msg.str());
  }
  const double disc = std::sqrt(K * K + 4.0);
  AsymptoticEstimate est;
  est.zeta_plus = cplx(0.5 * (-K + disc), 0.0);
  est.zeta_minus = cplx(0.5 * (-K - disc), 0.0);

  // Roots of z^N p(z) p(1/z) are {zeta_+, zeta_-, 1/zeta_+, 1/zeta_-}; pick
  // the ones inside the unit circle and sum the distances to their conjugate
  // reciprocals.
  const cplx cands[4] = {est.zeta_plus, est.zeta_minus, 1.0 / est.zeta_plus,
                         1.0 / est.zeta_minus};
  double sum = 0.0;
  for (const cplx& z : cands) {
    if (std::abs(z) < 1.0)
      sum += std::log(std::abs(z - std::conj(1.0 / z)));
  }
  est.s_estimate = -sum / 6.0;
  est.small_k_law = -std::log(K) / 3.0;
  return est;
}

namespace {

// <c^t_i c_j> for the filled negative-energy sea of a complex Hermitian
// single-particle matrix, via the real embedding (eigenvector (u; v) of the
// embedding is the complex eigenvector u + iv, each mode appearing twice).
std::vector<cplx> filled_sea_correlation(const std::vector<cplx>& h,
                                         std::size_t n) {
  SymMatrix emb(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = h[i * n + j];
      emb.set(i, j, z.real());
      emb.set(n + i, n + j, z.real());
      emb.set(i, n + j, -z.imag());
    }
  const matfun::SymEigen e = matfun::sym_eigen(emb);

  std::size_t filled = 0;
  std::vector<cplx> c(n * n, cplx{});
  for (std::size_t a = 0; a < 2 * n; ++a) {
    if (e.values[a] >= 0.0) break;
    ++filled;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx zi(e.vec(i, a), e.vec(n + i, a));
      for (std::size_t j = 0; j < n; ++j) {
        const cplx zj(e.vec(j, a), e.vec(n + j, a));
        c[i * n + j] += 0.5 * std::conj(zi) * zj;  // <c†_i c_j>
      }
    }
  }
  if (filled != n) {
    std::ostringstream msg;
    msg << "filled_sea_correlation: expected " << n
        << " negative-energy modes, found " << filled;
    throw ConsistencyError(double(filled), msg.str());
  }
  return c;
}

// Staggered hopping chain on 2N sites with antiperiodic wrap; site 0 carries
// mass -m.
std::vector<cplx> staggered_hamiltonian(const FermionSpec& spec) {
  const std::size_t m = 2 * spec.n_cells;
  const double t = 0.5 / spec.lattice_a;
  std::vector<cplx> h(m * m, cplx{});
  for (std::size_t s = 0; s < m; ++s)
    h[s * m + s] = (s % 2 == 0) ? -spec.mass : spec.mass;
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t p = (s + 1) % m;
    const double sign = (s + 1 == m) ? -1.0 : 1.0;  // antiperiodic wrap
    h[s * m + p] += cplx(0.0, sign * t);
    h[p * m + s] += cplx(0.0, -sign * t);
  }
  return h;
}

double nambu_subsystem_entropy(const SymMatrix& g,
                               const std::vector<double>& fm_raw,
                               std::size_t n_sub, std::size_t n_total,
                               std::vector<double>* occupations) {
  // R = [[G, -F], [F, I - G]] restricted to the subsystem; real symmetric
  // with eigenvalues in [0,1] pairing as (l, 1-l).
  SymMatrix r(2 * n_sub);
  for (std::size_t i = 0; i < n_sub; ++i)
    for (std::size_t j = i; j < n_sub; ++j) {
      r.set(i, j, g(i, j));
      r.set(n_sub + i, n_sub + j, (i == j ? 1.0 : 0.0) - g(i, j));
    }
  for (std::size_t i = 0; i < n_sub; ++i)
    for (std::size_t j = 0; j < n_sub; ++j) {
      // r[i][n+j] = -F_ij; symmetry partner r[n+j][i] = F_ji = -F_ij agrees.
      r.set(i, n_sub + j, -fm_raw[i * n_total + j]);
    }
  std::vector<double> lam = matfun::sym_eigenvalues(r);
  double entropy = 0.0;
  for (double& v : lam) {
    if (v < -1e-9 || v > 1.0 + 1e-9)
      throw ConsistencyError(
          std::max(-v, v - 1.0),
          "nambu_subsystem_entropy: eigenvalue outside [0,1]");
    v = std::clamp(v, 0.0, 1.0);
    if (v > 0.0 && v < 1.0)
      entropy -= 0.5 * (v * std::log(v) + (1.0 - v) * std::log(1.0 - v));
  }
  if (occupations) *occupations = std::move(lam);
  return entropy;
}

}  // namespace

RescaleCheck rescaled_hamiltonian_check(const FermionSpec& spec,
                                        std::size_t cells) {
  validate(spec);
  if (!(spec.mass > 0.0))
    throw DomainError("rescaled_hamiltonian_check: requires m > 0");
  if (cells < 1 || cells > spec.n_cells)
    throw std::invalid_argument(
        "rescaled_hamiltonian_check: L must lie in [1, N]");

  const std::size_t m = 2 * spec.n_cells;
  const std::size_t sub = 2 * cells;

  RescaleCheck out;

  // Route 1: number-conserving staggered chain, filled sea.
  {
    const std::vector<cplx> c = filled_sea_correlation(staggered_hamiltonian(spec), m);
    std::vector<cplx> csub(sub * sub);
    for (std::size_t i = 0; i < sub; ++i)
      for (std::size_t j = 0; j < sub; ++j) csub[i * sub + j] = c[i * m + j];
    std::vector<double> lam =
        matfun::herm_eigenvalues(HermMatrix::from_rowmajor(sub, csub));
    for (double& v : lam) v = std::clamp(v, 0.0, 1.0);
    out.entropy_printed = entropy_from_occupations(lam);
    out.occupations_printed = std::move(lam);
  }

  // Route 2: uniform-pairing chain (the 2/m-rescaled form) via its
  // Bogoliubov-de Gennes ground state.
  {
    const double invk = 1.0 / spec.K();
    SymMatrix hb(2 * m);
    for (std::size_t s = 0; s < m; ++s) {
      hb.set(s, s, -2.0);
      hb.set(m + s, m + s, 2.0);
    }
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t p = (s + 1) % m;
      const double sign = (s + 1 == m) ? -1.0 : 1.0;
      // Delta[s][p] = sign/K, Delta[p][s] = -sign/K; H_B[s][m+t] = Delta[s][t],
      // and the mirror entry H_B[m+t][s] = -Delta[t][s] coincides with it.
      hb.add(s, m + p, sign * invk);
      hb.add(p, m + s, -sign * invk);
    }
    const matfun::SymEigen e = matfun::sym_eigen(hb);

    // G_ij = sum_{E_a > 0} v_a(i) v_a(j); F_ij = <c_i c_j> = sum u_a(i) v_a(j).
    std::vector<double> g(m * m, 0.0), fm(m * m, 0.0);
    for (std::size_t a = m; a < 2 * m; ++a) {
      for (std::size_t i = 0; i < m; ++i) {
        const double vi = e.vec(m + i, a);
        const double ui = e.vec(i, a);
        for (std::size_t j = 0; j < m; ++j) {
          g[i * m + j] += vi * e.vec(m + j, a);
          fm[i * m + j] += ui * e.vec(m + j, a);
        }
      }
    }
    SymMatrix gsym = matfun::symmetrize(g, m);
    SymMatrix gsub(sub);
    for (std::size_t i = 0; i < sub; ++i)
      for (std::size_t j = i; j < sub; ++j) gsub.set(i, j, gsym(i, j));
    out.entropy_rescaled =
        nambu_subsystem_entropy(gsub, fm, sub, m, &out.occupations_rescaled);
  }

  out.ok = std::abs(out.entropy_printed - out.entropy_rescaled) <=
           1e-9 * std::max(1.0, out.entropy_printed);
  return out;
}

}  // namespace entlab::fermion
