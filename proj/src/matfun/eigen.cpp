#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entlab/kern.hpp"
#include "entlab/matfun.hpp"

namespace entlab::matfun {

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {
  if (dim == 0) throw std::invalid_argument("SymMatrix: dim must be >= 1");
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.a_[i * dim + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.a_[i * d.size() + i] = d[i];
  return m;
}

SymMatrix SymMatrix::from_rowmajor(std::size_t dim, std::span<const double> a) {
  if (a.size() != dim * dim)
    throw std::invalid_argument("SymMatrix: entry count does not match dim");
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (a[i * dim + j] != a[j * dim + i])
        throw std::invalid_argument("SymMatrix: entries are not symmetric");
      m.a_[i * dim + j] = a[i * dim + j];
    }
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  a_[i * dim_ + j] = v;
  a_[j * dim_ + i] = v;
}

void SymMatrix::add(std::size_t i, std::size_t j, double v) {
  a_[i * dim_ + j] += v;
  if (i != j) a_[j * dim_ + i] += v;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::max_diag() const noexcept {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, a_[i * dim_ + i]);
  return m;
}

double SymMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

HermMatrix::HermMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{}) {
  if (dim == 0) throw std::invalid_argument("HermMatrix: dim must be >= 1");
}

HermMatrix HermMatrix::from_rowmajor(std::size_t dim, std::span<const cplx> a) {
  if (a.size() != dim * dim)
    throw std::invalid_argument("HermMatrix: entry count does not match dim");
  double scale = 0.0;
  for (const cplx& z : a) scale = std::max(scale, std::abs(z));
  HermMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const cplx up = a[i * dim + j];
      const cplx lo = a[j * dim + i];
      if (std::abs(up - std::conj(lo)) > 1e-14 * std::max(scale, 1e-300))
        throw std::invalid_argument("HermMatrix: entries are not Hermitian");
      cplx h = 0.5 * (up + std::conj(lo));
      if (i == j) h = cplx(h.real(), 0.0);
      m.a_[i * dim + j] = h;
      m.a_[j * dim + i] = std::conj(h);
    }
  }
  return m;
}

void HermMatrix::set(std::size_t i, std::size_t j, cplx v) {
  if (i == j) v = cplx(v.real(), 0.0);
  a_[i * dim_ + j] = v;
  a_[j * dim_ + i] = std::conj(v);
}

double HermMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

namespace {

double offdiag_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * s);
}

// Cyclic Jacobi on a full dense copy. Rotations touch rows p and q through
// the rotate_pair kernel; the mirrored columns are then refreshed from the
// rows so the stored matrix stays exactly symmetric.
struct JacobiResult {
  std::vector<double> diag;
  std::vector<double> wrows;  // eigenvectors as rows (empty if not wanted)
  int sweeps;
  double off;
};

JacobiResult jacobi(const SymMatrix& m, bool want_vectors) {
  const std::size_t n = m.dim();
  std::vector<double> a = m.raw();
  std::vector<double> w;
  if (want_vectors) {
    w.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;
  }

  const double frob = m.frobenius();
  if (!std::isfinite(frob))
    throw std::invalid_argument("sym_eigen: matrix has non-finite entries");
  const double off_limit = 1e-14 * frob;
  const double rot_limit = frob > 0.0 ? off_limit / (10.0 * double(n)) : 0.0;

  int sweep = 0;
  double off = offdiag_norm(a, n);
  for (; sweep < 100 && off > off_limit; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) <= rot_limit) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        kern::rotate_pair(&a[p * n], &a[q * n], c, s, n);
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          a[i * n + p] = a[p * n + i];
          a[i * n + q] = a[q * n + i];
        }
        if (want_vectors) kern::rotate_pair(&w[p * n], &w[q * n], c, s, n);
      }
    }
    off = offdiag_norm(a, n);
  }

  if (off > off_limit) {
    std::ostringstream msg;
    msg << "sym_eigen: Jacobi did not converge in 100 sweeps (off-diagonal "
           "norm "
        << off << ", limit " << off_limit << ")";
    throw ConvergenceError(off, msg.str());
  }

  JacobiResult r;
  r.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.diag[i] = a[i * n + i];
  r.wrows = std::move(w);
  r.sweeps = sweep;
  r.off = off;
  return r;
}

void fix_sign(double* row, std::size_t n) {
  double amax = 0.0;
  for (std::size_t i = 0; i < n; ++i) amax = std::max(amax, std::abs(row[i]));
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(row[i]) > 1e-12 * amax) {
      if (row[i] < 0.0)
        for (std::size_t k = 0; k < n; ++k) row[k] = -row[k];
      return;
    }
  }
}

}  // namespace

SymEigen sym_eigen(const SymMatrix& m) {
  const std::size_t n = m.dim();
  JacobiResult jr = jacobi(m, true);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return jr.diag[a] < jr.diag[b];
  });

  SymEigen e;
  e.dim = n;
  e.values.resize(n);
  e.vectors.assign(n * n, 0.0);
  e.sweeps = jr.sweeps;
  e.off_norm = jr.off;
  std::vector<double> row(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t src = order[a];
    std::copy_n(&jr.wrows[src * n], n, row.data());
    fix_sign(row.data(), n);
    e.values[a] = jr.diag[src];
    for (std::size_t i = 0; i < n; ++i) e.vectors[i * n + a] = row[i];
  }
  return e;
}

std::vector<double> sym_eigenvalues(const SymMatrix& m) {
  JacobiResult jr = jacobi(m, false);
  std::sort(jr.diag.begin(), jr.diag.end());
  return jr.diag;
}

std::vector<double> herm_eigenvalues(const HermMatrix& m) {
  // Real embedding [[Re, -Im], [Im, Re]]; symmetric because Re is symmetric
  // and Im antisymmetric, with the spectrum of m doubled.
  const std::size_t n = m.dim();
  SymMatrix emb(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = m(i, j);
      emb.set(i, j, z.real());
      emb.set(n + i, n + j, z.real());
      emb.set(i, n + j, -z.imag());
    }

  std::vector<double> doubled = sym_eigenvalues(emb);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return out;
}

double pd_floor(const SymMatrix& m) { return 1e-12 * m.max_diag(); }

namespace {

template <typename F>
SymMatrix spectral_transform(const SymMatrix& m, F f, const char* opname) {
  const std::size_t n = m.dim();
  SymEigen e = sym_eigen(m);
  const double floor = pd_floor(m);
  if (e.values.front() <= floor) {
    std::ostringstream msg;
    msg << opname << ": matrix is not positive definite (min eigenvalue "
        << e.values.front() << " <= pd floor " << floor << ")";
    throw NotPositiveDefinite(e.values.front(), msg.str());
  }
  // B = V f(D) V^T: scale columns of V, then multiply by V^T.
  std::vector<double> scaled(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const double fa = f(e.values[a]);
    for (std::size_t i = 0; i < n; ++i)
      scaled[i * n + a] = fa * e.vectors[i * n + a];
  }
  std::vector<double> prod = mat_mul_nt(scaled, e.vectors, n);
  return symmetrize(prod, n);
}

}  // namespace

SymMatrix sym_sqrt(const SymMatrix& m) {
  return spectral_transform(m, [](double x) { return std::sqrt(x); },
                            "sym_sqrt");
}

SymMatrix sym_inv_sqrt(const SymMatrix& m) {
  return spectral_transform(m, [](double x) { return 1.0 / std::sqrt(x); },
                            "sym_inv_sqrt");
}

SymMatrix sym_inverse(const SymMatrix& m) {
  return spectral_transform(m, [](double x) { return 1.0 / x; }, "sym_inverse");
}

std::vector<double> mat_mul(std::span<const double> a, std::span<const double> b,
                            std::size_t n) {
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      kern::axpy(a[i * n + k], &b[k * n], &c[i * n], n);
  return c;
}

std::vector<double> mat_mul_nt(std::span<const double> a,
                               std::span<const double> b, std::size_t n) {
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = kern::dot(&a[i * n], &b[j * n], n);
  return c;
}

SymMatrix symmetrize(std::span<const double> a, std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, a[i * n + i]);
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, 0.5 * (a[i * n + j] + a[j * n + i]));
  }
  return m;
}

}  // namespace entlab::matfun
