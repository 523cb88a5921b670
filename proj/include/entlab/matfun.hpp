#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "entlab/errors.hpp"

// Self-contained dense kernels for real-symmetric and complex-Hermitian
// matrices. Everything here is a pure function on immutable inputs; the
// eigensolver is a cyclic Jacobi iteration (sweep cap 100) with Hermitian
// problems handled through the 2n x 2n real embedding. No external linear
// algebra dependency; accuracy is ample for the dimensions this project
// touches (dim <= ~500).

namespace entlab::matfun {

using cplx = std::complex<double>;

// Real symmetric matrix, dense row-major. Mutation goes through set()/add(),
// which write both (i,j) and (j,i), so stored entries are mirror-equal
// exactly.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);
  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> d);
  // Validates exact mirror symmetry of the given row-major entries.
  static SymMatrix from_rowmajor(std::size_t dim, std::span<const double> a);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * dim_ + j];
  }
  void set(std::size_t i, std::size_t j, double v);
  void add(std::size_t i, std::size_t j, double v);

  const std::vector<double>& raw() const noexcept { return a_; }
  double max_abs() const noexcept;
  double max_diag() const noexcept;
  double frobenius() const noexcept;

 private:
  std::size_t dim_;
  std::vector<double> a_;
};

// Complex Hermitian matrix, dense row-major. Construction verifies
// Hermiticity to 1e-14 (relative to the largest magnitude) and then stores
// the exactly hermitized entries; diagonal imaginary parts are exactly zero.
class HermMatrix {
 public:
  explicit HermMatrix(std::size_t dim);
  static HermMatrix from_rowmajor(std::size_t dim, std::span<const cplx> a);

  std::size_t dim() const noexcept { return dim_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return a_[i * dim_ + j];
  }
  void set(std::size_t i, std::size_t j, cplx v);

  const std::vector<cplx>& raw() const noexcept { return a_; }
  double max_abs() const noexcept;

 private:
  std::size_t dim_;
  std::vector<cplx> a_;
};

struct SymEigen {
  std::size_t dim = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major; column a is eigenvector a
  int sweeps = 0;
  double off_norm = 0.0;

  double vec(std::size_t i, std::size_t a) const {
    return vectors[i * dim + a];
  }
};

// Full symmetric eigendecomposition, M = V diag(values) V^T. Eigenvalues
// ascend; each eigenvector is normalized with its first non-negligible
// component positive so outputs are reproducible.
SymEigen sym_eigen(const SymMatrix& m);

// Eigenvalues only (skips the accumulation of V).
std::vector<double> sym_eigenvalues(const SymMatrix& m);

// Eigenvalues of a Hermitian matrix, ascending, via the real embedding
// [[Re, -Im], [Im, Re]] whose spectrum is that of M doubled.
std::vector<double> herm_eigenvalues(const HermMatrix& m);

// pd floor below which a nominally positive matrix is treated as singular:
// 1e-12 * (max diagonal entry). Callers translate the failure into a
// zero-mode verdict instead of regularizing.
double pd_floor(const SymMatrix& m);

SymMatrix sym_sqrt(const SymMatrix& m);
SymMatrix sym_inv_sqrt(const SymMatrix& m);
SymMatrix sym_inverse(const SymMatrix& m);

// Complete elliptic integrals in the parameter convention,
//   F(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt,
//   E(m) = int_0^{pi/2} (1 - m sin^2 t)^{+1/2} dt,
// valid for m < 1 (negative m handled by the imaginary-modulus reduction).
struct EllipticFE {
  double F;
  double E;
};
EllipticFE elliptic_fe(double m_param);

// Dense square helpers (row-major, size n x n).
std::vector<double> mat_mul(std::span<const double> a, std::span<const double> b,
                            std::size_t n);  // A * B
std::vector<double> mat_mul_nt(std::span<const double> a,
                               std::span<const double> b,
                               std::size_t n);  // A * B^T

// Exactly symmetrizes a nearly-symmetric product (copies the upper triangle
// into the lower one after averaging mirror entries).
SymMatrix symmetrize(std::span<const double> a, std::size_t n);

}  // namespace entlab::matfun
