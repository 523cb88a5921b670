#pragma once

#include <cstddef>

// Dense-arithmetic kernels shared by the eigensolvers and the momentum-space
// correlation sums. A scalar reference implementation always exists; on
// x86-64 an AVX2/FMA variant is selected at runtime when the host supports
// it. The variants are equivalence-tested against each other in
// tests/test_kernels.cpp.
//
// TODO: NEON variants for aarch64; those hosts currently run the scalar path.

namespace entlab::kern {

enum class Isa { Scalar, Avx2 };

// Instruction set the kernels currently dispatch to.
Isa active_isa() noexcept;

// Select an instruction set explicitly (used by the equivalence tests).
// Returns false and leaves the selection unchanged if the host cannot run
// it. The ENTLAB_ISA environment variable ("scalar" or "avx2") overrides the
// default selection at startup.
bool set_isa(Isa isa) noexcept;

const char* isa_name(Isa isa) noexcept;

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n) noexcept;

// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;

// Plane rotation of two rows: (x, y) <- (c*x - s*y, s*x + c*y).
void rotate_pair(double* x, double* y, double c, double s,
                 std::size_t n) noexcept;

// Elementwise complex product: (re + i*im) *= (sre + i*sim).
void phasor_mul(double* re, double* im, const double* sre, const double* sim,
                std::size_t n) noexcept;

namespace detail {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  void (*rotate_pair)(double*, double*, double, double, std::size_t) noexcept;
  void (*phasor_mul)(double*, double*, const double*, const double*,
                     std::size_t) noexcept;
};

extern const Ops scalar_ops;
#ifdef ENTLAB_HAVE_AVX2
extern const Ops avx2_ops;
#endif

bool cpu_has_avx2() noexcept;

}  // namespace detail

}  // namespace entlab::kern
