#include "entlab/kern.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace entlab::kern {

namespace detail {

bool cpu_has_avx2() noexcept {
#if defined(ENTLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops* pick_default() noexcept {
  if (const char* env = std::getenv("ENTLAB_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops;
#ifdef ENTLAB_HAVE_AVX2
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return &avx2_ops;
#endif
  }
#ifdef ENTLAB_HAVE_AVX2
  if (cpu_has_avx2()) return &avx2_ops;
#endif
  return &scalar_ops;
}

std::atomic<const Ops*> g_ops{nullptr};

const Ops* ops() noexcept {
  const Ops* p = g_ops.load(std::memory_order_acquire);
  if (!p) {
    p = pick_default();
    g_ops.store(p, std::memory_order_release);
  }
  return p;
}

}  // namespace
}  // namespace detail

Isa active_isa() noexcept {
#ifdef ENTLAB_HAVE_AVX2
  if (detail::ops() == &detail::avx2_ops) return Isa::Avx2;
#endif
  detail::ops();
  return Isa::Scalar;
}

bool set_isa(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      detail::g_ops.store(&detail::scalar_ops, std::memory_order_release);
      return true;
    case Isa::Avx2:
#ifdef ENTLAB_HAVE_AVX2
      if (detail::cpu_has_avx2()) {
        detail::g_ops.store(&detail::avx2_ops, std::memory_order_release);
        return true;
      }
#endif
      return false;
  }
  return false;
}

const char* isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  return detail::ops()->dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  detail::ops()->axpy(a, x, y, n);
}

void rotate_pair(double* x, double* y, double c, double s,
                 std::size_t n) noexcept {
  detail::ops()->rotate_pair(x, y, c, s, n);
}

void phasor_mul(double* re, double* im, const double* sre, const double* sim,
                std::size_t n) noexcept {
  detail::ops()->phasor_mul(re, im, sre, sim, n);
}

}  // namespace entlab::kern
