#include "entlab/kern.hpp"

namespace entlab::kern::detail {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rotate_pair_scalar(double* x, double* y, double c, double s,
                        std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void phasor_mul_scalar(double* re, double* im, const double* sre,
                       const double* sim, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = re[i];
    const double m = im[i];
    re[i] = r * sre[i] - m * sim[i];
    im[i] = r * sim[i] + m * sre[i];
  }
}

}  // namespace

const Ops scalar_ops = {dot_scalar, axpy_scalar, rotate_pair_scalar,
                        phasor_mul_scalar};

}  // namespace entlab::kern::detail
