#include <cmath>
#include <numbers>
#include <sstream>

#include "entlab/matfun.hpp"

namespace entlab::matfun {

namespace {

// AGM evaluation on the standard domain m in [0, 1). F = pi/(2 agm),
// E = F * (1 - sum_n 2^{n-1} c_n^2) with c_0^2 = m.
EllipticFE elliptic_fe_std(double m) {
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double csum = 0.5 * m;  // 2^{-1} c_0^2
  double pow2 = 1.0;      // 2^{n-1} at n = 1
  for (int it = 0; it < 64; ++it) {
    const double c = 0.5 * (a - b);
    csum += pow2 * c * c;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    if (std::abs(c) <= 1e-17 * a) break;
  }
  const double F = std::numbers::pi / (2.0 * a);
  return {F, F * (1.0 - csum)};
}

}  // namespace

EllipticFE elliptic_fe(double m_param) {
  if (!(m_param < 1.0)) {
    std::ostringstream msg;
    msg << "elliptic_fe: parameter must be < 1, got " << m_param;
    throw DomainError(msg.str());
  }
  if (m_param == 0.0) {
    const double h = std::numbers::pi / 2.0;
    return {h, h};
  }
  if (m_param < 0.0) {
    // Imaginary-modulus reduction: F(m) = F(m')/sqrt(1-m),
    // E(m) = E(m')*sqrt(1-m) with m' = m/(m-1) in (0,1).
    const double mp = m_param / (m_param - 1.0);
    const EllipticFE fe = elliptic_fe_std(mp);
    const double s = std::sqrt(1.0 - m_param);
    return {fe.F / s, fe.E * s};
  }
  return elliptic_fe_std(m_param);
}

}  // namespace entlab::matfun
