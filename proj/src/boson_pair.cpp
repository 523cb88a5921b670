#include <algorithm>
#include <cmath>
#include <sstream>

#include "entlab/boson_pair.hpp"

namespace entlab::bosonpair {

namespace {

constexpr double kZeroTolFactor = 1e-10;  // zero_tol = 1e-10 * mu_plus
constexpr double kRatioTol = 1e3;
constexpr double kWidthCap = 1e6;

void check_tau(double tau, bool open_end) {
  if (!(tau >= 0.0) || !(open_end ? tau < 1.0 : tau <= 1.0))
    throw std::invalid_argument("tau outside the path parameter range");
}

}  // namespace

PairCouplings::PairCouplings(double j_, double k_, double l_, double m_)
    : j(j_), k(k_), l(l_), m(m_) {
  if (!(j > k) || !(k >= 0.0) || !(l > m) || !(m >= 0.0) ||
      !std::isfinite(j) || !std::isfinite(l)) {
    std::ostringstream msg;
    msg << "PairCouplings: positivity requires j > k >= 0 and l > m >= 0, got "
        << "(" << j_ << ", " << k_ << ", " << l_ << ", " << m_ << ")";
    throw std::invalid_argument(msg.str());
  }
}

ModeFrequenciesSquared mode_frequencies_squared(const PairCouplings& c) {
  ModeFrequenciesSquared f;
  f.mu_plus = (c.j + c.k) * (c.l + c.m);
  f.mu_minus = (c.j - c.k) * (c.l - c.m);
  f.zero_mode = f.mu_minus < kZeroTolFactor * f.mu_plus;
  return f;
}

namespace {

// alpha from the difference couplings (dj = j-k, dl = l-m) together with
// (k, m). The numerator jl - km = k dl + m dj + dj dl is evaluated in that
// cancellation-free form, which keeps alpha accurate arbitrarily close to a
// degenerate point.
double alpha_from_differences(double k, double m, double dj, double dl) {
  const double num = k * dl + m * dj + dj * dl;
  const double sum_j = 2.0 * k + dj;  // j + k
  const double sum_l = 2.0 * m + dl;  // l + m
  const double mu_plus = sum_j * sum_l;
  const double mu_minus = dj * dl;
  const double scale = 2.0 * k * m + k * dl + m * dj + dj * dl;  // jl + km
  if (mu_minus < kZeroTolFactor * mu_plus && num > 0.01 * scale) {
    std::ostringstream msg;
    msg << "symplectic_eigenvalue: difference coupling collapsed (mu_- = "
        << mu_minus << ") with non-vanishing numerator " << num
        << "; alpha grows like num / (8 mu_-)^{1/2}";
    throw DivergentEigenvalue(mu_minus, num, msg.str());
  }
  const double den = std::sqrt(dj * sum_j) * std::sqrt(dl * sum_l);
  const double ratio = num / den;
  return 0.5 * std::sqrt(0.5 * (ratio + 1.0));
}

}  // namespace

double symplectic_eigenvalue(const PairCouplings& c) {
  return alpha_from_differences(c.k, c.m, c.j - c.k, c.l - c.m);
}

double entropy_from_alpha(double alpha) {
  if (alpha < 0.5 - 1e-12) {
    std::ostringstream msg;
    msg << "entropy_from_alpha: alpha = " << alpha
        << " < 1/2 violates the uncertainty bound";
    throw DomainError(msg.str());
  }
  const double x = alpha - 0.5;
  const double plus = (alpha + 0.5) * std::log(alpha + 0.5);
  const double minus = x > 0.0 ? x * std::log(x) : 0.0;
  return std::max(0.0, plus - minus);
}

double pair_entropy(const PairCouplings& c) {
  return entropy_from_alpha(symplectic_eigenvalue(c));
}

DegeneracyPath::DegeneracyPath(PairCouplings base_, PathKind kind_)
    : base(base_), kind(kind_) {
  switch (kind) {
    case PathKind::I:
      p_j = 2.0;
      p_l = 1.0;
      break;
    case PathKind::II:
      p_j = 1.0;
      p_l = 1.0;
      break;
    case PathKind::III:
      p_j = 1.0;
      p_l = 2.0;
      break;
    case PathKind::Custom:
      throw std::invalid_argument(
          "DegeneracyPath: Custom paths need explicit exponents");
  }
}

DegeneracyPath::DegeneracyPath(PairCouplings base_, double p_j_, double p_l_)
    : base(base_), kind(PathKind::Custom), p_j(p_j_), p_l(p_l_) {
  if (!(p_j >= 1.0) || !(p_l >= 1.0))
    throw std::invalid_argument("DegeneracyPath: exponents must be >= 1");
}

PathPoint path_point(const DegeneracyPath& p, double tau) {
  check_tau(tau, false);
  const double u = 1.0 - tau;
  return {p.base.k + (p.base.j - p.base.k) * std::pow(u, p.p_j),
          p.base.m + (p.base.l - p.base.m) * std::pow(u, p.p_l)};
}

PairCouplings couplings_at(const DegeneracyPath& p, double tau) {
  check_tau(tau, true);
  const PathPoint pt = path_point(p, tau);
  return PairCouplings(pt.j, p.base.k, pt.l, p.base.m);
}

namespace detail {

LimitClass classify_ratio_sequence(std::span<const double> r,
                                   double ratio_tol) {
  bool nondec = true;
  bool noninc = true;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double slack = 1e-9 * std::max(std::abs(r[i]), std::abs(r[i - 1]));
    if (r[i] < r[i - 1] - slack) nondec = false;
    if (r[i] > r[i - 1] + slack) noninc = false;
  }
  if (!nondec && !noninc)
    throw InconclusivePath(
        "classify_limit: decay-rate ratio is not monotone along the path");
  const double last = r.back();
  if (last > ratio_tol) return LimitClass::XSquared;
  if (last < 1.0 / ratio_tol) return LimitClass::FreeParticle;
  return LimitClass::Harmonic;
}

}  // namespace detail

namespace {

struct PathDeltas {
  double dj;  // j(tau) - k0 = (j0 - k0) (1-tau)^pj, kept in exact form
  double dl;  // l(tau) - m0
};

PathDeltas path_deltas(const DegeneracyPath& p, double tau) {
  const double u = 1.0 - tau;
  return {(p.base.j - p.base.k) * std::pow(u, p.p_j),
          (p.base.l - p.base.m) * std::pow(u, p.p_l)};
}

double rate_ratio(const DegeneracyPath& p, double tau) {
  const PathDeltas d = path_deltas(p, tau);
  return (d.dj / d.dl) * ((p.base.l - p.base.m) / (p.base.j - p.base.k));
}

}  // namespace

double symplectic_eigenvalue_at(const DegeneracyPath& p, double tau) {
  check_tau(tau, true);
  const PathDeltas d = path_deltas(p, tau);
  return alpha_from_differences(p.base.k, p.base.m, d.dj, d.dl);
}

double pair_entropy_at(const DegeneracyPath& p, double tau) {
  return entropy_from_alpha(symplectic_eigenvalue_at(p, tau));
}

OmegaMinus omega_minus(const DegeneracyPath& p, double tau) {
  check_tau(tau, false);
  const PathDeltas d = path_deltas(p, tau);
  OmegaMinus w;
  w.raw = std::sqrt(d.dj * d.dl);
  // Amplitude of H_- read off the kinetic coefficient relative to its base
  // value; dividing it out leaves the genuine frequency content.
  w.stripped = d.dl > 0.0 ? w.raw * (p.base.l - p.base.m) / d.dl : 0.0;
  return w;
}

double ground_width(const DegeneracyPath& p, double tau) {
  check_tau(tau, true);
  const PathDeltas d = path_deltas(p, tau);
  return 0.5 * std::sqrt(d.dl / d.dj);
}

DivergenceVerdict classify_limit(const DegeneracyPath& p) {
  const double taus[] = {1.0 - 1e-2, 1.0 - 1e-4, 1.0 - 1e-6, 1.0 - 1e-8};
  double r[4];
  for (int i = 0; i < 4; ++i) r[i] = rate_ratio(p, taus[i]);
  const LimitClass cls = detail::classify_ratio_sequence(r, kRatioTol);

  DivergenceVerdict v;
  v.limit_class = cls;
  v.entropy_diverges = cls != LimitClass::Harmonic;
  v.tower_collapses = v.entropy_diverges;
  v.omega_minus_limit = omega_minus(p, 1.0 - 1e-8).stripped;

  // The x width narrows on an XSquared path while the conjugate p width
  // blows up; <x^2><p^2> = 1/4 for the pure mode, so boundedness is judged
  // symmetrically against the cap in both directions, and divergence is
  // detected from the trend between tau = 1-1e-4 and 1-1e-8.
  const double w0 = ground_width(p, 0.0);
  const double w_mid = ground_width(p, 1.0 - 1e-4);
  const double w_end = ground_width(p, 1.0 - 1e-8);
  const double trend = w_end / w_mid;
  v.width_bounded = trend < 3.0 && trend > 1.0 / 3.0 &&
                    w_end < kWidthCap * w0 && w_end > w0 / kWidthCap;
  return v;
}

double product_state_check(double lambda) {
  if (lambda >= 1.0) {
    std::ostringstream msg;
    msg << "product_state_check: the pair Hamiltonian is bounded below only "
           "for lambda <= 1 and loses its unique ground state at lambda = 1 "
           "(got "
        << lambda << ")";
    throw UnboundedHamiltonian(msg.str());
  }
  if (lambda < 0.0)
    throw std::invalid_argument("product_state_check: lambda must be >= 0");
  const PairCouplings c(2.0, 2.0 * lambda, 2.0, 2.0 * lambda);
  return entropy_from_alpha(symplectic_eigenvalue(c));
}

}  // namespace entlab::bosonpair
