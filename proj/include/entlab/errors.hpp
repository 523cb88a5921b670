#pragma once

#include <stdexcept>
#include <string>

namespace entlab {

// Base for numerical failures raised by the library. The CLI maps these to
// exit code 2; argument misuse raises std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be positive definite had an eigenvalue at or below
// the pd floor. For chain couplings this is the numerical fingerprint of a
// zero mode; callers in the chain pipeline convert it to ZeroModePresent.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(double eigenvalue, const std::string& what)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// A chain Hamiltonian has a vanishing normal-mode frequency; the ground
// state covariance (and hence the entropy) is formally infinite.
class ZeroModePresent : public Error {
 public:
  ZeroModePresent(double vanishing_eigenvalue, const std::string& what)
      : Error(what), vanishing_(vanishing_eigenvalue) {}
  double vanishing_eigenvalue() const noexcept { return vanishing_; }

 private:
  double vanishing_;
};

// The closed-form symplectic eigenvalue blows up: a difference coupling has
// collapsed while the numerator stays finite. Carries the data describing
// the blow-up rate.
class DivergentEigenvalue : public Error {
 public:
  DivergentEigenvalue(double mu_minus, double numerator,
                      const std::string& what)
      : Error(what), mu_minus_(mu_minus), numerator_(numerator) {}
  double mu_minus() const noexcept { return mu_minus_; }
  double numerator() const noexcept { return numerator_; }

 private:
  double mu_minus_;
  double numerator_;
};

class UnboundedHamiltonian : public Error {
 public:
  using Error::Error;
};

// A Bloch mode with omega = 0 (massless chain at sin(ka) = 0); the
// half-integer momentum grid never produces one.
class DegenerateMode : public Error {
 public:
  using Error::Error;
};

// A degeneracy path whose kinetic/potential decay-rate ratio is not
// monotone; it lies outside the classifiable family.
class InconclusivePath : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, const std::string& what)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Two independent computation routes that must agree disagreed beyond
// tolerance.
class ConsistencyError : public Error {
 public:
  ConsistencyError(double deviation, const std::string& what)
      : Error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

}  // namespace entlab
