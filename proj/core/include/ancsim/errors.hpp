#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ancsim {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameter, scenario document, or band.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A documented API precondition was violated by the caller.
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Adaptive weights (or a propagated sample) left the representable range.
/// Carries the step index and the last all-finite weight snapshot so a run
/// can be post-mortemed.
class DivergenceError : public Error {
public:
  DivergenceError(const std::string& what, std::size_t step,
                  std::vector<double> last_finite = {})
      : Error(what), step_(step), last_finite_(std::move(last_finite)) {}

  std::size_t step() const { return step_; }
  const std::vector<double>& last_finite_weights() const { return last_finite_; }

private:
  std::size_t step_;
  std::vector<double> last_finite_;
};

/// LMS identification or inverse-model training diverged.
class IdentificationError : public Error {
public:
  IdentificationError(const std::string& what, std::size_t iteration)
      : Error(what), iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

private:
  std::size_t iteration_;
};

/// The path admits no usable inverse (all-zero taps).
class NoInverseError : public Error {
public:
  using Error::Error;
};

/// A measurement frame carried no energy where some was required.
class DegenerateFrameError : public Error {
public:
  using Error::Error;
};

/// Not enough samples for the requested estimate.
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

/// Dense solve rejected; carries the condition-number estimate.
class SingularMatrixError : public Error {
public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : Error(what), condition_(condition_estimate) {}

  double condition_estimate() const { return condition_; }

private:
  double condition_;
};

/// Metric has no defined value for the given inputs.
class UndefinedMetricError : public Error {
public:
  using Error::Error;
};

/// Runs cannot be compared (mismatched noise, paths, or lengths).
class ComparabilityError : public Error {
public:
  using Error::Error;
};

/// Filesystem read/write failure; message names the path.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace ancsim
