#pragma once

#include <stdexcept>
#include <string>

namespace cmcflow {

// Base for all domain errors so callers can catch the whole family.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChartViolation : Error {
  using Error::Error;
};

struct QuadratureUnderResolved : Error {
  using Error::Error;
};

struct NonPositiveRadius : Error {
  using Error::Error;
};

struct GraphConditionViolated : Error {
  using Error::Error;
};

struct InnerSphereNotEnclosed : Error {
  using Error::Error;
};

struct UnsupportedOrder : Error {
  using Error::Error;
};

struct CurvatureHypothesisViolated : Error {
  using Error::Error;
};

struct BasisTooLarge : Error {
  using Error::Error;
};

struct EigensolverFailure : Error {
  using Error::Error;
};

struct VolumeSolveFailure : Error {
  using Error::Error;
};

struct InsufficientHistory : Error {
  using Error::Error;
};

struct DegenerateFit : Error {
  using Error::Error;
};

struct CommonGraphFailure : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace cmcflow
