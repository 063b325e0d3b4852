#pragma once

#include <stdexcept>
#include <string>

namespace mvcal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : Error {
  using Error::Error;
};

struct InvalidCorrelation : Error {
  using Error::Error;
};

struct DensityUnavailable : Error {
  using Error::Error;
};

struct SampleTooSmall : Error {
  using Error::Error;
};

struct NotGaussian : Error {
  using Error::Error;
};

struct Singular : Error {
  using Error::Error;
};

struct BandwidthTooLarge : Error {
  using Error::Error;
};

struct SingularCovariance : Error {
  using Error::Error;
};

struct Collinear : Error {
  using Error::Error;
};

struct UnknownLabel : Error {
  using Error::Error;
};

struct ExplosiveVar : Error {
  using Error::Error;
};

struct NonStationary : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace mvcal
