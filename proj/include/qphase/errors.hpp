#pragma once

#include <stdexcept>
#include <string>

namespace qphase {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Amplitude vector plus residual does not sum to unit probability.
struct NormalizationError : Error {
  using Error::Error;
};

/// Non-finite (NaN/inf) amplitude entry.
struct InvalidAmplitude : Error {
  using Error::Error;
};

/// Operator order incompatible with the requested operation.
struct DimensionError : Error {
  using Error::Error;
};

/// State-family parameter outside its accepted range.
struct ParamError : Error {
  using Error::Error;
};

/// Truncation would exceed the configured hard cap on basis size.
struct TruncationError : Error {
  using Error::Error;
};

/// Parameters passed range checks but produced an invalid weight set.
struct DomainError : Error {
  using Error::Error;
};

/// Mean field <a> vanishes; Barnett-Pegg phase quantities are undefined.
struct PhaseUndefined : Error {
  using Error::Error;
};

/// Malformed sweep configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// Figure preset id outside 1..5.
struct UnknownFigure : Error {
  using Error::Error;
};

/// Output file could not be opened or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace qphase
