#pragma once

#include <stdexcept>
#include <string>

namespace ssc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad configuration: invalid parameters, scheme/branch mismatches, bad CLI input.
struct ConfigError : Error {
  using Error::Error;
};

/// Bad or missing input data: files, datasets, caches.
struct DataError : Error {
  using Error::Error;
};

/// Malformed file contents (WAV header, cache magic, ...).
struct FormatError : DataError {
  using DataError::DataError;
};

/// File is syntactically valid but uses a codec/layout we do not handle.
struct UnsupportedFormatError : DataError {
  using DataError::DataError;
};

/// File ends before its declared payload does.
struct TruncationError : DataError {
  using DataError::DataError;
};

/// Dataset layout could not be turned into a manifest.
struct ManifestError : DataError {
  using DataError::DataError;
};

/// Tensor/matrix dimensions do not line up.
struct ShapeError : Error {
  using Error::Error;
};

/// Non-finite values or other numeric breakdown.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace ssc
