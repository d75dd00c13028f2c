#pragma once

#include <stdexcept>
#include <string>

namespace gcpid {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A patch or coordinate lies (partly) outside the image.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Image too small for the requested patch or window.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Fourier data violates the conjugate symmetry of a real tube.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Invalid DenoiseConfig or experiment description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File decoding or encoding failure; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcpid
