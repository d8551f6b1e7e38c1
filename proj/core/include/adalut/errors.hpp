// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace adalut {

/// Root of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A LUT or lattice size below the minimum of 2.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

/// Mismatched image dimensions, channel counts or sample types.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Filesystem and decoding failures. The CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed container or text file (parent of the container-specific errors).
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

class BadMagicError : public FormatError {
 public:
  using FormatError::FormatError;
};

class VersionMismatchError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedDataError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Model-level failures (exit code 3 in the CLI).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Tensor shape does not agree with the bundle hyper-parameters.
class ShapeMismatchError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// NaN or infinity produced during inference; usually corrupted weights.
class NonFiniteError : public ModelError {
 public:
  using ModelError::ModelError;
};

}  // namespace adalut
