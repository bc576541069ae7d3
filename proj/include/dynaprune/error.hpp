// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dynaprune {

// Base class for all library errors. CLI maps these to nonzero exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (bad JSON line, bad WAV header, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a contract (duplicate id,
// fractions not summing to 1, unknown policy name, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Unsupported on-disk format (non-PCM WAV, stereo, truncated file).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Out-of-domain argument to an operation (L > T, dst_rate <= 0, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Operation invoked in an invalid state (Static cache missing at epoch > 0).
class StateError : public Error {
 public:
  using Error::Error;
};

// Training aborted (non-finite loss or gradient).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dynaprune
