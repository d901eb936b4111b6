// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rlforge {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or mismatched dimensions between data and config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data violates a documented invariant (bad label map, unknown class).
class DataError : public Error {
 public:
  using Error::Error;
};

// Degenerate geometry: singular homography, ray not hitting the ground, ...
class GeometryError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A required upstream input is absent.
class MissingInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace rlforge
