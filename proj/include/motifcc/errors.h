// Copyright 2026 The motifcc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOTIFCC_ERRORS_H_
#define MOTIFCC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace motifcc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

class InvalidVertexError : public Error {
 public:
  using Error::Error;
};

// Raised when a cluster list does not form a partition. `vertex()` names the
// first offending vertex (overlapping or missing).
class MalformedPartitionError : public Error {
 public:
  enum class Kind { kOverlap, kCoverage, kOutOfRange };

  MalformedPartitionError(Kind kind, int vertex, const std::string& what)
      : Error(what), kind_(kind), vertex_(vertex) {}

  Kind kind() const { return kind_; }
  int vertex() const { return vertex_; }

 private:
  Kind kind_;
  int vertex_;
};

class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// A rounded partition exceeded its proven approximation bound. The guarantees
// are unconditional, so this always points at a bug.
class CertificateViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace motifcc

#endif  // MOTIFCC_ERRORS_H_
