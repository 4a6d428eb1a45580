// Copyright 2026 The qdec Authors
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

#ifndef QDEC_ERRORS_HPP
#define QDEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Subsystem labels or dimensions do not fit together.
class LayoutError : public Error {
 public:
  explicit LayoutError(const std::string& what) : Error("layout error: " + what) {}
};

/// An input lies outside the mathematical domain of an operation
/// (non-Hermitian where Hermitian is required, negative eigenvalues, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

/// A problem exceeds one of the dense size guards.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error("size error: " + what) {}
};

/// A user-supplied parameter is invalid (trial counts, epsilons, ...).
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error("parameter error: " + what) {}
};

/// A numerical routine failed to reach its tolerance.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error("numeric error: " + what) {}
};

}  // namespace qdec

#endif  // QDEC_ERRORS_HPP
