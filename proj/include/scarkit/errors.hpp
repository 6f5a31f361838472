// Copyright 2026 The scarkit Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scarkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input data that violates a documented contract.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A computation would exceed its memory or lattice-point budget.
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// A bounded search gave up without a certificate.
class UnresolvedError : public Error {
  public:
    using Error::Error;
};

/// hbar too large for the requested ladder level to be representable.
class BelowConductorError : public Error {
  public:
    using Error::Error;
};

/// An internal cross-check failed.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// Spectral projection annihilated the state.
class EmptyProjectionError : public Error {
  public:
    using Error::Error;
};

/// Energy vector is not attained on the unit energy shell.
class NotInSigmaError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Text input could not be parsed; carries a 1-based location.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace scarkit
