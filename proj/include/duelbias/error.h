// Copyright 2026 The Duelbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUELBIAS_ERROR_H_
#define DUELBIAS_ERROR_H_

#include <stdexcept>
#include <string>

namespace duelbias {

// Broad error classes. The CLI maps kNumerical to exit code 3 and every
// other kind to exit code 2.
enum class ErrorKind {
  kDomain,       // argument outside an operation's domain
  kParse,        // malformed input text
  kValidation,   // well-formed input violating an invariant
  kReferential,  // reference to an unknown entity
  kNumerical,    // numerical failure (unstable bootstrap, degenerate fit)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorKind::kDomain, message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error(ErrorKind::kParse,
              line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

class ReferentialError : public Error {
 public:
  explicit ReferentialError(const std::string& message)
      : Error(ErrorKind::kReferential, message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorKind::kNumerical, message) {}
};

// Throws the subclass matching `kind` with `message`. ParseError loses its
// line number; callers fold it into the message first.
[[noreturn]] inline void ThrowError(ErrorKind kind, const std::string& message) {
  switch (kind) {
    case ErrorKind::kDomain:
      throw DomainError(message);
    case ErrorKind::kParse:
      throw ParseError(message, 0);
    case ErrorKind::kValidation:
      throw ValidationError(message);
    case ErrorKind::kReferential:
      throw ReferentialError(message);
    case ErrorKind::kNumerical:
      throw NumericalError(message);
  }
  throw Error(kind, message);
}

}  // namespace duelbias

#endif  // DUELBIAS_ERROR_H_
