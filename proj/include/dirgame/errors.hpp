// Copyright 2026 The dirgame Authors
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

#ifndef DIRGAME_ERRORS_HPP_
#define DIRGAME_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dirgame {

enum class ErrorKind {
  kSpec,        // invalid specification or configuration
  kDomain,      // argument outside the mathematical domain of an operation
  kStructural,  // graph/strategy does not satisfy the structural contract
  kResource,    // a configured budget was exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& what) : Error(ErrorKind::kSpec, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what)
      : Error(ErrorKind::kStructural, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorKind::kResource, what) {}
};

}  // namespace dirgame

#endif  // DIRGAME_ERRORS_HPP_
