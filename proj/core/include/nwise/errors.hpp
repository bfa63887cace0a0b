// Copyright 2026 The nwise Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace nwise {

/// Base of every error thrown by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept = 0;
};

/// Caller violated a precondition (bad index, length mismatch, ...).
class UsageError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "usage"; }
};

/// Requested a dense object larger than the dense cap.
class CapacityError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "capacity"; }
};

/// Argument outside the domain of a function (e.g. tabulated range).
class DomainError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "domain"; }
};

/// Scenario document is malformed or violates an invariant.
class ParseError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "parse"; }
};

/// A numerical tolerance was breached (norm drift, trace loss, ...).
class NumericalError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "numerical"; }
};

class IoError : public Error {
  public:
    using Error::Error;
    const char *kind() const noexcept override { return "io"; }
};

} // namespace nwise
