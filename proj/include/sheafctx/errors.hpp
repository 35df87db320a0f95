// Copyright 2026 The sheafctx Authors
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

namespace sheafctx {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// An argument lies outside the domain of an operation (e.g. restricting to
/// labels the assignment does not define).
class DomainError : public Error {
   public:
    explicit DomainError(const std::string &what) : Error(what) {}
};

/// A documented precondition does not hold.
class PreconditionError : public Error {
   public:
    explicit PreconditionError(const std::string &what) : Error(what) {}
};

/// Outcome values outside Z2 reached a Z2-only operation.
class RingError : public Error {
   public:
    explicit RingError(const std::string &what) : Error(what) {}
};

/// A desk-scale cap was exceeded.
class SizeError : public Error {
   public:
    explicit SizeError(const std::string &what) : Error(what) {}
};

/// Malformed textual input (rationals, Pauli strings, JSON documents).
class ParseError : public Error {
   public:
    explicit ParseError(const std::string &what) : Error(what) {}
};

}  // namespace sheafctx
