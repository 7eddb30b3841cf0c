// Copyright 2026 The DRA Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dra {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// pdf requested for a family with atoms, or where the density vanishes.
class UndefinedDensityError : public Error {
 public:
  using Error::Error;
};

class NonRegularError : public Error {
 public:
  using Error::Error;
};

// Raised by operations that need a finite Myerson reserve.
class InfiniteReserveError : public Error {
 public:
  using Error::Error;
};

// A message that breaks the commit/reveal grammar, an unknown id in
// resolution, or a strategy used in the wrong communication mode.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

// A sender tried to use an id that is bound to another physical party.
class IdSpoofingError : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
};

class ModeMismatchError : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
};

// Numerical routine could not reach its requested accuracy.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dra
