// Copyright 2026 The blochur Authors.
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

#include <stdexcept>
#include <string>

namespace blochur {

/// Operands of incompatible dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix asymmetry beyond what round-off can explain.
class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A density matrix or Bloch vector that does not describe a physical state
/// (non-unit trace or a negative eigenvalue).
class UnphysicalState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called outside its domain: wrong Hilbert-space dimension
/// for a qubit-only relation, zero-norm vectors where angles are needed,
/// violated orthogonality preconditions and so on.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal consistency check failed (two routes to the same quantity disagree).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blochur
