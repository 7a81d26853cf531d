// Copyright 2026 The ecsmetro Authors
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

namespace ecs {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Mode counts, cutoffs or vector lengths that do not line up.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A superposition whose norm vanishes, e.g. |a> - |a>.
class DegenerateStateError : public Error {
   public:
    using Error::Error;
};

/// The force-probe after-state collapses to the zero vector (alpha = 0).
class DegenerateProbeError : public DegenerateStateError {
   public:
    using DegenerateStateError::DegenerateStateError;
};

/// An input violates an operation's precondition (unnormalized state, complex kappa, ...).
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// A scalar argument is outside its allowed domain.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Root finding target outside the searchable bracket.
class RangeError : public Error {
   public:
    using Error::Error;
};

/// Density matrix with a clearly negative eigenvalue.
class NotAStateError : public Error {
   public:
    using Error::Error;
};

}  // namespace ecs
