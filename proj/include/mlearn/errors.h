// Copyright 2026 The mlearn Authors
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

#ifndef MLEARN_ERRORS_H
#define MLEARN_ERRORS_H

#include <stdexcept>
#include <string>

namespace mlearn {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A dimension argument was zero or otherwise outside the allowed range.
struct InvalidDimension : Error {
    using Error::Error;
};

/// Operands or inputs have incompatible shapes.
struct ShapeError : Error {
    using Error::Error;
};

/// Matrix inversion or solve was asked of a (numerically) singular matrix.
struct SingularMatrix : Error {
    using Error::Error;
};

/// A value violates the invariants of the type it was meant to become.
struct InvariantViolation : Error {
    using Error::Error;
};

/// A scalar parameter (query count, repetitions, target) is out of range.
struct InvalidParameter : Error {
    using Error::Error;
};

/// Protocols are undefined when d = 1 since both hypotheses coincide.
struct DegenerateDimension : Error {
    using Error::Error;
};

/// The requested (device kind, backend, input) combination has no implementation.
struct Unsupported : Error {
    using Error::Error;
};

/// The device does not grant the access a protocol needs (or grants too much).
struct AccessError : Error {
    using Error::Error;
};

/// A randomized split left one branch without samples.
struct InsufficientSubsample : Error {
    using Error::Error;
};

/// An exact or dense computation would exceed its size cap.
struct ResourceError : Error {
    using Error::Error;
};

/// Arguments are outside the domain where a bound or identity is claimed.
struct DomainError : Error {
    using Error::Error;
};

/// A minimal-query search ran past its cap without reaching the target.
struct SearchFailure : Error {
    using Error::Error;
};

/// A configuration or command line names something that does not exist.
struct UsageError : Error {
    using Error::Error;
};

/// Reading or writing an experiment artifact failed, or it did not parse.
struct IoError : Error {
    using Error::Error;
};

}  // namespace mlearn

#endif
