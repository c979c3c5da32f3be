// Copyright 2026 The sympent Authors.
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

namespace sympent {

/// Base class for all typed errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension is odd, too small, or otherwise outside the supported range.
class BadDimension : public Error {
 public:
  using Error::Error;
};

/// Matrix operands have incompatible shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Parameters do not describe a positive semidefinite unit-trace operator.
class NotAState : public Error {
 public:
  using Error::Error;
};

/// A point handed to a tangent construction does not lie on the conic.
class PointNotOnConic : public Error {
 public:
  using Error::Error;
};

/// The tangent line at the given conic point is identically zero.
class SingularTangent : public Error {
 public:
  using Error::Error;
};

/// Lines through the origin have no pole with respect to the unit circle.
class LineThroughOrigin : public Error {
 public:
  using Error::Error;
};

/// The origin has no polar line with respect to the unit circle.
class OriginHasNoPolar : public Error {
 public:
  using Error::Error;
};

/// The conic is degenerate where a nondegenerate one is required.
class DegenerateConic : public Error {
 public:
  using Error::Error;
};

/// The requested region label is not defined for the given dimension.
class UnsupportedRegion : public Error {
 public:
  using Error::Error;
};

/// The supplied matrix is not a skew-symmetric unitary.
class NotSkewUnitary : public Error {
 public:
  using Error::Error;
};

/// The supplied matrix does not have unit trace.
class NotUnitTrace : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside the region a construction requires.
class ParamsOutsideRegion : public Error {
 public:
  using Error::Error;
};

/// The perturbation weight is too large to keep the state PPT.
class EpsTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace sympent
