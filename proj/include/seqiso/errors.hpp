// Copyright 2026 The seqiso Authors
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

namespace seqiso {

/// Raised when an argument breaks a documented precondition (shape, isometry
/// residual, normalization, ...).
class ContractViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a factorization produces non-finite output.
class NumericFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when internal cross-checks disagree, e.g. synthesized step columns
/// that should be orthonormal are not.
class InternalInconsistency : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Raised for malformed operator, plan or state files; the message names the
/// offending line or field.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace seqiso
