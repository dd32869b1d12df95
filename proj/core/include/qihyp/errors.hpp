// Copyright 2026 The Qihyp Authors.
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

#ifndef QIHYP_ERRORS_HPP
#define QIHYP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qihyp {

/// Invalid argument values, malformed inputs, violated type invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation hit a configured resource ceiling. The message names the
/// ceiling that was breached.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric deduplication could not decide whether two group elements are
/// equal; the message names the colliding witnesses.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampled function violated the preconditions of an estimator at the
/// evaluation point (e.g. a zero quasisymmetry denominator).
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Free-pair construction failed: degenerate eigenvector pairing, an
/// identity collision among checked words, or an exhausted search budget.
class FreePairError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quasiaction family is missing a map required by a composition case.
class IncompleteFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qihyp

#endif  // QIHYP_ERRORS_HPP
