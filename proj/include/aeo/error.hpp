/*
 * Copyright 2026 The AEO Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace aeo {

// Bad input: wrong dimension, out-of-range coordinate, invalid config value.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Covariance not positive definite, non-finite objective, and similar.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation attempted in the wrong campaign status.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Request does not match what the campaign is waiting for (wrong point,
// unknown comparison, stale iteration).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedSpaceError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class RankError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace aeo
