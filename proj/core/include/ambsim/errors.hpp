// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ambsim Authors

#pragma once

#include <stdexcept>
#include <string>

namespace ambsim {

/// Front-end circuit with no finite solution (Gamma = -1, Za + Zc = 0).
class DegenerateCircuit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A frame, link or configuration inequality does not hold. The message
/// names the inequality and the offending values.
class ConditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An analytically guaranteed identity failed numerically.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ambsim
