// Copyright 2026 The shotplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shotplan {

// Invalid arguments throw std::invalid_argument directly; the types below
// cover the remaining error classes that callers dispatch on (the CLI maps
// them to distinct exit codes).

/// Not enough measurement data or samples to produce a result.
class InsufficientData : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A shot budget too small to satisfy the requested plan.
class InfeasibleBudget : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An optimization run hit a non-finite objective value and was abandoned.
/// Carries the shots consumed up to the abort so accounting stays exact.
class RunAborted : public std::runtime_error {
  public:
    RunAborted(const std::string& what, std::int64_t shots_used)
        : std::runtime_error(what), shots_used(shots_used) {}

    std::int64_t shots_used;
};

}  // namespace shotplan
