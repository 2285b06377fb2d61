// Copyright 2026 The qspace Authors
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

#include <cstddef>
#include <vector>

#include "qspace/circuit.hpp"
#include "qspace/instruments.hpp"

namespace qspace {

// Kraus operators below this Frobenius norm are dropped after every step.
inline constexpr double kPruneThreshold = 1e-12;

struct SimOptions {
  bool parallel = true;  // branches in parallel; false is the serial reference
  double prune = kPruneThreshold;
};

struct RunResult {
  Instrument instrument;
  int peak_width = 0;
  std::vector<std::size_t> branch_count_trace;  // live branches after each step
};

/**
 * Exact execution. Every branch keeps Kraus operators from the loaded
 * inputs (columns, in load order) to the m slots (rows), so unloaded inputs
 * are never materialized. Throws CircuitError on a missing table entry or a
 * malformed circuit.
 */
RunResult run(const Circuit& c, const SimOptions& options = {});

}  // namespace qspace
