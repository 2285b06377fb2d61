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

#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qspace/label.hpp"
#include "qspace/matrix.hpp"

namespace qspace {

// Per-classical-value choice, with an optional entry for values not listed.
template <class T>
struct Table {
  std::map<OutcomeLabel, T> entries;
  std::optional<T> fallback;

  const T* find(const OutcomeLabel& k) const {
    auto it = entries.find(k);
    if (it != entries.end()) return &it->second;
    return fallback ? &*fallback : nullptr;
  }
  friend bool operator==(const Table&, const Table&) = default;
};

// 2^m x 2^m unitary on all slots, slot 0 being the most significant bit.
struct UnitaryStep {
  Table<ComplexMatrix> table;
  friend bool operator==(const UnitaryStep&, const UnitaryStep&) = default;
};

// Measures the listed slots (their bits appended to the label in list
// order) and leaves them in |0>.
struct MeasureStep {
  Table<std::vector<int>> slots;
  friend bool operator==(const MeasureStep&, const MeasureStep&) = default;
};

// Measure and forget.
struct ResetStep {
  Table<std::vector<int>> slots;
  friend bool operator==(const ResetStep&, const ResetStep&) = default;
};

struct ClassicalStep {
  Table<OutcomeLabel> table;
  friend bool operator==(const ClassicalStep&, const ClassicalStep&) = default;
};

// Measures the slots (bits appended to the label) and puts input qubit
// inputs[i] into slots[i]. The inputs are fixed; the slots may depend on the
// classical value.
struct LoadStep {
  Table<std::vector<int>> slots;
  std::vector<int> inputs;
  friend bool operator==(const LoadStep&, const LoadStep&) = default;
};

using Step = std::variant<UnitaryStep, MeasureStep, ResetStep, ClassicalStep, LoadStep>;

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * m slots, 0-based. Inputs are 0-based too. Inputs never named by a load are
 * present from the start, in ascending order, in slots m - p .. m - 1. The
 * output is held by the last n_out slots; the others are traced out.
 */
struct Circuit {
  int m = 0;
  int n_in = 0;
  int n_out = 0;
  std::vector<Step> steps;

  std::vector<int> preloaded_inputs() const;
  // Inputs named by loads, in step order.
  std::vector<int> load_order() const;
  int load_count() const;
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Static well-formedness: slot ranges, matrix shapes, single loads, budget.
// Throws CircuitError.
void check_circuit(const Circuit& c);

/**
 * Peak number of live slots. Preloaded slots start live, a unitary makes
 * every slot live, measure and reset free their slots, a load makes its slots
 * live, and the output slots are live at the end. Where a table varies with
 * the classical value, measured slots are freed only if every entry frees them
 * and loaded slots are live if any entry loads them.
 */
int audit_width(const Circuit& c);

}  // namespace qspace
