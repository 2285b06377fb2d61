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

#include "qspace/circuit.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace qspace {

namespace {

template <class T, class F>
void for_each_entry(const Table<T>& t, F&& f) {
  for (const auto& [k, v] : t.entries) f(v);
  if (t.fallback) f(*t.fallback);
}

std::uint64_t slot_mask(const std::vector<int>& slots) {
  std::uint64_t m = 0;
  for (int s : slots) m |= std::uint64_t{1} << s;
  return m;
}

}  // namespace

std::vector<int> Circuit::load_order() const {
  std::vector<int> order;
  for (const auto& step : steps) {
    if (const auto* load = std::get_if<LoadStep>(&step)) {
      order.insert(order.end(), load->inputs.begin(), load->inputs.end());
    }
  }
  return order;
}

int Circuit::load_count() const {
  int count = 0;
  for (const auto& step : steps) count += std::holds_alternative<LoadStep>(step);
  return count;
}

std::vector<int> Circuit::preloaded_inputs() const {
  const std::vector<int> loaded = load_order();
  std::vector<int> pre;
  for (int j = 0; j < n_in; ++j) {
    if (std::find(loaded.begin(), loaded.end(), j) == loaded.end()) pre.push_back(j);
  }
  return pre;
}

void check_circuit(const Circuit& c) {
  if (c.m < 1 || c.m > 20) throw CircuitError("slot count m must be between 1 and 20");
  if (c.n_in < 0 || c.n_out < 0) throw CircuitError("negative qubit counts");
  if (c.n_out > c.m) {
    throw CircuitError("width budget exceeded: " + std::to_string(c.n_out) +
                       " output qubits on " + std::to_string(c.m) + " slots");
  }
  const std::vector<int> loaded = c.load_order();
  std::set<int> seen;
  for (int j : loaded) {
    if (j < 0 || j >= c.n_in) throw CircuitError("load names unknown input " + std::to_string(j));
    if (!seen.insert(j).second) throw CircuitError("input " + std::to_string(j) + " loaded twice");
  }
  const int p = c.n_in - static_cast<int>(loaded.size());
  if (p > c.m) {
    throw CircuitError("width budget exceeded: " + std::to_string(p) +
                       " inputs present from the start on " + std::to_string(c.m) + " slots");
  }
  const std::size_t dim = std::size_t{1} << c.m;
  auto check_slots = [&](const std::vector<int>& slots) {
    std::set<int> distinct;
    for (int s : slots) {
      if (s < 0 || s >= c.m) throw CircuitError("slot " + std::to_string(s) + " out of range");
      if (!distinct.insert(s).second) throw CircuitError("slot listed twice");
    }
  };
  for (const auto& step : c.steps) {
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      for_each_entry(u->table, [&](const ComplexMatrix& mat) {
        if (mat.rows() != dim || mat.cols() != dim) {
          throw CircuitError("unitary of shape " + std::to_string(mat.rows()) + "x" +
                             std::to_string(mat.cols()) + " on " + std::to_string(c.m) +
                             " slots");
        }
      });
    } else if (const auto* ms = std::get_if<MeasureStep>(&step)) {
      for_each_entry(ms->slots, check_slots);
    } else if (const auto* rs = std::get_if<ResetStep>(&step)) {
      for_each_entry(rs->slots, check_slots);
    } else if (const auto* ls = std::get_if<LoadStep>(&step)) {
      for_each_entry(ls->slots, [&](const std::vector<int>& slots) {
        check_slots(slots);
        if (slots.size() != ls->inputs.size()) {
          throw CircuitError("load slot count differs from its input count");
        }
      });
    }
  }
}

int audit_width(const Circuit& c) {
  const int p = static_cast<int>(c.preloaded_inputs().size());
  std::uint64_t live = 0;
  for (int s = c.m - p; s < c.m; ++s) live |= std::uint64_t{1} << s;
  int peak = std::popcount(live);
  for (const auto& step : c.steps) {
    if (std::holds_alternative<UnitaryStep>(step)) {
      live = (c.m == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << c.m) - 1;
    } else if (const auto* ms = std::get_if<MeasureStep>(&step)) {
      std::uint64_t freed = ~std::uint64_t{0};
      for_each_entry(ms->slots, [&](const std::vector<int>& s) { freed &= slot_mask(s); });
      if (ms->slots.entries.empty() && !ms->slots.fallback) freed = 0;
      live &= ~freed;
    } else if (const auto* rs = std::get_if<ResetStep>(&step)) {
      std::uint64_t freed = ~std::uint64_t{0};
      for_each_entry(rs->slots, [&](const std::vector<int>& s) { freed &= slot_mask(s); });
      if (rs->slots.entries.empty() && !rs->slots.fallback) freed = 0;
      live &= ~freed;
    } else if (const auto* ls = std::get_if<LoadStep>(&step)) {
      for_each_entry(ls->slots, [&](const std::vector<int>& s) { live |= slot_mask(s); });
    }
    peak = std::max(peak, std::popcount(live));
  }
  std::uint64_t out = live;
  for (int s = c.m - c.n_out; s < c.m; ++s) out |= std::uint64_t{1} << s;
  return std::max(peak, std::popcount(out));
}

}  // namespace qspace
