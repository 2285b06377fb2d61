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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspace/solver.hpp"
#include "qspace/stabilizer.hpp"

namespace qspace {

struct ChainLevel {
  int t = 0;
  int factorized_qubit = 0;  // A_t, 1-based
  int outcomes = 0;          // 2^t
  int element_rank = 0;      // 2^{n-t} for a valid chain
  int coset_dim = 0;         // dim J_t
  friend bool operator==(const ChainLevel&, const ChainLevel&) = default;
};

struct AnalysisReport {
  std::string code;
  int n = 0;
  int k = 0;
  int optimal_qubits = 0;
  int t_star = 0;
  std::vector<int> ordering;  // A_1..A_T*
  std::vector<ChainLevel> chain;
  std::uint64_t next_nodes = 0;  // nodes of the infeasible search at T* + 1
  bool certificate_ok = false;
  std::string failure;
  double seconds = 0.0;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// max_delay, then build_chain and check_chain on the witness ordering.
AnalysisReport analyze(const StabilizerCode& code, const SearchOptions& options = {});

nlohmann::json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

}  // namespace qspace
