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

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qspace/circuit.hpp"
#include "qspace/instruments.hpp"
#include "qspace/simulator.hpp"

namespace qspace {

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// [[[re, im], ...], ...]
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/*
 * {"m", "n_in", "n_out", "steps": [...]}. Each step has "kind" and either
 * "table" (unitary, classical) or "slots" (measure, reset, load), an object
 * keyed by bit strings, plus "default" for the fallback entry. Loads also
 * carry "inputs".
 */
nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

std::string write_circuit(const Circuit& c);
Circuit read_circuit(std::string_view text);

// {"dim_in", "dim_out", "branches": {label: [kraus...]}, "padded": [...]}
nlohmann::json instrument_to_json(const Instrument& inst);
Instrument instrument_from_json(const nlohmann::json& j);

nlohmann::json run_result_to_json(const RunResult& r);
RunResult run_result_from_json(const nlohmann::json& j);

}  // namespace qspace
