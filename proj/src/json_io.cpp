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

#include "qspace/json_io.hpp"

#include <string>

namespace qspace {

using nlohmann::json;

namespace {

template <class T, class F>
json table_to_json(const Table<T>& t, F&& encode) {
  json out = json::object();
  for (const auto& [k, v] : t.entries) out[k.bits()] = encode(v);
  return out;
}

template <class T, class F>
void table_from_json(const json& step, const char* field, Table<T>& t, F&& decode) {
  if (!step.contains(field) || !step[field].is_object()) {
    throw FormatError(std::string("step is missing the \"") + field + "\" object");
  }
  for (const auto& [k, v] : step[field].items()) t.entries[OutcomeLabel(k)] = decode(v);
  if (step.contains("default")) t.fallback = decode(step["default"]);
}

json slots_to_json(const std::vector<int>& s) { return json(s); }
std::vector<int> slots_from_json(const json& j) { return j.get<std::vector<int>>(); }
json label_to_json(const OutcomeLabel& k) { return k.bits(); }
OutcomeLabel label_from_json(const json& j) { return OutcomeLabel(j.get<std::string>()); }

template <class T, class F>
void put_table(json& step, const char* field, const Table<T>& t, F&& encode) {
  step[field] = table_to_json(t, encode);
  if (t.fallback) step["default"] = encode(*t.fallback);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw FormatError("ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = j[r][c];
      if (!z.is_array() || z.size() != 2) throw FormatError("matrix entry must be [re, im]");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json circuit_to_json(const Circuit& c) {
  json steps = json::array();
  for (const auto& step : c.steps) {
    json s;
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      s["kind"] = "unitary";
      put_table(s, "table", u->table, matrix_to_json);
    } else if (const auto* ms = std::get_if<MeasureStep>(&step)) {
      s["kind"] = "measure";
      put_table(s, "slots", ms->slots, slots_to_json);
    } else if (const auto* rs = std::get_if<ResetStep>(&step)) {
      s["kind"] = "reset";
      put_table(s, "slots", rs->slots, slots_to_json);
    } else if (const auto* cs = std::get_if<ClassicalStep>(&step)) {
      s["kind"] = "classical";
      put_table(s, "table", cs->table, label_to_json);
    } else if (const auto* ls = std::get_if<LoadStep>(&step)) {
      s["kind"] = "load";
      put_table(s, "slots", ls->slots, slots_to_json);
      s["inputs"] = ls->inputs;
    }
    steps.push_back(std::move(s));
  }
  return {{"m", c.m}, {"n_in", c.n_in}, {"n_out", c.n_out}, {"steps", std::move(steps)}};
}

Circuit circuit_from_json(const json& j) {
  try {
    Circuit c;
    c.m = j.at("m").get<int>();
    c.n_in = j.at("n_in").get<int>();
    c.n_out = j.at("n_out").get<int>();
    for (const auto& s : j.at("steps")) {
      const std::string kind = s.at("kind").get<std::string>();
      if (kind == "unitary") {
        UnitaryStep u;
        table_from_json(s, "table", u.table, matrix_from_json);
        c.steps.emplace_back(std::move(u));
      } else if (kind == "measure") {
        MeasureStep ms;
        table_from_json(s, "slots", ms.slots, slots_from_json);
        c.steps.emplace_back(std::move(ms));
      } else if (kind == "reset") {
        ResetStep rs;
        table_from_json(s, "slots", rs.slots, slots_from_json);
        c.steps.emplace_back(std::move(rs));
      } else if (kind == "classical") {
        ClassicalStep cs;
        table_from_json(s, "table", cs.table, label_from_json);
        c.steps.emplace_back(std::move(cs));
      } else if (kind == "load") {
        LoadStep ls;
        table_from_json(s, "slots", ls.slots, slots_from_json);
        ls.inputs = s.at("inputs").get<std::vector<int>>();
        c.steps.emplace_back(std::move(ls));
      } else {
        throw FormatError("unknown step kind \"" + kind + "\"");
      }
    }
    return c;
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed circuit: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed circuit: ") + e.what());
  }
}

std::string write_circuit(const Circuit& c) { return circuit_to_json(c).dump(); }

Circuit read_circuit(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError("circuit file is not valid JSON");
  return circuit_from_json(j);
}

json instrument_to_json(const Instrument& inst) {
  json branches = json::object();
  for (const auto& [k, ops] : inst.branches) {
    json list = json::array();
    for (const auto& op : ops) list.push_back(matrix_to_json(op));
    branches[k.bits()] = std::move(list);
  }
  json padded = json::array();
  for (const auto& k : inst.padded) padded.push_back(k.bits());
  return {{"dim_in", inst.dim_in},
          {"dim_out", inst.dim_out},
          {"branches", std::move(branches)},
          {"padded", std::move(padded)}};
}

Instrument instrument_from_json(const json& j) {
  try {
    Instrument inst;
    inst.dim_in = j.at("dim_in").get<std::size_t>();
    inst.dim_out = j.at("dim_out").get<std::size_t>();
    for (const auto& [k, list] : j.at("branches").items()) {
      auto& ops = inst.branches[OutcomeLabel(k)];
      for (const auto& op : list) ops.push_back(matrix_from_json(op));
    }
    if (j.contains("padded")) {
      for (const auto& k : j["padded"]) inst.padded.insert(OutcomeLabel(k.get<std::string>()));
    }
    return inst;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed instrument: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed instrument: ") + e.what());
  }
}

json run_result_to_json(const RunResult& r) {
  return {{"instrument", instrument_to_json(r.instrument)},
          {"peak_width", r.peak_width},
          {"branch_count_trace", r.branch_count_trace}};
}

RunResult run_result_from_json(const json& j) {
  RunResult r;
  r.instrument = instrument_from_json(j.at("instrument"));
  r.peak_width = j.at("peak_width").get<int>();
  r.branch_count_trace = j.at("branch_count_trace").get<std::vector<std::size_t>>();
  return r;
}

}  // namespace qspace
