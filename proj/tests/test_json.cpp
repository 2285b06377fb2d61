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

#include <doctest.h>

#include "oracles.hpp"
#include "qspace/json_io.hpp"
#include "qspace/report.hpp"
#include "qspace/synthesis.hpp"

using namespace qspace;

namespace {

OutcomeLabel L(const char* s) { return OutcomeLabel(s); }

}  // namespace

TEST_CASE("matrices survive a JSON round trip bit for bit") {
  oracle::Rng rng(81);
  const ComplexMatrix m = oracle::random_matrix(3, 5, rng);
  CHECK(matrix_from_json(nlohmann::json::parse(matrix_to_json(m).dump())) == m);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1, 2]]")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[[1,0]],[[1,0],[0,0]]]")), FormatError);
}

TEST_CASE("circuits survive a JSON round trip, fallbacks included") {
  oracle::Rng rng(82);
  Circuit c;
  c.m = 2;
  c.n_in = 3;
  c.n_out = 1;
  UnitaryStep u;
  u.table.entries[L("")] = oracle::random_unitary(4, rng);
  u.table.entries[L("01")] = oracle::random_unitary(4, rng);
  u.table.fallback = oracle::random_unitary(4, rng);
  c.steps.emplace_back(u);
  MeasureStep ms;
  ms.slots.entries[L("1")] = {1, 0};
  ms.slots.fallback = std::vector<int>{0};
  c.steps.emplace_back(ms);
  ResetStep rs;
  rs.slots.fallback = std::vector<int>{1};
  c.steps.emplace_back(rs);
  ClassicalStep cs;
  cs.table.entries[L("10")] = L("");
  cs.table.fallback = L("1");
  c.steps.emplace_back(cs);
  LoadStep ls;
  ls.inputs = {2};
  ls.slots.entries[L("0")] = {0};
  c.steps.emplace_back(ls);

  const Circuit back = read_circuit(write_circuit(c));
  CHECK(back == c);

  const DistillationSynthesis s = synth_distillation(builtin_code("five_one_three"));
  CHECK(read_circuit(write_circuit(s.circuit)) == s.circuit);
}

TEST_CASE("malformed circuit JSON is a FormatError") {
  CHECK_THROWS_AS(read_circuit("not json"), FormatError);
  CHECK_THROWS_AS(read_circuit(R"({"m":1})"), FormatError);
  CHECK_THROWS_AS(read_circuit(R"({"m":1,"n_in":0,"n_out":0,"steps":[{"kind":"teleport"}]})"),
                  FormatError);
  CHECK_THROWS_AS(
      read_circuit(R"({"m":1,"n_in":0,"n_out":0,"steps":[{"kind":"measure","slots":{"2x":[0]}}]})"),
      FormatError);
}

TEST_CASE("instruments, run results and reports round trip") {
  oracle::Rng rng(83);
  const auto split = oracle::random_split_instrument(2, 2, 2, rng);
  Instrument inst = split.inst;
  inst.padded.insert(L("111"));
  inst.branches[L("111")] = {ComplexMatrix(2, 4)};
  const Instrument back = instrument_from_json(nlohmann::json::parse(instrument_to_json(inst).dump()));
  CHECK(back.dim_in == inst.dim_in);
  CHECK(back.dim_out == inst.dim_out);
  CHECK(back.padded == inst.padded);
  CHECK(back.branches == inst.branches);

  RunResult r;
  r.instrument = inst;
  r.peak_width = 3;
  r.branch_count_trace = {1, 2, 4};
  const RunResult rb = run_result_from_json(nlohmann::json::parse(run_result_to_json(r).dump()));
  CHECK(rb.peak_width == 3);
  CHECK(rb.branch_count_trace == r.branch_count_trace);
  CHECK(rb.instrument.branches == inst.branches);

  const AnalysisReport rep = analyze(builtin_code("steane"));
  CHECK(rep.certificate_ok);
  CHECK(rep.optimal_qubits == 4);
  CHECK(report_from_json(nlohmann::json::parse(report_to_json(rep).dump())) == rep);
  CHECK(report_to_json(rep).contains("T_star"));
}
