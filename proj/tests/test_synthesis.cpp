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

#include <functional>
#include <string>

#include "oracles.hpp"
#include "qspace/linalg.hpp"
#include "qspace/simulator.hpp"
#include "qspace/synthesis.hpp"

using namespace qspace;

namespace {

OutcomeLabel L(const char* s) { return OutcomeLabel(s); }

std::string synthesis_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const SynthesisError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a one-outcome POVM needs no rounds") {
  const Povm e(2, {{L(""), ComplexMatrix::identity(2)}});
  PovmTree tree;
  const Circuit c = synth_povm_tree(e, &tree);
  CHECK(tree.rounds == 0);
  CHECK(c.m == 2);
  const RunResult r = run(c);
  REQUIRE(r.instrument.branches.size() == 1);
  CHECK(oracle::superop_distance(r.instrument, luders(e)) < 1e-12);
}

TEST_CASE("tree rounds telescope to the square roots") {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t dim = std::size_t{1} << (1 + trial % 3);
    const Povm e = oracle::random_povm(dim, 2 + trial % 6, rng);
    PovmTree tree;
    const Circuit c = synth_povm_tree(e, &tree);
    CHECK(c.m == qubit_count(dim) + 1);
    for (const auto& [prefix, u] : tree.unitaries) CHECK(is_unitary(u, 1e-9));
    for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
      if (!tree.leaves[i]) continue;
      const ComplexMatrix& acc = tree.accumulated.at(OutcomeLabel::from_index(i, tree.rounds));
      CHECK(max_abs_diff(acc, oracle::sqrt_psd(e.element(*tree.leaves[i]))) < 1e-8);
    }
    const RunResult r = run(c);
    CHECK(r.peak_width <= c.m);
    CHECK(oracle::superop_distance(r.instrument, luders(e)) < 1e-8);
  }
}

TEST_CASE("half-cut circuits realize split instruments") {
  oracle::Rng rng(72);
  struct Shape {
    int qubits;
    std::size_t first_rank, dim_out;
    int m;
  };
  // The first shape has n_out = m.
  const Shape shapes[] = {{2, 2, 4, 2}, {2, 2, 2, 2}, {3, 4, 2, 3}, {3, 4, 4, 3}};
  for (const auto& s : shapes) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto split = oracle::random_split_instrument(s.qubits, s.first_rank, s.dim_out, rng);
      const HalfCut plan = plan_half_cut(split.inst, s.m, split.first);
      for (const auto& [k, l] : plan.l) {
        const ComplexMatrix& kb = plan.k[static_cast<std::size_t>(plan.block.at(k))];
        CHECK(l.rows() == kb.rows());
      }
      const Circuit c = synth_wodi(split.inst, s.m, split.first);
      CHECK(c.load_count() == 0);
      const RunResult r = run(c);
      CHECK(r.peak_width <= s.m);
      CHECK(oracle::superop_distance(r.instrument, split.inst) < 1e-8);
      CHECK(oracle::superop_distance(oracle::reference_run(c), split.inst) < 1e-8);
    }
  }
}

TEST_CASE("outcomes with several Kraus operators are refined and merged back") {
  oracle::Rng rng(73);
  int done = 0;
  for (int trial = 0; trial < 40 && done < 5; ++trial) {
    const auto split = oracle::random_split_instrument(2, 2, 2, rng);
    if (split.first.size() < 2) continue;
    Instrument merged;
    merged.dim_in = split.inst.dim_in;
    merged.dim_out = split.inst.dim_out;
    for (const auto& [k, ops] : split.inst.branches) {
      const OutcomeLabel to = split.first.count(k) ? L("0") : k;
      for (const auto& op : ops) merged.branches[to].push_back(op);
    }
    REQUIRE_FALSE(merged.is_rank1());
    const Circuit c = synth_wodi(merged, 2, {L("0")});
    CHECK(oracle::superop_distance(run(c).instrument, merged) < 1e-8);
    ++done;
  }
  CHECK(done == 5);
}

TEST_CASE("half-cut hypotheses are enforced") {
  oracle::Rng rng(74);
  const auto wide = oracle::random_split_instrument(2, 3, 2, rng);
  CHECK(synthesis_message([&] { plan_half_cut(wide.inst, 2, wide.first); }).find("rank bound") !=
        std::string::npos);

  const Povm soft = oracle::random_povm(4, std::vector<int>{2, 2, 2}, rng);
  const Instrument inst = rank1_dilation(soft, 4);
  const std::set<OutcomeLabel> first = {inst.labels().front()};
  CHECK(synthesis_message([&] { plan_half_cut(inst, 2, first); }).find("not a projector") !=
        std::string::npos);

  CHECK_THROWS_AS(plan_half_cut(luders(soft), 3, first), SynthesisError);
}

TEST_CASE("staircase circuits for the registry codes") {
  for (const char* name : {"five_one_three", "steane"}) {
    CAPTURE(name);
    const StabilizerCode code = builtin_code(name);
    const DistillationSynthesis s = synth_distillation(code, {false});
    const Circuit& c = s.circuit;
    CHECK(c.m == code.n() - s.delay.t_star);
    CHECK(c.load_count() == s.delay.t_star);
    std::vector<int> order;
    for (int t = 1; t <= s.delay.t_star; ++t) order.push_back(s.delay.ordering.at(t) - 1);
    CHECK(c.load_order() == order);
    CHECK(audit_width(c) <= c.m);
    const RunResult r = run(c);
    CHECK(r.peak_width <= c.m);
    CHECK(oracle::superop_distance(r.instrument, s.target) < 1e-8);
    if (code.n() == 5) CHECK(oracle::superop_distance(oracle::reference_run(c), s.target) < 1e-8);
  }
}

TEST_CASE("staircase refuses broken chains") {
  const StabilizerCode code = builtin_code("steane");
  const DistillationSynthesis s = synth_distillation(code);
  std::vector<Povm> swapped = s.cert.measurements;
  std::swap(swapped[0], swapped[1]);
  CHECK_THROWS_AS(synth_staircase(s.target, s.cert.ordering, swapped), SynthesisError);

  Ordering other = s.cert.ordering;
  other.qubits[0] = other.qubits[0] == 1 ? 2 : 1;
  if (other.qubits[0] == other.qubits[1] || other.qubits[0] == other.qubits[2]) {
    other.qubits[0] = 7;
  }
  CHECK_THROWS_AS(synth_staircase(s.target, other, s.cert.measurements), SynthesisError);

  std::vector<Povm> short_chain(s.cert.measurements.begin(), s.cert.measurements.end() - 1);
  CHECK_THROWS_AS(synth_staircase(s.target, s.cert.ordering, short_chain), SynthesisError);

  Instrument merged = s.target;
  auto it = merged.branches.begin();
  const auto moved = std::next(it)->second;
  it->second.insert(it->second.end(), moved.begin(), moved.end());
  merged.branches.erase(std::next(it));
  CHECK_THROWS_AS(synth_staircase(merged, s.cert), SynthesisError);
}
