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

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "qspace/circuit.hpp"
#include "qspace/instruments.hpp"
#include "qspace/solver.hpp"
#include "qspace/stabilizer.hpp"

namespace qspace {

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Sequential two-outcome realization of a POVM with 2^rounds outcomes (after
 * padding). The prefix l of the outcome index carries R_l, the sum of the
 * elements below it, and the round for l applies
 * K_{j|l} = sqrt(R_{lj}) R_l^{-1/2}, with the kernel of R_l sent to j = 0.
 */
struct PovmTree {
  int rounds = 0;
  std::size_t dim = 0;
  // Leaf index -> POVM label; padded leaves are empty.
  std::vector<std::optional<OutcomeLabel>> leaves;
  // Prefix (as bits) -> sqrt(R_prefix), the accumulated Kraus operator.
  std::map<OutcomeLabel, ComplexMatrix> accumulated;
  // Prefix -> unitary on ancilla (x) system, ancilla most significant.
  std::map<OutcomeLabel, ComplexMatrix> unitaries;
};

// elements[i] is the element at leaf i; the count is padded to a power of two
// with zeros.
PovmTree build_povm_tree(const std::vector<ComplexMatrix>& elements, std::size_t dim);

// Circuit on m = (qubits of E) + 1 slots: slot 0 is the ancilla, the system
// sits in slots 1..m-1 and is left in the Luders post-measurement state.
Circuit synth_povm_tree(const Povm& e, PovmTree* tree = nullptr);

/**
 * The pieces of the half-cut construction for a Kraus-rank-1 instrument:
 * K_b with K_b^dagger K_b = P_b into 2^{m-1} dimensions, and
 * L_k = sqrt(N_{k|b}) K_b with N_{k|b} = K_b E_k K_b^dagger (plus the
 * complement of K_b K_b^dagger on the first outcome of each block).
 */
struct HalfCut {
  std::array<ComplexMatrix, 2> k;
  std::map<OutcomeLabel, int> block;
  std::map<OutcomeLabel, ComplexMatrix> n;
  std::map<OutcomeLabel, ComplexMatrix> l;
};

// Throws SynthesisError if P_0 or P_1 is not a projector or has rank above
// 2^{m-1}.
HalfCut plan_half_cut(const Instrument& target, int m, const std::set<OutcomeLabel>& first);

/**
 * Circuit without loads on m slots for target, with outcomes split into
 * `first` and the rest. Inputs sit in the last n_in slots. Targets with
 * several Kraus operators per outcome are refined to one outcome per Kraus
 * operator and merged by the final classical map.
 */
Circuit synth_wodi(const Instrument& target, int m, const std::set<OutcomeLabel>& first);

/**
 * Staircase circuit on n_in - T slots for a target with Kraus-rank-1 outcomes
 * and a chain of projective measurements E^(1..T), where E^(t) factorizes
 * over input qubit A_t (1-based in ordering). Loads A_1, ..., A_T in that
 * order. Throws SynthesisError naming the failed hypothesis.
 */
Circuit synth_staircase(const Instrument& target, const Ordering& ordering,
                        const std::vector<Povm>& chain);
Circuit synth_staircase(const Instrument& target, const ChainCertificate& cert);

struct DistillationSynthesis {
  Circuit circuit;
  DelayResult delay;
  ChainCertificate cert;
  ComplexMatrix encoding;  // U with A_s = (<s| (x) I) U
  Instrument target;
};

DistillationSynthesis synth_distillation(const StabilizerCode& code,
                                         const SearchOptions& options = {});

}  // namespace qspace
