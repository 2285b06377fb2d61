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

#include "qspace/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qspace/kernels.hpp"
#include "qspace/linalg.hpp"

namespace qspace {

namespace {

int ceil_log2(std::size_t n) {
  int t = 0;
  while ((std::size_t{1} << t) < n) ++t;
  return t;
}

ComplexMatrix vstack2(const ComplexMatrix& top, const ComplexMatrix& bottom) {
  ComplexMatrix out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

// Pads rows with zeros up to `rows`.
ComplexMatrix pad_rows(const ComplexMatrix& m, std::size_t rows) {
  ComplexMatrix out(rows, m.cols());
  out.set_block(0, 0, m);
  return out;
}

OutcomeLabel leaf_key(const OutcomeLabel& base, std::size_t leaf, int rounds) {
  return rounds == 0 ? base : base + OutcomeLabel::from_index(leaf, rounds);
}

void emit_tree_rounds(std::vector<Step>& steps, const std::map<OutcomeLabel, PovmTree>& trees,
                      int rounds) {
  for (int t = 0; t < rounds; ++t) {
    UnitaryStep u;
    MeasureStep meas;
    for (const auto& [base, tree] : trees) {
      for (const auto& [prefix, op] : tree.unitaries) {
        if (prefix.size() != t) continue;
        u.table.entries[base + prefix] = op;
        meas.slots.entries[base + prefix] = {0};
      }
    }
    steps.emplace_back(std::move(u));
    steps.emplace_back(std::move(meas));
  }
}

// One half-cut per classical value `prefix`; all of them share the step
// sequence, so they can be laid out side by side.
struct WodiProblem {
  OutcomeLabel prefix;
  Instrument target;
  std::set<OutcomeLabel> first;
  std::map<OutcomeLabel, OutcomeLabel> final_of;
};

void emit_wodi(std::vector<Step>& steps, const std::vector<WodiProblem>& problems, int m) {
  const std::size_t half = std::size_t{1} << (m - 1);
  std::vector<HalfCut> plans;
  int rounds = 0;
  for (const auto& p : problems) {
    plans.push_back(plan_half_cut(p.target, m, p.first));
    std::array<std::size_t, 2> count{0, 0};
    for (const auto& [k, b] : plans.back().block) ++count[b];
    rounds = std::max({rounds, ceil_log2(count[0]), ceil_log2(count[1])});
  }

  // First instrument: V with [K_0; K_1] on the |0> ancillas, then slot 0
  // carries b.
  UnitaryStep v;
  MeasureStep meas;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    v.table.entries[problems[i].prefix] = extend_isometry(vstack2(plans[i].k[0], plans[i].k[1]));
    meas.slots.entries[problems[i].prefix] = {0};
  }
  steps.emplace_back(std::move(v));
  steps.emplace_back(std::move(meas));

  // Luders instruments of N_{.|b} on slots 1..m-1, padded to 2^rounds leaves.
  std::map<OutcomeLabel, PovmTree> trees;
  std::vector<std::array<std::vector<OutcomeLabel>, 2>> leaves(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    for (const auto& [k, b] : plans[i].block) leaves[i][b].push_back(k);
    for (int b = 0; b < 2; ++b) {
      if (leaves[i][b].empty()) continue;
      std::vector<ComplexMatrix> elements;
      for (const auto& k : leaves[i][b]) elements.push_back(plans[i].n.at(k));
      while (elements.size() < (std::size_t{1} << rounds)) elements.emplace_back(half, half);
      trees[problems[i].prefix.with_bit(b)] = build_povm_tree(elements, half);
    }
  }
  emit_tree_rounds(steps, trees, rounds);

  // Final unitaries W_k with W_k L_k = A_k up to leading |0> slots.
  UnitaryStep w;
  ClassicalStep relabel;
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const Instrument& target = problems[i].target;
    for (int b = 0; b < 2; ++b) {
      const OutcomeLabel base = problems[i].prefix.with_bit(b);
      for (std::size_t leaf = 0; leaf < leaves[i][b].size(); ++leaf) {
        const OutcomeLabel& k = leaves[i][b][leaf];
        const OutcomeLabel key = leaf_key(base, leaf, rounds);
        const ComplexMatrix& lk = plans[i].l.at(k);
        const ComplexMatrix& ak = target.branches.at(k).front();
        if (target.dim_out <= half) {
          w.table.entries[key] = kron(id2, isometry_between(lk, pad_rows(ak, half)));
        } else {
          w.table.entries[key] = isometry_between(pad_rows(lk, 2 * half), ak);
        }
        relabel.table.entries[key] = problems[i].final_of.at(k);
      }
    }
  }
  steps.emplace_back(std::move(w));
  steps.emplace_back(std::move(relabel));
}

// One outcome per Kraus operator, with the map back to the original label.
std::pair<Instrument, std::map<OutcomeLabel, OutcomeLabel>> refine(const Instrument& target) {
  std::map<OutcomeLabel, OutcomeLabel> final_of;
  if (target.is_rank1()) {
    for (const auto& [k, ops] : target.branches) final_of[k] = k;
    return {target, final_of};
  }
  std::size_t total = 0;
  for (const auto& [k, ops] : target.branches) total += ops.size();
  const int width = ceil_log2(total);
  Instrument refined;
  refined.dim_in = target.dim_in;
  refined.dim_out = target.dim_out;
  std::size_t index = 0;
  for (const auto& [k, ops] : target.branches) {
    for (const auto& op : ops) {
      const OutcomeLabel r = OutcomeLabel::from_index(index++, width);
      refined.branches[r] = {op};
      final_of[r] = k;
    }
  }
  return {refined, final_of};
}

ComplexMatrix dense_sum(const Povm& e, const std::vector<OutcomeLabel>& labels) {
  ComplexMatrix sum(e.dim(), e.dim());
  for (const auto& k : labels) sum += e.element(k);
  return sum;
}

// ---------------------------------------------------------------------------
// Staircase

struct Staircase {
  const Ordering& ordering;
  const std::vector<Povm>& chain;
  int n_total;
  int m;

  // E^(level) averaged over every input not in `inputs`.
  Povm reduced(int level, const std::vector<int>& inputs) const {
    Povm p = chain[level - 1];
    std::vector<int> current(n_total);
    std::iota(current.begin(), current.end(), 0);
    for (int q = 0; q < n_total; ++q) {
      if (std::find(inputs.begin(), inputs.end(), q) != inputs.end()) continue;
      const auto at = std::find(current.begin(), current.end(), q);
      p = partial_average(p, std::vector<int>(current.size(), 2),
                          static_cast<int>(at - current.begin()));
      current.erase(at);
    }
    std::map<OutcomeLabel, ComplexMatrix> roots;
    for (const auto& k : p.labels()) roots[k] = minimal_root(p.root(k));
    return Povm::from_roots(p.dim(), std::move(roots), false);
  }

  void base(std::vector<Step>& steps, const Instrument& target) const {
    const std::size_t dim = std::size_t{1} << m;
    const int n_out = qubit_count(target.dim_out);
    const int w = m - n_out;
    const auto labels = target.labels();
    if (labels.size() > (std::size_t{1} << w)) {
      throw SynthesisError("base case: " + std::to_string(labels.size()) +
                           " outcomes do not fit in " + std::to_string(w) + " measured slots");
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      u.set_block(i * target.dim_out, 0, target.branches.at(labels[i]).front());
    }
    if (!is_unitary(u, kOperatorTol)) {
      throw SynthesisError("base case: stacked Kraus operators do not form a unitary");
    }
    UnitaryStep us;
    us.table.entries[OutcomeLabel()] = u;
    steps.emplace_back(std::move(us));
    if (w > 0) {
      MeasureStep ms;
      std::vector<int> slots(static_cast<std::size_t>(w));
      std::iota(slots.begin(), slots.end(), 0);
      ms.slots.entries[OutcomeLabel()] = slots;
      steps.emplace_back(std::move(ms));
    }
    ClassicalStep cs;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      cs.table.entries[w == 0 ? OutcomeLabel() : OutcomeLabel::from_index(i, w)] = labels[i];
    }
    steps.emplace_back(std::move(cs));
  }

  void emit(std::vector<Step>& steps, const Instrument& target, const std::vector<int>& inputs,
            int level) const {
    if (level == 0) {
      base(steps, target);
      return;
    }
    const std::string where = " at level " + std::to_string(level);
    const std::size_t width = std::size_t{1} << m;
    const Povm e = reduced(level, inputs);
    for (const auto& k : e.labels()) {
      if (static_cast<std::size_t>(e.rank(k)) != width) {
        throw SynthesisError("rank condition fails" + where + ": outcome " + k.bits() +
                             " has rank " + std::to_string(e.rank(k)));
      }
    }
    const int a = ordering.at(level) - 1;
    const auto at = std::find(inputs.begin(), inputs.end(), a);
    if (at == inputs.end()) throw SynthesisError("ordering repeats qubit " + std::to_string(a + 1));
    const int pos = static_cast<int>(at - inputs.begin());

    const Instrument gamma = rank1_dilation(e, width);
    const auto nu = projective_grouping(e, associated_povm(target));
    if (!nu) throw SynthesisError("composability fails" + where);
    OnsDecomposition ons;
    try {
      ons = ons_decompose(gamma, std::vector<int>(inputs.size(), 2), pos);
    } catch (const std::invalid_argument& err) {
      throw SynthesisError("no-signaling fails" + where + " over qubit " +
                           std::to_string(a + 1) + ": " + err.what());
    }
    const auto theta = compose_postprocessing(target, gamma, *nu);

    std::vector<int> rest;
    for (int q : inputs) {
      if (q != a) rest.push_back(q);
    }
    emit(steps, ons.g, rest, level - 1);

    // A_level goes into slot 0, next to the m - 1 output slots of G; the
    // load bit is forgotten.
    LoadStep load;
    load.inputs = {a};
    ClassicalStep forget;
    for (const auto& l : ons.g.labels()) {
      load.slots.entries[l] = {0};
      forget.table.entries[l.with_bit(false)] = l;
      forget.table.entries[l.with_bit(true)] = l;
    }
    steps.emplace_back(std::move(load));
    steps.emplace_back(std::move(forget));

    // Psi_{k|l} = Theta_{k|l} U_l, read in slot order (A, X).
    const ComplexMatrix swap = subsystem_permutation({2, static_cast<int>(width / 2)}, {1, 0});
    std::vector<WodiProblem> problems;
    bool all_unitary = target.dim_out == width;
    for (const auto& [l, th] : theta) {
      if (!th.padded.empty()) {
        throw SynthesisError("first instrument does not reach its whole output" + where);
      }
      WodiProblem p;
      p.prefix = l;
      p.target.dim_in = width;
      p.target.dim_out = target.dim_out;
      const ComplexMatrix ul = kernels::matmul(ons.unitaries.at(l), swap);
      for (const auto& [k, ops] : th.branches) {
        p.target.branches[k] = {kernels::matmul(ops.front(), ul)};
        p.final_of[k] = k;
      }
      all_unitary = all_unitary && p.target.branches.size() == 1;
      const auto labels = p.target.labels();
      p.first.insert(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(labels.size() / 2));
      problems.push_back(std::move(p));
    }
    if (all_unitary) {
      UnitaryStep us;
      ClassicalStep cs;
      for (const auto& p : problems) {
        const auto& [k, ops] = *p.target.branches.begin();
        us.table.entries[p.prefix] = ops.front();
        cs.table.entries[p.prefix] = k;
      }
      steps.emplace_back(std::move(us));
      steps.emplace_back(std::move(cs));
    } else {
      emit_wodi(steps, problems, m);
    }
  }
};

}  // namespace

PovmTree build_povm_tree(const std::vector<ComplexMatrix>& elements, std::size_t dim) {
  PovmTree tree;
  tree.dim = dim;
  tree.rounds = ceil_log2(std::max<std::size_t>(elements.size(), 1));
  const std::size_t leaves = std::size_t{1} << tree.rounds;
  tree.leaves.assign(leaves, std::nullopt);

  // r[t][i]: sum over the leaves below prefix i of length t.
  std::vector<std::vector<ComplexMatrix>> r(static_cast<std::size_t>(tree.rounds) + 1);
  r[tree.rounds].resize(leaves, ComplexMatrix(dim, dim));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].rows() != dim || elements[i].cols() != dim) {
      throw std::invalid_argument("build_povm_tree: element has the wrong shape");
    }
    r[tree.rounds][i] = elements[i];
  }
  for (int t = tree.rounds - 1; t >= 0; --t) {
    for (std::size_t i = 0; i < (std::size_t{1} << t); ++i) {
      r[t].push_back(r[t + 1][2 * i] + r[t + 1][2 * i + 1]);
    }
  }
  std::vector<std::vector<ComplexMatrix>> roots(r.size());
  for (int t = 0; t <= tree.rounds; ++t) {
    for (std::size_t i = 0; i < r[t].size(); ++i) {
      roots[t].push_back(sqrt_psd(r[t][i]));
      tree.accumulated[t == 0 ? OutcomeLabel() : OutcomeLabel::from_index(i, t)] = roots[t].back();
    }
  }
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  for (int t = 0; t < tree.rounds; ++t) {
    for (std::size_t i = 0; i < r[t].size(); ++i) {
      const ComplexMatrix inv = pinv_sqrt_psd(r[t][i]);
      ComplexMatrix k0 = kernels::matmul(roots[t + 1][2 * i], inv);
      k0 += id - kernels::matmul(roots[t][i], inv);
      const ComplexMatrix k1 = kernels::matmul(roots[t + 1][2 * i + 1], inv);
      tree.unitaries[t == 0 ? OutcomeLabel() : OutcomeLabel::from_index(i, t)] =
          extend_isometry(vstack2(k0, k1));
    }
  }
  return tree;
}

Circuit synth_povm_tree(const Povm& e, PovmTree* tree_out) {
  const auto labels = e.labels();
  if (labels.empty()) throw SynthesisError("POVM has no outcomes");
  std::vector<ComplexMatrix> elements;
  for (const auto& k : labels) elements.push_back(e.element(k));
  PovmTree tree = build_povm_tree(elements, e.dim());
  for (std::size_t i = 0; i < labels.size(); ++i) tree.leaves[i] = labels[i];

  Circuit c;
  c.m = qubit_count(e.dim()) + 1;
  c.n_in = c.m - 1;
  c.n_out = c.m - 1;
  emit_tree_rounds(c.steps, {{OutcomeLabel(), tree}}, tree.rounds);
  ClassicalStep cs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    cs.table.entries[leaf_key(OutcomeLabel(), i, tree.rounds)] = labels[i];
  }
  c.steps.emplace_back(std::move(cs));
  if (tree_out) *tree_out = std::move(tree);
  return c;
}

HalfCut plan_half_cut(const Instrument& target, int m, const std::set<OutcomeLabel>& first) {
  if (!target.is_rank1()) throw SynthesisError("half-cut needs Kraus-rank-1 outcomes");
  const std::size_t half = std::size_t{1} << (m - 1);
  if (target.dim_in > 2 * half || target.dim_out > 2 * half) {
    throw SynthesisError("input or output does not fit in " + std::to_string(m) + " qubits");
  }
  const Povm e = associated_povm(target);
  std::array<std::vector<OutcomeLabel>, 2> blocks;
  for (const auto& k : e.labels()) blocks[first.count(k) ? 0 : 1].push_back(k);

  std::map<OutcomeLabel, ComplexMatrix> projectors;
  for (int b = 0; b < 2; ++b) {
    ComplexMatrix p = dense_sum(e, blocks[b]);
    if (max_abs_diff(kernels::matmul(p, p), p) > kOperatorTol) {
      throw SynthesisError("P_" + std::to_string(b) + " is not a projector");
    }
    if (static_cast<std::size_t>(psd_rank(p)) > half) {
      throw SynthesisError("rank bound violated: rank P_" + std::to_string(b) + " = " +
                           std::to_string(psd_rank(p)) + " exceeds 2^" + std::to_string(m - 1));
    }
    projectors[OutcomeLabel(b ? "1" : "0")] = std::move(p);
  }
  const Instrument gamma = rank1_dilation(Povm(target.dim_in, projectors), half);

  HalfCut plan;
  plan.k[0] = gamma.branches.at(OutcomeLabel("0")).front();
  plan.k[1] = gamma.branches.at(OutcomeLabel("1")).front();
  const ComplexMatrix id = ComplexMatrix::identity(half);
  for (int b = 0; b < 2; ++b) {
    const ComplexMatrix& kb = plan.k[b];
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      const OutcomeLabel& k = blocks[b][i];
      ComplexMatrix n = kernels::matmul_adjoint(kernels::matmul(kb, e.element(k)), kb);
      if (i == 0) n += id - kernels::matmul_adjoint(kb, kb);
      plan.block[k] = b;
      plan.l[k] = kernels::matmul(sqrt_psd(n), kb);
      plan.n[k] = std::move(n);
    }
  }
  return plan;
}

Circuit synth_wodi(const Instrument& target, int m, const std::set<OutcomeLabel>& first) {
  if (m < 1) throw SynthesisError("m must be positive");
  target.validate();
  auto [refined, final_of] = refine(target);
  std::set<OutcomeLabel> refined_first;
  for (const auto& [r, k] : final_of) {
    if (first.count(k)) refined_first.insert(r);
  }
  Circuit c;
  c.m = m;
  c.n_in = qubit_count(target.dim_in);
  c.n_out = qubit_count(target.dim_out);
  emit_wodi(c.steps, {WodiProblem{OutcomeLabel(), refined, refined_first, final_of}}, m);
  return c;
}

Circuit synth_staircase(const Instrument& target, const Ordering& ordering,
                        const std::vector<Povm>& chain) {
  if (!target.is_rank1()) throw SynthesisError("target outcomes must have Kraus rank 1");
  const int n_in = qubit_count(target.dim_in);
  const int T = ordering.size();
  if (static_cast<int>(chain.size()) != T) {
    throw SynthesisError("chain length differs from the ordering length");
  }
  if (T >= n_in) throw SynthesisError("ordering leaves no qubit in the circuit");
  for (const auto& p : chain) {
    if (p.dim() != target.dim_in) throw SynthesisError("chain measurement on the wrong space");
  }
  Staircase s{ordering, chain, n_in, n_in - T};
  Circuit c;
  c.m = n_in - T;
  c.n_in = n_in;
  c.n_out = qubit_count(target.dim_out);
  if (c.n_out > c.m) throw SynthesisError("output does not fit in the slots");
  std::vector<int> inputs(static_cast<std::size_t>(n_in));
  std::iota(inputs.begin(), inputs.end(), 0);
  s.emit(c.steps, target, inputs, T);
  return c;
}

Circuit synth_staircase(const Instrument& target, const ChainCertificate& cert) {
  return synth_staircase(target, cert.ordering, cert.measurements);
}

DistillationSynthesis synth_distillation(const StabilizerCode& code, const SearchOptions& options) {
  DistillationSynthesis out;
  out.encoding = encoding_unitary(code);
  out.target = distillation_instrument(code, out.encoding);
  out.delay = max_delay(code, options);
  out.cert = build_chain(code, out.delay.ordering, out.target);
  const ChainCheck check = check_chain(code, out.cert, out.target);
  if (!check.ok) throw SynthesisError("certificate check failed: " + check.failure);
  out.circuit = synth_staircase(out.target, out.cert);
  return out;
}

}  // namespace qspace
