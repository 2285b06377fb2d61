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

#include "qspace/simulator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <utility>

#include "qspace/kernels.hpp"

namespace qspace {

namespace {

struct Branch {
  std::vector<ComplexMatrix> kraus;
  std::uint64_t live = 0;
};

using State = std::map<OutcomeLabel, Branch>;
using Batch = std::vector<std::pair<OutcomeLabel, Branch>>;

template <class T>
const T& lookup(const Table<T>& table, const OutcomeLabel& k, const char* what) {
  const T* v = table.find(k);
  if (!v) {
    throw CircuitError(std::string(what) + " table has no entry for classical value '" +
                       k.bits() + "'");
  }
  return *v;
}

std::uint64_t slot_bits(int m, const std::vector<int>& slots) {
  std::uint64_t mask = 0;
  for (int s : slots) mask |= std::uint64_t{1} << (m - 1 - s);
  return mask;
}

// Value of the listed slots in row index r, first slot most significant.
std::uint64_t read_slots(int m, const std::vector<int>& slots, std::uint64_t r) {
  std::uint64_t x = 0;
  for (int s : slots) x = (x << 1) | ((r >> (m - 1 - s)) & 1U);
  return x;
}

std::uint64_t write_slots(int m, const std::vector<int>& slots, std::uint64_t r, std::uint64_t x) {
  const int w = static_cast<int>(slots.size());
  for (int i = 0; i < w; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (m - 1 - slots[i]);
    if ((x >> (w - 1 - i)) & 1U) {
      r |= bit;
    } else {
      r &= ~bit;
    }
  }
  return r;
}

// (|0><x|_S (x) I) K.
ComplexMatrix project_reset(int m, const std::vector<int>& slots, const ComplexMatrix& k,
                            std::uint64_t x) {
  ComplexMatrix out(k.rows(), k.cols());
  const std::uint64_t mask = slot_bits(m, slots);
  for (std::uint64_t r = 0; r < k.rows(); ++r) {
    if (read_slots(m, slots, r) != x) continue;
    std::copy(k.row_ptr(r), k.row_ptr(r) + k.cols(), out.row_ptr(r & ~mask));
  }
  return out;
}

// (<x|_S (x) I) K followed by the new inputs in the slots S, as the last
// column factor.
ComplexMatrix project_load(int m, const std::vector<int>& slots, const ComplexMatrix& k,
                           std::uint64_t x) {
  const std::size_t w = slots.size();
  const std::size_t span = std::size_t{1} << w;
  ComplexMatrix out(k.rows(), k.cols() * span);
  for (std::uint64_t r = 0; r < k.rows(); ++r) {
    const std::uint64_t y = read_slots(m, slots, r);
    const Complex* src = k.row_ptr(write_slots(m, slots, r, x));
    Complex* dst = out.row_ptr(r);
    for (std::size_t c = 0; c < k.cols(); ++c) dst[c * span + y] = src[c];
  }
  return out;
}

void prune(std::vector<ComplexMatrix>& ops, double threshold) {
  std::erase_if(ops, [threshold](const ComplexMatrix& op) {
    return op.frobenius_norm() <= threshold;
  });
}

OutcomeLabel append_bits(const OutcomeLabel& k, std::uint64_t x, int w) {
  return w == 0 ? k : k + OutcomeLabel::from_index(x, w);
}

void merge_into(State& state, const OutcomeLabel& k, Branch b) {
  Branch& dst = state[k];
  dst.live |= b.live;
  for (auto& op : b.kraus) dst.kraus.push_back(std::move(op));
}

// Branches are independent between merges, so each one may run on its own
// thread; the merge afterwards walks them in label order either way.
template <class F>
void parallel_for(std::ptrdiff_t n, bool parallel, F&& f) {
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
  }
}

}  // namespace

RunResult run(const Circuit& c, const SimOptions& options) {
  check_circuit(c);
  const int m = c.m;
  const std::size_t dim = std::size_t{1} << m;
  const std::vector<int> pre = c.preloaded_inputs();
  const int p = static_cast<int>(pre.size());

  std::vector<int> loaded = pre;
  State state;
  {
    Branch b;
    ComplexMatrix k0(dim, std::size_t{1} << p);
    for (std::size_t i = 0; i < k0.cols(); ++i) k0(i, i) = 1.0;
    b.kraus.push_back(std::move(k0));
    for (int s = m - p; s < m; ++s) b.live |= std::uint64_t{1} << s;
    state.emplace(OutcomeLabel(), std::move(b));
  }
  RunResult result;
  auto track = [&] {
    for (const auto& [k, b] : state) {
      result.peak_width = std::max(result.peak_width, std::popcount(b.live));
    }
  };
  track();
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;

  for (const auto& step : c.steps) {
    Batch batch(std::make_move_iterator(state.begin()), std::make_move_iterator(state.end()));
    state.clear();

    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      std::vector<const ComplexMatrix*> ops;
      for (const auto& [k, b] : batch) ops.push_back(&lookup(u->table, k, "unitary"));
      const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.size());
      auto apply = [&](std::ptrdiff_t i) {
        for (auto& op : batch[i].second.kraus) op = kernels::matmul_serial(*ops[i], op);
        batch[i].second.live = all;
      };
      parallel_for(n, options.parallel, apply);
      for (auto& [k, b] : batch) state.emplace(std::move(k), std::move(b));

    } else if (const auto* ms = std::get_if<MeasureStep>(&step)) {
      std::vector<const std::vector<int>*> slots;
      for (const auto& [k, b] : batch) slots.push_back(&lookup(ms->slots, k, "measure"));
      std::vector<Batch> children(batch.size());
      const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.size());
      auto apply = [&](std::ptrdiff_t i) {
        const auto& s = *slots[i];
        const int w = static_cast<int>(s.size());
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
          Branch child;
          child.live = batch[i].second.live;
          for (int q : s) child.live &= ~(std::uint64_t{1} << q);
          for (const auto& op : batch[i].second.kraus) {
            child.kraus.push_back(project_reset(m, s, op, x));
          }
          prune(child.kraus, options.prune);
          if (!child.kraus.empty()) {
            children[i].emplace_back(append_bits(batch[i].first, x, w), std::move(child));
          }
        }
      };
      parallel_for(n, options.parallel, apply);
      for (auto& group : children) {
        for (auto& [k, b] : group) merge_into(state, k, std::move(b));
      }

    } else if (const auto* rs = std::get_if<ResetStep>(&step)) {
      std::vector<const std::vector<int>*> slots;
      for (const auto& [k, b] : batch) slots.push_back(&lookup(rs->slots, k, "reset"));
      const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.size());
      auto apply = [&](std::ptrdiff_t i) {
        const auto& s = *slots[i];
        const int w = static_cast<int>(s.size());
        std::vector<ComplexMatrix> merged;
        for (const auto& op : batch[i].second.kraus) {
          for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
            merged.push_back(project_reset(m, s, op, x));
          }
        }
        prune(merged, options.prune);
        batch[i].second.kraus = std::move(merged);
        for (int q : s) batch[i].second.live &= ~(std::uint64_t{1} << q);
      };
      parallel_for(n, options.parallel, apply);
      for (auto& [k, b] : batch) {
        if (!b.kraus.empty()) state.emplace(std::move(k), std::move(b));
      }

    } else if (const auto* cs = std::get_if<ClassicalStep>(&step)) {
      for (auto& [k, b] : batch) {
        merge_into(state, lookup(cs->table, k, "classical"), std::move(b));
      }

    } else if (const auto* ls = std::get_if<LoadStep>(&step)) {
      std::vector<const std::vector<int>*> slots;
      for (const auto& [k, b] : batch) slots.push_back(&lookup(ls->slots, k, "load"));
      std::vector<Batch> children(batch.size());
      const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.size());
      auto apply = [&](std::ptrdiff_t i) {
        const auto& s = *slots[i];
        const int w = static_cast<int>(s.size());
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
          Branch child;
          child.live = batch[i].second.live;
          for (int q : s) child.live |= std::uint64_t{1} << q;
          for (const auto& op : batch[i].second.kraus) {
            child.kraus.push_back(project_load(m, s, op, x));
          }
          prune(child.kraus, options.prune);
          if (!child.kraus.empty()) {
            children[i].emplace_back(append_bits(batch[i].first, x, w), std::move(child));
          }
        }
      };
      parallel_for(n, options.parallel, apply);
      for (auto& group : children) {
        for (auto& [k, b] : group) merge_into(state, k, std::move(b));
      }
      loaded.insert(loaded.end(), ls->inputs.begin(), ls->inputs.end());
    }

    result.branch_count_trace.push_back(state.size());
    track();
  }

  // Output slots count as live at the end.
  std::uint64_t out_slots = 0;
  for (int s = m - c.n_out; s < m; ++s) out_slots |= std::uint64_t{1} << s;
  for (const auto& [k, b] : state) {
    result.peak_width = std::max(result.peak_width, std::popcount(b.live | out_slots));
  }
  if (state.empty()) result.peak_width = std::max(result.peak_width, c.n_out);

  // Trace out the leading slots and put the columns in input order.
  const int n_in = c.n_in;
  const std::size_t out_dim = std::size_t{1} << c.n_out;
  const std::size_t in_dim = std::size_t{1} << n_in;
  const std::size_t garbage = dim / out_dim;
  std::vector<std::size_t> column_of(in_dim);
  for (std::size_t ci = 0; ci < in_dim; ++ci) {
    std::size_t cl = 0;
    for (int pos = 0; pos < n_in; ++pos) {
      const int j = loaded[pos];
      const std::size_t bit = (ci >> (n_in - 1 - j)) & 1U;
      cl |= bit << (n_in - 1 - pos);
    }
    column_of[ci] = cl;
  }
  Instrument& inst = result.instrument;
  inst.dim_in = in_dim;
  inst.dim_out = out_dim;
  for (const auto& [k, b] : state) {
    std::vector<ComplexMatrix> ops;
    for (const auto& op : b.kraus) {
      for (std::size_t g = 0; g < garbage; ++g) {
        ComplexMatrix part(out_dim, in_dim);
        for (std::size_t r = 0; r < out_dim; ++r) {
          const Complex* src = op.row_ptr(g * out_dim + r);
          Complex* dst = part.row_ptr(r);
          for (std::size_t ci = 0; ci < in_dim; ++ci) dst[ci] = src[column_of[ci]];
        }
        ops.push_back(std::move(part));
      }
    }
    prune(ops, options.prune);
    if (!ops.empty()) inst.branches[k] = std::move(ops);
  }
  return result;
}

}  // namespace qspace
