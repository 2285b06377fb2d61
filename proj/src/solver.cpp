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

#include "qspace/solver.hpp"

#include <stdexcept>

namespace qspace {

std::string Ordering::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(qubits[i]);
  }
  return s + ")";
}

namespace {

struct Search {
  const StabilizerCode& code;
  int T;
  bool stop_at_first;
  std::vector<F2Vector> xs, zs;
  std::uint64_t nodes = 0;
  // seq[d] is A_{T-d}: the search fills A_T first.
  std::vector<int> seq;
  std::vector<Ordering> found;

  Search(const StabilizerCode& c, int t, bool first) : code(c), T(t), stop_at_first(first) {
    for (int q = 0; q < c.n(); ++q) {
      xs.push_back(c.x_column(q));
      zs.push_back(c.z_column(q));
    }
  }

  Ordering current() const {
    Ordering o;
    o.qubits.assign(seq.rbegin(), seq.rend());
    return o;
  }

  // Extends the span by qubit q as A_t; false if the bound for t fails.
  bool admits(const F2Subspace& span, int q, int t, F2Subspace& out) const {
    out = span;
    out.insert(xs[q]);
    out.insert(zs[q]);
    return out.dim() <= code.r() - t;
  }

  // Returns true to stop.
  bool dfs(const F2Subspace& span, std::uint64_t used) {
    ++nodes;
    const int depth = static_cast<int>(seq.size());
    if (depth == T) {
      found.push_back(current());
      return stop_at_first;
    }
    const int t = T - depth;
    F2Subspace next;
    for (int q = 0; q < code.n(); ++q) {
      if ((used >> q) & 1U) continue;
      if (!admits(span, q, t, next)) continue;
      seq.push_back(q + 1);
      const bool stop = dfs(next, used | (std::uint64_t{1} << q));
      seq.pop_back();
      if (stop) return true;
    }
    return false;
  }
};

}  // namespace

bool satisfies_span_bounds(const StabilizerCode& code, const Ordering& ordering) {
  const int T = ordering.size();
  F2Subspace span(code.r());
  std::uint64_t used = 0;
  for (int t = T; t >= 1; --t) {
    const int q = ordering.at(t) - 1;
    if (q < 0 || q >= code.n() || ((used >> q) & 1U)) return false;
    used |= std::uint64_t{1} << q;
    span.insert(code.x_column(q));
    span.insert(code.z_column(q));
    if (span.dim() > code.r() - t) return false;
  }
  return true;
}

std::optional<Ordering> find_ordering(const StabilizerCode& code, int T,
                                      const SearchOptions& options, SearchStats* stats) {
  if (T < 0 || T > code.n()) throw std::invalid_argument("ordering length out of range");
  SearchStats local;
  std::optional<Ordering> result;
  if (T == 0 || !options.parallel) {
    Search s(code, T, true);
    s.dfs(F2Subspace(code.r()), 0);
    local.nodes = s.nodes;
    if (!s.found.empty()) result = s.found.front();
  } else {
    // One subtree per choice of A_T; the lowest qubit with a hit wins.
    const int n = code.n();
    std::vector<std::optional<Ordering>> hits(n);
    std::vector<std::uint64_t> nodes(n, 0);
#pragma omp parallel for schedule(dynamic)
    for (int q = 0; q < n; ++q) {
      Search s(code, T, true);
      F2Subspace first;
      if (!s.admits(F2Subspace(code.r()), q, T, first)) continue;
      s.seq.push_back(q + 1);
      s.dfs(first, std::uint64_t{1} << q);
      nodes[q] = s.nodes;
      if (!s.found.empty()) hits[q] = s.found.front();
    }
    local.nodes = 1;
    for (int q = 0; q < n; ++q) local.nodes += nodes[q];
    for (int q = 0; q < n && !result; ++q) result = hits[q];
  }
  local.feasible = result.has_value();
  if (stats) *stats = local;
  return result;
}

std::vector<Ordering> enumerate_orderings(const StabilizerCode& code, int T) {
  Search s(code, T, false);
  s.dfs(F2Subspace(code.r()), 0);
  return s.found;
}

DelayResult max_delay(const StabilizerCode& code, const SearchOptions& options) {
  DelayResult out;
  // Feasibility is monotone in T: dropping A_1 keeps the remaining bounds.
  for (int T = 1; T <= code.n(); ++T) {
    SearchStats stats;
    auto found = find_ordering(code, T, options, &stats);
    if (!found) {
      out.next = stats;
      return out;
    }
    out.t_star = T;
    out.ordering = *found;
  }
  out.next = SearchStats{0, false};
  return out;
}

std::vector<F2Vector> scan_vectors(const StabilizerCode& code, const Ordering& ordering) {
  if (!satisfies_span_bounds(code, ordering)) {
    throw std::invalid_argument("ordering " + ordering.to_string() +
                                " violates the suffix span bounds");
  }
  const int r = code.r();
  F2Subspace span(r);
  std::vector<F2Vector> u;
  auto offer = [&](const F2Vector& v) {
    if (span.insert(v)) u.push_back(v);
  };
  for (int t = ordering.size(); t >= 1; --t) {
    offer(code.x_column(ordering.at(t) - 1));
    offer(code.z_column(ordering.at(t) - 1));
  }
  for (int i = 0; i < r; ++i) offer(F2Vector::unit(r, i));
  return u;
}

ChainCertificate build_chain(const StabilizerCode& code, const Ordering& ordering,
                             const Instrument& distillation) {
  const std::vector<F2Vector> u = scan_vectors(code, ordering);
  const int r = code.r(), T = ordering.size();
  ChainCertificate cert;
  cert.T = T;
  cert.ordering = ordering;
  for (int t = 1; t <= T; ++t) {
    F2Subspace j(r);
    for (int i = 0; i < r - t; ++i) j.insert(u[i]);
    std::map<OutcomeLabel, OutcomeLabel> coarse_of;
    std::map<OutcomeLabel, std::vector<const ComplexMatrix*>> parts;
    for (const auto& [s, kraus] : distillation.branches) {
      const OutcomeLabel label = OutcomeLabel::from_f2(coset_label(s.to_f2(), j));
      coarse_of[s] = label;
      parts[label].push_back(&kraus.front());
    }
    std::vector<OutcomeLabel> coarse;
    std::map<OutcomeLabel, ComplexMatrix> roots;
    for (const auto& [label, ops] : parts) {
      coarse.push_back(label);
      std::size_t rows = 0;
      for (const auto* op : ops) rows += op->rows();
      ComplexMatrix root(rows, distillation.dim_in);
      std::size_t at = 0;
      for (const auto* op : ops) {
        root.set_block(at, 0, *op);
        at += op->rows();
      }
      roots[label] = std::move(root);
    }
    cert.subspaces.push_back(j);
    cert.measurements.push_back(Povm::from_roots(distillation.dim_in, std::move(roots), false));
    cert.groupings.emplace_back(coarse, coarse_of);
  }
  return cert;
}

ChainCertificate build_chain(const StabilizerCode& code, const Ordering& ordering) {
  return build_chain(code, ordering, distillation_instrument(code));
}

ChainCheck check_chain(const StabilizerCode& code, const ChainCertificate& cert,
                       const Instrument& distillation) {
  ChainCheck out;
  const int n = code.n(), T = cert.T;
  if (cert.ordering.size() != T || static_cast<int>(cert.measurements.size()) != T) {
    out.failure = "certificate sizes disagree with T";
    return out;
  }
  const Povm syndromes = associated_povm(distillation);
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  for (int t = 1; t <= T; ++t) {
    const Povm& p = cert.measurements[t - 1];
    const std::string at = "P^(" + std::to_string(t) + ")";
    if (p.completeness_error() > kOperatorTol) {
      out.failure = at + " is not complete";
      return out;
    }
    if (!p.is_projective()) {
      out.failure = at + " is not projective";
      return out;
    }
    for (const auto& k : p.labels()) {
      if (p.rank(k) != (1 << (n - t))) {
        out.failure = "rank condition: " + at + "_" + k.bits() + " has rank " +
                      std::to_string(p.rank(k)) + ", expected 2^" + std::to_string(n - t);
        return out;
      }
    }
    const Povm& finer = t < T ? cert.measurements[t] : syndromes;
    if (!projective_grouping(p, finer)) {
      out.failure = "composability: " + at + " is not a grouping of the next measurement";
      return out;
    }
    const int a = cert.ordering.at(t);
    if (a < 1 || a > n) {
      out.failure = "ordering entry out of range";
      return out;
    }
    if (!check_factorization(p, dims, a - 1)) {
      out.failure = "no-signaling: " + at + " does not factor over qubit " + std::to_string(a);
      return out;
    }
  }
  out.ok = true;
  return out;
}

bool verify_chain(const StabilizerCode& code, const ChainCertificate& cert,
                  const Instrument& distillation) {
  return check_chain(code, cert, distillation).ok;
}

bool verify_chain(const StabilizerCode& code, const ChainCertificate& cert) {
  return verify_chain(code, cert, distillation_instrument(code));
}

}  // namespace qspace
