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
#include <optional>
#include <string>
#include <vector>

#include "qspace/f2.hpp"
#include "qspace/instruments.hpp"
#include "qspace/stabilizer.hpp"

namespace qspace {

// Physical qubits A_1..A_T, 1-based.
struct Ordering {
  std::vector<int> qubits;

  int size() const { return static_cast<int>(qubits.size()); }
  // A_t for 1 <= t <= T.
  int at(int t) const { return qubits.at(static_cast<std::size_t>(t - 1)); }
  std::string to_string() const;
  friend bool operator==(const Ordering&, const Ordering&) = default;
};

struct SearchOptions {
  bool parallel = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;  // partial orderings visited, the root included
  bool feasible = false;
};

// dim span{x_tau, z_tau : tau in [t, T]} <= n - k - t for every t.
bool satisfies_span_bounds(const StabilizerCode& code, const Ordering& ordering);

/**
 * Depth-first search for an ordering of length T, choosing A_T first and
 * trying qubits in ascending order. Returns the first ordering found, which
 * is the least one when (A_T, ..., A_1) is compared lexicographically. The
 * parallel search splits on A_T and returns the same ordering; its node count
 * matches the serial one whenever no ordering exists.
 */
std::optional<Ordering> find_ordering(const StabilizerCode& code, int T,
                                      const SearchOptions& options = {},
                                      SearchStats* stats = nullptr);

// Every feasible ordering of length T, in search order.
std::vector<Ordering> enumerate_orderings(const StabilizerCode& code, int T);

struct DelayResult {
  int t_star = 0;
  Ordering ordering;
  // Exhaustive search at T* + 1, which finds nothing.
  SearchStats next;
};

DelayResult max_delay(const StabilizerCode& code, const SearchOptions& options = {});

struct ChainCertificate {
  int T = 0;
  Ordering ordering;
  std::vector<F2Subspace> subspaces;   // J_1..J_T
  std::vector<Povm> measurements;      // P^(1)..P^(T), labels in F_2^t
  std::vector<GroupingMatrix> groupings;  // mu^(t): syndrome -> label of P^(t)
};

// Throws std::invalid_argument when the ordering violates the span bounds.
// P_s is taken as the associated POVM of the distillation instrument.
ChainCertificate build_chain(const StabilizerCode& code, const Ordering& ordering,
                             const Instrument& distillation);
ChainCertificate build_chain(const StabilizerCode& code, const Ordering& ordering);

// The scanned vectors u_1..u_{n-k}.
std::vector<F2Vector> scan_vectors(const StabilizerCode& code, const Ordering& ordering);

struct ChainCheck {
  bool ok = false;
  std::string failure;  // names the violated condition
};

// Re-checks composability along the chain, factorization of P^(t) over A_t
// and the ranks 2^{n-t}.
ChainCheck check_chain(const StabilizerCode& code, const ChainCertificate& cert,
                       const Instrument& distillation);
bool verify_chain(const StabilizerCode& code, const ChainCertificate& cert,
                  const Instrument& distillation);
bool verify_chain(const StabilizerCode& code, const ChainCertificate& cert);

}  // namespace qspace
